"""Skip-gram with negative sampling over walk corpora.

Each (center, context) pair within ``window`` positions of a walk is one
training example. The objective for a pair is::

    log sigmoid(u_ctx . v_c) + sum_neg log sigmoid(-u_neg . v_c)

with ``v`` the input (node) vectors and ``u`` the output (context) vectors.
Negatives are drawn from the unigram distribution raised to 0.75, shared by
all node kinds.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections.abc import Callable
from dataclasses import asdict, dataclass, field

import numba
import numpy as np

from legalnet.walks import WalkCorpus


class EmptyCorpus(ValueError):
    pass


class UnknownId(KeyError):
    def __str__(self) -> str:
        return f"node {self.args[0]!r} has no embedding"


@dataclass(frozen=True)
class TrainConfig:
    dimension: int = 128
    window: int = 5
    negatives: int = 5
    learning_rate: float = 0.025
    min_learning_rate: float = 0.0001
    epochs: int = 5
    min_count: int = 1
    seed: int = 0
    # More than one worker trains lock-free in parallel; results are then
    # not reproducible.
    workers: int = 1

    def __post_init__(self) -> None:
        for name in ("dimension", "window", "negatives", "epochs", "min_count", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if not 0 < self.min_learning_rate <= self.learning_rate:
            raise ValueError("need 0 < min_learning_rate <= learning_rate")


@dataclass
class Vocab:
    ids: list[str]
    counts: np.ndarray
    index: dict[str, int] = field(init=False)
    probs: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.index = {node: i for i, node in enumerate(self.ids)}
        weights = self.counts.astype(np.float64) ** 0.75
        self.probs = weights / weights.sum()

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, node: object) -> bool:
        return node in self.index


def build_vocab(corpus: WalkCorpus, min_count: int = 1) -> Vocab:
    """Vocabulary indexed by descending frequency, ties broken by id."""
    counts: dict[str, int] = {}
    for walk in corpus.walks:
        for node in walk:
            counts[node] = counts.get(node, 0) + 1
    kept = sorted((n for n, c in counts.items() if c >= min_count), key=lambda n: (-counts[n], n))
    if not kept:
        raise EmptyCorpus("no node occurs often enough to enter the vocabulary")
    return Vocab(kept, np.array([counts[n] for n in kept], dtype=np.int64))


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def sgns_objective(center: int, context: int, negatives, w_in: np.ndarray, w_out: np.ndarray) -> float:
    v = w_in[center]
    value = math.log(_sigmoid(float(w_out[context] @ v)))
    for k in negatives:
        value += math.log(_sigmoid(-float(w_out[k] @ v)))
    return value


@dataclass
class SGNSGradients:
    center: np.ndarray
    context: np.ndarray
    negatives: np.ndarray  # one row per negative, in the order given


def sgns_step(
    center: int,
    context: int,
    negatives,
    w_in: np.ndarray,
    w_out: np.ndarray,
    lr: float,
    audit: bool = False,
) -> SGNSGradients | None:
    """One gradient-ascent step on the pair objective, updating tables in place.

    All gradients are taken at the pre-step parameters. With ``audit=True``
    the gradients are returned.
    """
    negatives = np.asarray(negatives, dtype=np.int64).reshape(-1)
    n_rows = w_in.shape[0]
    for idx in (center, context, *negatives.tolist()):
        if not 0 <= idx < n_rows:
            raise IndexError(f"index {idx} out of range for {n_rows} rows")
    if context in negatives:
        raise ValueError("negatives must differ from the context")
    v = w_in[center].copy()
    u_ctx = w_out[context].copy()
    u_neg = w_out[negatives].copy()
    pos = 1.0 - _sigmoid(u_ctx @ v)
    neg = _sigmoid(u_neg @ v)
    grad_v = pos * u_ctx - neg @ u_neg
    grad_ctx = pos * v
    grad_neg = -neg[:, None] * v[None, :]
    if lr:
        w_out[context] += lr * grad_ctx
        np.add.at(w_out, negatives, lr * grad_neg)
        w_in[center] += lr * grad_v
    if audit:
        return SGNSGradients(grad_v, grad_ctx, grad_neg)
    return None


# -- bulk training ----------------------------------------------------------


@numba.njit(cache=True)
def _count_pairs(lengths, window):
    total = 0
    for n in lengths:
        for i in range(n):
            total += min(n - 1, i + window) - max(0, i - window)
    return total


@numba.njit(cache=True)
def _make_pairs(tokens, offsets, window, n_pairs):
    centers = np.empty(n_pairs, dtype=np.int64)
    contexts = np.empty(n_pairs, dtype=np.int64)
    k = 0
    for w in range(offsets.shape[0] - 1):
        lo, hi = offsets[w], offsets[w + 1]
        for i in range(lo, hi):
            for j in range(max(lo, i - window), min(hi, i + window + 1)):
                if j != i:
                    centers[k] = tokens[i]
                    contexts[k] = tokens[j]
                    k += 1
    return centers, contexts


@numba.njit(cache=True)
def _apply_pair(w_in, w_out, c, ctx, negs, lr, grad_v, scores):
    # Same update as sgns_step: every gradient at the pre-step parameters.
    d = w_in.shape[1]
    m = 0
    for k in range(negs.shape[0]):
        if negs[k] >= 0:
            m += 1
    f = 0.0
    for j in range(d):
        f += w_in[c, j] * w_out[ctx, j]
    scores[0] = 1.0 - 1.0 / (1.0 + math.exp(-f))
    for k in range(m):
        f = 0.0
        for j in range(d):
            f += w_in[c, j] * w_out[negs[k], j]
        scores[k + 1] = -1.0 / (1.0 + math.exp(-f))
    for j in range(d):
        grad_v[j] = scores[0] * w_out[ctx, j]
    for k in range(m):
        for j in range(d):
            grad_v[j] += scores[k + 1] * w_out[negs[k], j]
    for j in range(d):
        w_out[ctx, j] += lr * scores[0] * w_in[c, j]
    for k in range(m):
        for j in range(d):
            w_out[negs[k], j] += lr * scores[k + 1] * w_in[c, j]
    for j in range(d):
        w_in[c, j] += lr * grad_v[j]


@numba.njit(cache=True)
def _train_serial(w_in, w_out, centers, contexts, negs, lrs):
    grad_v = np.empty(w_in.shape[1])
    scores = np.empty(negs.shape[1] + 1)
    for i in range(centers.shape[0]):
        _apply_pair(w_in, w_out, centers[i], contexts[i], negs[i], lrs[i], grad_v, scores)


@numba.njit(parallel=True, cache=True)
def _train_hogwild(w_in, w_out, centers, contexts, negs, lrs, n_workers):
    n = centers.shape[0]
    step = (n + n_workers - 1) // n_workers
    for t in numba.prange(n_workers):
        grad_v = np.empty(w_in.shape[1])
        scores = np.empty(negs.shape[1] + 1)
        for i in range(t * step, min(n, (t + 1) * step)):
            _apply_pair(w_in, w_out, centers[i], contexts[i], negs[i], lrs[i], grad_v, scores)


def _draw_negatives(rng: np.random.Generator, cum: np.ndarray, contexts: np.ndarray, k: int) -> np.ndarray:
    n_vocab = cum.shape[0]
    negs = np.searchsorted(cum, rng.random((contexts.shape[0], k)), side="right")
    np.minimum(negs, n_vocab - 1, out=negs)
    if n_vocab == 1:
        return np.full_like(negs, -1)
    clash = negs == contexts[:, None]
    while clash.any():
        redraw = np.searchsorted(cum, rng.random(int(clash.sum())), side="right")
        negs[clash] = np.minimum(redraw, n_vocab - 1)
        clash = negs == contexts[:, None]
    return negs


@dataclass
class EmbeddingTable:
    ids: list[str]
    vectors: np.ndarray
    context_vectors: np.ndarray | None = None
    metadata: dict = field(default_factory=dict)
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {node: i for i, node in enumerate(self.ids)}

    def __contains__(self, node: object) -> bool:
        return node in self.index

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    def vector(self, node: str) -> np.ndarray:
        try:
            return self.vectors[self.index[node]]
        except KeyError:
            raise UnknownId(node) from None

    def cosine(self, u: str, v: str) -> float:
        return cosine(self, u, v)

    def save(self, path) -> None:
        """Word2vec text format; metadata goes to ``<path>.json``."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"{len(self.ids)} {self.dimension}\n")
            for node, row in zip(self.ids, self.vectors):
                fh.write(node + " " + " ".join(format(x, ".17g") for x in row.tolist()) + "\n")
        with open(f"{path}.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.metadata, fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> EmbeddingTable:
        with open(path, encoding="utf-8") as fh:
            count, dim = (int(x) for x in fh.readline().split())
            ids, rows = [], []
            for line in fh:
                parts = line.rstrip("\n").split(" ")
                if len(parts) != dim + 1:
                    raise ValueError(f"{path}: expected {dim} values for {parts[0]!r}")
                ids.append(parts[0])
                rows.append([float(x) for x in parts[1:]])
        if len(ids) != count:
            raise ValueError(f"{path}: header says {count} vectors, found {len(ids)}")
        try:
            with open(f"{path}.json", encoding="utf-8") as fh:
                metadata = json.load(fh)
        except FileNotFoundError:
            metadata = {}
        vectors = np.array(rows, dtype=np.float64).reshape(count, dim)
        return cls(ids, vectors, None, metadata)


def corpus_hash(corpus: WalkCorpus) -> str:
    h = hashlib.sha256()
    for walk in corpus.walks:
        h.update(" ".join(walk).encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()


def train(
    corpus: WalkCorpus,
    config: TrainConfig,
    block_walks: int = 50_000,
    on_epoch: Callable[[int, Vocab, np.ndarray, np.ndarray], None] | None = None,
) -> EmbeddingTable:
    """Train node vectors on ``corpus``.

    The learning rate decays linearly over all pairs of all epochs, from
    ``learning_rate`` down to ``min_learning_rate``. ``on_epoch`` is called
    after every epoch with (epoch number from 1, vocab, input table, output
    table); it must not modify the tables.
    """
    if not corpus.walks:
        raise EmptyCorpus("walk corpus is empty")
    vocab = build_vocab(corpus, config.min_count)
    rng = np.random.default_rng(config.seed)
    dim = config.dimension
    w_in = (rng.random((len(vocab), dim)) - 0.5) / dim
    w_out = np.zeros((len(vocab), dim))
    cum = np.cumsum(vocab.probs)
    cum /= cum[-1]

    encoded = [
        np.array([vocab.index[n] for n in walk if n in vocab.index], dtype=np.int64)
        for walk in corpus.walks
    ]
    lengths = np.array([len(e) for e in encoded], dtype=np.int64)
    per_epoch = int(_count_pairs(lengths, config.window))
    total = per_epoch * config.epochs
    done = 0
    for epoch in range(1, config.epochs + 1):
        for start in range(0, len(encoded), block_walks):
            block = encoded[start : start + block_walks]
            n_pairs = int(_count_pairs(lengths[start : start + block_walks], config.window))
            if n_pairs == 0:
                continue
            offsets = np.zeros(len(block) + 1, dtype=np.int64)
            np.cumsum([len(b) for b in block], out=offsets[1:])
            tokens = np.concatenate(block) if block else np.zeros(0, dtype=np.int64)
            centers, contexts = _make_pairs(tokens, offsets, config.window, n_pairs)
            negs = _draw_negatives(rng, cum, contexts, config.negatives)
            progress = (done + np.arange(n_pairs)) / total
            lrs = np.maximum(
                config.learning_rate - (config.learning_rate - config.min_learning_rate) * progress,
                config.min_learning_rate,
            )
            if config.workers > 1:
                _train_hogwild(w_in, w_out, centers, contexts, negs, lrs, config.workers)
            else:
                _train_serial(w_in, w_out, centers, contexts, negs, lrs)
            done += n_pairs
        if on_epoch is not None:
            on_epoch(epoch, vocab, w_in, w_out)

    metadata = {"config": asdict(config), "corpus_sha256": corpus_hash(corpus), "pairs_per_epoch": per_epoch}
    return EmbeddingTable(list(vocab.ids), w_in, w_out, metadata)


def cosine(table: EmbeddingTable, u: str, v: str) -> float:
    a, b = table.vector(u), table.vector(v)
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return max(-1.0, min(1.0, float(a @ b) / (na * nb)))
