"""Random-walk corpora over a :class:`~legalnet.graph.HeteroGraph`.

Two generators: second-order biased walks that ignore node and edge kinds,
and walks constrained by a metapath schema (a sequence of node kinds that
starts and ends at a document). Both treat edges as undirected.

Every walk draws from its own RNG stream keyed by (seed, root, generator or
schema name, repetition), so results do not depend on how work is split
across processes.
"""

from __future__ import annotations

import bisect
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import accumulate

from legalnet.graph import ALLOWED_TRIPLES, GraphError, HeteroGraph, NodeKind

_KIND_ABBREV = {
    "doc": NodeKind.DOCUMENT,
    "act": NodeKind.ACT,
    "part": NodeKind.PART,
    "chap": NodeKind.CHAPTER,
    "topic": NodeKind.TOPIC,
    "sec": NodeKind.SECTION,
}
_ABBREV_OF = {v: k for k, v in _KIND_ABBREV.items()}

DEFAULT_METAPATHS = (
    "doc-sec-doc",
    "doc-sec-topic-sec-doc",
    "doc-sec-topic-chap-topic-sec-doc",
    "doc-doc-doc",
    "doc-act-sec-doc",
    "doc-sec-part-sec-doc",
    "doc-sec-act-sec-doc",
    "doc-act-doc",
    "doc-sec-chap-sec-doc",
    "doc-sec-sec-doc",
    "doc-doc-sec-doc",
    "doc-sec-act-doc",
    "doc-act-act-doc",
    "doc-doc-doc-doc",
)
PCNET_METAPATHS = ("doc-doc-doc",)


class NotAdjacent(GraphError):
    pass


class InvalidSchema(ValueError):
    pass


@dataclass(frozen=True)
class WalkConfig:
    walk_length: int = 80
    walks_per_node: int = 10
    p: float = 1.0
    q: float = 1.0
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if self.walk_length < 2:
            raise ValueError("walk_length must be at least 2")
        if self.walks_per_node < 1:
            raise ValueError("walks_per_node must be positive")
        if self.p <= 0 or self.q <= 0:
            raise ValueError("p and q must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    def snapshot(self) -> dict:
        out = asdict(self)
        del out["workers"]  # does not affect output
        return out


@dataclass(frozen=True)
class MetapathSchema:
    name: str
    kinds: tuple[NodeKind, ...]

    @classmethod
    def parse(cls, name: str) -> MetapathSchema:
        """Build a schema from a dash-joined name like ``doc-sec-topic-sec-doc``."""
        kinds = []
        for token in name.split("-"):
            token = token.strip().lower()
            if token in _KIND_ABBREV:
                kinds.append(_KIND_ABBREV[token])
            else:
                kinds.append(NodeKind.parse(token))
        return cls(name, tuple(kinds))

    def to_json(self) -> dict:
        return {"name": self.name, "kinds": [k.value for k in self.kinds]}

    @classmethod
    def from_json(cls, obj: dict) -> MetapathSchema:
        return cls(obj["name"], tuple(NodeKind.parse(k) for k in obj["kinds"]))

    def kind_at(self, position: int) -> NodeKind:
        """Kind expected at walk position ``position`` when the schema cycles."""
        return self.kinds[position % (len(self.kinds) - 1)]


@dataclass(frozen=True)
class SchemaViolation:
    schema: str
    position: int
    reason: str

    def __str__(self) -> str:
        return f"{self.schema}: {self.reason} (position {self.position})"


def _linkable(a: NodeKind, b: NodeKind) -> bool:
    return any(
        (x, y) in ((a, b), (b, a)) for x, y, _ in ALLOWED_TRIPLES
    )


def validate_schema(schema: MetapathSchema) -> SchemaViolation | None:
    """First violated schema rule, or ``None`` for a valid schema."""
    kinds = schema.kinds
    if len(kinds) < 3:
        return SchemaViolation(schema.name, 0, "a metapath needs at least three kinds")
    if kinds[0] is not NodeKind.DOCUMENT:
        return SchemaViolation(schema.name, 0, "a metapath must start at a document")
    if kinds[-1] is not NodeKind.DOCUMENT:
        return SchemaViolation(schema.name, len(kinds) - 1, "a metapath must end at a document")
    for i, (a, b) in enumerate(zip(kinds, kinds[1:])):
        if not _linkable(a, b):
            return SchemaViolation(
                schema.name, i, f"no edge type links {a.value} and {b.value}"
            )
    return None


@dataclass
class WalkCorpus:
    walks: list[list[str]]
    provenance: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.walks)

    def save(self, path) -> None:
        """Write one walk per line plus a ``<path>.json`` header."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for walk in self.walks:
                for node in walk:
                    if not node or any(c.isspace() for c in node):
                        raise ValueError(f"node id {node!r} cannot be written to a walk file")
                fh.write(" ".join(walk))
                fh.write("\n")
        with open(f"{path}.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.provenance, fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> WalkCorpus:
        with open(path, encoding="utf-8") as fh:
            walks = [line.split(" ") for line in fh.read().split("\n") if line]
        try:
            with open(f"{path}.json", encoding="utf-8") as fh:
                provenance = json.load(fh)
        except FileNotFoundError:
            provenance = {}
        return cls(walks, provenance)


def _stream(seed: int, root: str, tag: str, rep: int) -> random.Random:
    # str seeds are hashed with SHA-512, stable across processes and runs.
    return random.Random(f"{seed}|{root}|{tag}|{rep}")


# -- node2vec ---------------------------------------------------------------


def transition_weight(
    graph: HeteroGraph, prev: str, cur: str, next: str, p: float, q: float
) -> float:
    """Unnormalized second-order weight of stepping ``cur -> next`` after ``prev``."""
    if not graph.adjacent(cur, prev):
        raise NotAdjacent(f"{prev!r} and {cur!r} are not adjacent")
    if not graph.adjacent(cur, next):
        raise NotAdjacent(f"{cur!r} and {next!r} are not adjacent")
    if next == prev:
        return 1.0 / p
    if graph.adjacent(next, prev):
        return 1.0
    return 1.0 / q


class _Node2VecSampler:
    def __init__(self, graph: HeteroGraph, p: float, q: float) -> None:
        self.graph = graph
        self.p, self.q = p, q
        self._cum: dict[tuple[str, str], list[float]] = {}

    def cumulative(self, prev: str, cur: str) -> list[float]:
        key = (prev, cur)
        cum = self._cum.get(key)
        if cum is None:
            prev_nbrs = set(self.graph.undirected_neighbors(prev))
            weights = [
                1.0 / self.p if x == prev else 1.0 if x in prev_nbrs else 1.0 / self.q
                for x in self.graph.undirected_neighbors(cur)
            ]
            cum = self._cum[key] = list(accumulate(weights))
        return cum

    def walk(self, root: str, length: int, rng: random.Random) -> list[str]:
        walk = [root]
        nbrs = self.graph.undirected_neighbors(root)
        if not nbrs:
            return walk
        walk.append(nbrs[rng.randrange(len(nbrs))])
        while len(walk) < length:
            prev, cur = walk[-2], walk[-1]
            nbrs = self.graph.undirected_neighbors(cur)
            cum = self.cumulative(prev, cur)
            i = bisect.bisect_right(cum, rng.random() * cum[-1])
            walk.append(nbrs[min(i, len(nbrs) - 1)])
        return walk


def _node2vec_chunk(graph: HeteroGraph, config: WalkConfig, roots: list[str]) -> list[list[str]]:
    sampler = _Node2VecSampler(graph, config.p, config.q)
    return [
        sampler.walk(root, config.walk_length, _stream(config.seed, root, "node2vec", rep))
        for root in roots
        for rep in range(config.walks_per_node)
    ]


def node2vec_walks(graph: HeteroGraph, config: WalkConfig) -> WalkCorpus:
    """``walks_per_node`` biased walks from every node, in (root, repetition) order."""
    roots = graph.node_ids()
    walks = _run_chunks(_node2vec_chunk, graph, config, roots)
    return WalkCorpus(walks, {"generator": "node2vec", "config": config.snapshot()})


# -- metapath walks ---------------------------------------------------------


def _schema_budget(walks_per_node: int, n_schemas: int) -> list[int]:
    base, rem = divmod(walks_per_node, n_schemas)
    return [base + (1 if i < rem else 0) for i in range(n_schemas)]


def _metapath_walk(
    graph: HeteroGraph,
    schema: MetapathSchema,
    root: str,
    length: int,
    rng: random.Random,
    typed_cache: dict,
) -> list[str]:
    walk = [root]
    cur = root
    while len(walk) < length:
        want = schema.kind_at(len(walk))
        key = (cur, want)
        options = typed_cache.get(key)
        if options is None:
            options = typed_cache[key] = tuple(
                n for n in graph.undirected_neighbors(cur) if graph.kind(n) is want
            )
        if not options:
            break
        cur = options[rng.randrange(len(options))]
        walk.append(cur)
    return walk


def _metapath_chunk(
    graph: HeteroGraph, config: WalkConfig, roots: list[str], schemas: list[MetapathSchema]
) -> list[list[str]]:
    budget = _schema_budget(config.walks_per_node, len(schemas))
    cache: dict = {}
    walks = []
    for root in roots:
        for schema, n in zip(schemas, budget):
            for rep in range(n):
                rng = _stream(config.seed, root, schema.name, rep)
                walks.append(_metapath_walk(graph, schema, root, config.walk_length, rng, cache))
    return walks


def metapath_walks(
    graph: HeteroGraph, schemas: list[MetapathSchema], config: WalkConfig
) -> WalkCorpus:
    """Schema-guided walks rooted at every document.

    ``walks_per_node`` is split evenly over the schemas, remainder going to
    the earlier ones. Walks cycle through the schema interior and stop at
    ``walk_length`` nodes or when no neighbour of the required kind exists.
    """
    schemas = list(schemas)
    if not schemas:
        raise InvalidSchema("no metapath schemas given")
    for schema in schemas:
        problem = validate_schema(schema)
        if problem is not None:
            raise InvalidSchema(str(problem))
    roots = graph.node_ids(NodeKind.DOCUMENT)
    walks = _run_chunks(_metapath_chunk, graph, config, roots, schemas)
    return WalkCorpus(
        walks,
        {
            "generator": "metapath",
            "config": config.snapshot(),
            "schemas": [s.to_json() for s in schemas],
        },
    )


def _run_chunks(fn, graph, config: WalkConfig, roots: list[str], *extra) -> list[list[str]]:
    if config.workers == 1 or len(roots) < 2:
        return fn(graph, config, roots, *extra)
    n = min(config.workers, len(roots))
    size = -(-len(roots) // n)
    chunks = [roots[i : i + size] for i in range(0, len(roots), size)]
    with ProcessPoolExecutor(max_workers=n) as pool:
        futures = [pool.submit(fn, graph, config, chunk, *extra) for chunk in chunks]
        return [walk for fut in futures for walk in fut.result()]


def load_metapaths(path) -> list[MetapathSchema]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return [MetapathSchema.from_json(obj) for obj in data]


def dump_metapaths(schemas: list[MetapathSchema], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump([s.to_json() for s in schemas], fh, indent=2)
        fh.write("\n")


def default_schemas() -> list[MetapathSchema]:
    return [MetapathSchema.parse(name) for name in DEFAULT_METAPATHS]
