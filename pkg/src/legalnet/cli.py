"""Command-line pipeline: build, walk, train, score, evaluate, combine, extract.

Every stage reads a JSON configuration (``--config``) and exchanges plain
files through the output directory. ``manifest.json`` in that directory
records, per artifact, the stage that wrote it, the configuration hash and
the file's SHA-256.

Exit codes: 0 success, 2 configuration error, 3 input parse error,
4 missing or inconsistent stage artifacts.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from legalnet import measures
from legalnet.build import CitationRecord, DocumentRecord, StatuteIndex, build_hier_spcnet
from legalnet.embedding import EmbeddingTable, TrainConfig, UnknownId, train
from legalnet.evaluation import (
    EvaluationError,
    combine,
    evaluate,
    load_gold,
    load_pair_scores,
    paired_ttest,
    pearson,
)
from legalnet.extraction import (
    MalformedOutline,
    canonical_title,
    extract_precedent_citations,
    extract_statute_citations,
    parse_statute_outline,
)
from legalnet.graph import GraphError, HeteroGraph, pcnet_view, read_tsv, stats, write_tsv
from legalnet.statutes import StatuteTree, dump_statutes, load_statutes
from legalnet.walks import (
    PCNET_METAPATHS,
    InvalidSchema,
    MetapathSchema,
    WalkConfig,
    default_schemas,
    load_metapaths,
    metapath_walks,
    node2vec_walks,
    validate_schema,
)

log = logging.getLogger("legalnet")

EXIT_OK, EXIT_CONFIG, EXIT_PARSE, EXIT_ARTIFACTS = 0, 2, 3, 4

GENERATORS = ("node2vec", "metapath")
NETWORKS = ("pcnet", "hier")
EMBEDDING_METHODS = {"node2vec": "node2vec", "metapath2vec": "metapath"}
DEFAULT_METHODS = [*measures.METHODS, *EMBEDDING_METHODS]

WALK_DEFAULTS = {
    "node2vec": {"walk_length": 80, "walks_per_node": 10, "p": 1.0, "q": 1.0},
    "metapath": {"walk_length": 5, "walks_per_node": 2000},
}
TRAIN_DEFAULTS = {
    "node2vec": {"dimension": 128},
    "metapath": {"dimension": 200},
}


class StageError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


@dataclass
class PipelineConfig:
    base_dir: Path
    corpus: str | None = None
    statutes: str | None = None
    metapaths: str | None = None
    gold: str | None = None
    text_scores: str | None = None
    pairs: str | None = None
    out_dir: str = "out"
    seed: int = 0
    threads: int = 1
    walk: dict = field(default_factory=dict)
    train: dict = field(default_factory=dict)
    methods: list[str] = field(default_factory=lambda: list(DEFAULT_METHODS))
    networks: list[str] = field(default_factory=lambda: list(NETWORKS))
    combine_method: str = "metapath2vec@hier"

    _PATH_KEYS = ("corpus", "statutes", "metapaths", "gold", "text_scores", "pairs")

    @classmethod
    def from_file(cls, path: Path) -> PipelineConfig:
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise StageError(EXIT_CONFIG, f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise StageError(EXIT_CONFIG, f"config is not valid JSON: {exc}") from None
        return cls.from_dict(raw, path.resolve().parent)

    @classmethod
    def from_dict(cls, raw: dict, base_dir: Path) -> PipelineConfig:
        known = {
            *cls._PATH_KEYS, "out_dir", "seed", "threads", "walk", "train",
            "methods", "networks", "combine_method",
        }
        unknown = set(raw) - known
        if unknown:
            raise StageError(EXIT_CONFIG, f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg = cls(base_dir=base_dir, **raw)
        for m in cfg.methods:
            if m not in DEFAULT_METHODS:
                raise StageError(EXIT_CONFIG, f"unknown method {m!r}")
        for n in cfg.networks:
            if n not in NETWORKS:
                raise StageError(EXIT_CONFIG, f"unknown network {n!r}")
        return cfg

    def to_dict(self) -> dict:
        return {
            **{k: getattr(self, k) for k in self._PATH_KEYS},
            "out_dir": self.out_dir,
            "seed": self.seed,
            "threads": self.threads,
            "walk": self.walk,
            "train": self.train,
            "methods": self.methods,
            "networks": self.networks,
            "combine_method": self.combine_method,
        }

    @property
    def config_hash(self) -> str:
        payload = self.to_dict()
        # neither where outputs go nor the walk process count changes them
        del payload["out_dir"], payload["threads"]
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]

    def input_path(self, key: str, required: bool = True) -> Path | None:
        value = getattr(self, key)
        if value is None:
            if required:
                raise StageError(EXIT_CONFIG, f"config does not set {key!r}")
            return None
        path = (self.base_dir / value).resolve()
        if not path.exists():
            raise StageError(EXIT_CONFIG, f"{key} path does not exist: {path}")
        return path

    @property
    def output_dir(self) -> Path:
        path = (self.base_dir / self.out_dir).resolve()
        try:
            path.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StageError(EXIT_CONFIG, f"cannot create output directory {path}: {exc}") from None
        return path

    def walk_config(self, generator: str) -> WalkConfig:
        params = {**WALK_DEFAULTS[generator], **self.walk.get(generator, {})}
        try:
            return WalkConfig(seed=self.seed, workers=self.threads, **params)
        except (TypeError, ValueError) as exc:
            raise StageError(EXIT_CONFIG, f"walk.{generator}: {exc}") from None

    def train_config(self, generator: str) -> TrainConfig:
        params = {**TRAIN_DEFAULTS[generator], **self.train.get(generator, {})}
        try:
            return TrainConfig(seed=self.seed, **params)
        except (TypeError, ValueError) as exc:
            raise StageError(EXIT_CONFIG, f"train.{generator}: {exc}") from None


# -- provenance -------------------------------------------------------------


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class Manifest:
    def __init__(self, out_dir: Path) -> None:
        self.path = out_dir / "manifest.json"
        self.entries: dict = {}
        if self.path.exists():
            self.entries = json.loads(self.path.read_text(encoding="utf-8"))

    def record(self, stage: str, config_hash: str, *paths: Path) -> None:
        for p in paths:
            self.entries[p.name] = {"stage": stage, "config_hash": config_hash, "sha256": _sha256(p)}
        _write_json(self.path, self.entries)

    def require_consistent(self, config_hash: str, *paths: Path) -> None:
        for p in paths:
            entry = self.entries.get(p.name)
            if entry is None or entry["config_hash"] != config_hash:
                found = entry["config_hash"] if entry else "none"
                raise StageError(
                    EXIT_ARTIFACTS,
                    f"{p.name} was produced under config hash {found}, current is {config_hash}",
                )


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def _write_jsonl(path: Path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, ensure_ascii=False))
            fh.write("\n")


# -- stages -----------------------------------------------------------------


def _load_statute_input(path: Path) -> list[StatuteTree]:
    try:
        if path.is_dir():
            return [
                parse_statute_outline(p.read_text(encoding="utf-8"))
                for p in sorted(path.glob("*.txt"))
            ]
        return load_statutes(path)
    except MalformedOutline as exc:
        raise StageError(EXIT_PARSE, f"statute outline: {exc}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise StageError(EXIT_PARSE, f"statutes: {exc}") from None


def _read_documents(corpus: Path) -> list[tuple[DocumentRecord, str]]:
    docs = []
    for path in sorted(corpus.glob("*.txt")):
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise StageError(EXIT_PARSE, f"{path.name}: not UTF-8 ({exc})") from None
        title = next((line.strip() for line in text.splitlines() if line.strip()), "")
        docs.append((DocumentRecord(path.stem, title), text))
    return docs


def extract_document_citations(
    docs: list[tuple[DocumentRecord, str]], index: StatuteIndex
) -> tuple[list[CitationRecord], list[dict]]:
    """Citation records for graph building plus per-citation JSON rows."""
    case_index = {canonical_title(d.title): d.doc_id for d, _ in docs if d.title}
    records, rows = [], []
    for doc, text in docs:
        # The title line names the document itself, so search the body only.
        body_start = text.find(doc.title) + len(doc.title) if doc.title else 0
        body = text[body_start:]
        for c in extract_statute_citations(body, index.act_names):
            records.append(CitationRecord(doc.doc_id, act_name=c.act_name_canonical, unit_number=c.unit_number))
            rows.append(_shift({"doc_id": doc.doc_id, **c.to_json()}, body_start))
        for c in extract_precedent_citations(body, case_index):
            if c.resolved_doc_id == doc.doc_id:
                continue
            records.append(CitationRecord(doc.doc_id, target=c.resolved_doc_id, text=c.matched_text))
            rows.append(_shift({"doc_id": doc.doc_id, **c.to_json()}, body_start))
    return records, rows


def _shift(row: dict, offset: int) -> dict:
    row["char_span"] = [row["char_span"][0] + offset, row["char_span"][1] + offset]
    return row


def cmd_build(cfg: PipelineConfig) -> None:
    statutes_path = cfg.input_path("statutes")
    corpus_path = cfg.input_path("corpus")
    out = cfg.output_dir
    trees = _load_statute_input(statutes_path)
    docs = _read_documents(corpus_path)
    index = StatuteIndex(trees)
    records, rows = extract_document_citations(docs, index)
    try:
        graph, diagnostics = build_hier_spcnet(trees, [d for d, _ in docs], records)
    except (ValueError, GraphError) as exc:
        raise StageError(EXIT_PARSE, f"cannot build network: {exc}") from None

    paths = [out / n for n in ("nodes.tsv", "edges.tsv", "stats.json", "diagnostics.jsonl", "citations.jsonl")]
    write_tsv(graph, paths[0], paths[1])
    _write_json(paths[2], {"config_hash": cfg.config_hash, "hier": stats(graph).to_json(),
                           "pcnet": stats(pcnet_view(graph)).to_json()})
    _write_jsonl(paths[3], [d.to_json() for d in diagnostics])
    _write_jsonl(paths[4], rows)
    Manifest(out).record("build", cfg.config_hash, *paths)
    log.info("built network: %d nodes, %d edges, %d unresolved citations",
             len(graph), graph.num_edges, len(diagnostics))


def _load_graph(cfg: PipelineConfig) -> HeteroGraph:
    out = cfg.output_dir
    nodes, edges = out / "nodes.tsv", out / "edges.tsv"
    if not nodes.exists() or not edges.exists():
        raise StageError(EXIT_ARTIFACTS, f"build artifacts missing in {out}; run 'build' first")
    Manifest(out).require_consistent(cfg.config_hash, nodes, edges)
    try:
        return read_tsv(nodes, edges)
    except ValueError as exc:
        raise StageError(EXIT_PARSE, str(exc)) from None


def _schemas(cfg: PipelineConfig, network: str) -> list[MetapathSchema]:
    if network == "pcnet":
        return [MetapathSchema.parse(n) for n in PCNET_METAPATHS]
    path = cfg.input_path("metapaths", required=False)
    if path is None:
        return default_schemas()
    try:
        schemas = load_metapaths(path)
    except (ValueError, KeyError, TypeError) as exc:
        raise StageError(EXIT_PARSE, f"metapaths: {exc}") from None
    for schema in schemas:
        problem = validate_schema(schema)
        if problem is not None:
            raise StageError(EXIT_PARSE, f"invalid metapath schema {schema.name!r}: {problem.reason}")
    return schemas


def _walk_path(out: Path, generator: str, network: str) -> Path:
    return out / f"walks_{generator}_{network}.txt"


def _emb_path(out: Path, generator: str, network: str) -> Path:
    return out / f"emb_{generator}_{network}.txt"


def cmd_walk(cfg: PipelineConfig, generator: str, network: str) -> None:
    graph = _load_graph(cfg)
    if network == "pcnet":
        graph = pcnet_view(graph)
    wcfg = cfg.walk_config(generator)
    if generator == "node2vec":
        corpus = node2vec_walks(graph, wcfg)
    else:
        try:
            corpus = metapath_walks(graph, _schemas(cfg, network), wcfg)
        except InvalidSchema as exc:
            raise StageError(EXIT_PARSE, f"invalid metapath schema: {exc}") from None
    corpus.provenance.update({"config_hash": cfg.config_hash, "network": network})
    out = cfg.output_dir
    path = _walk_path(out, generator, network)
    corpus.save(path)
    Manifest(out).record("walk", cfg.config_hash, path, Path(f"{path}.json"))
    log.info("wrote %d walks to %s", len(corpus), path.name)


def cmd_train(cfg: PipelineConfig, generator: str, network: str) -> None:
    from legalnet.walks import WalkCorpus

    out = cfg.output_dir
    walks = _walk_path(out, generator, network)
    if not walks.exists():
        raise StageError(EXIT_ARTIFACTS, f"{walks.name} missing; run 'walk' first")
    Manifest(out).require_consistent(cfg.config_hash, walks)
    corpus = WalkCorpus.load(walks)
    table = train(corpus, cfg.train_config(generator))
    table.metadata.update({"config_hash": cfg.config_hash, "generator": generator, "network": network})
    path = _emb_path(out, generator, network)
    table.save(path)
    Manifest(out).record("train", cfg.config_hash, path, Path(f"{path}.json"))
    log.info("trained %d vectors of dimension %d", len(table), table.dimension)


def _score_pairs(cfg: PipelineConfig) -> list[tuple[str, str]]:
    if cfg.pairs is not None:
        path = cfg.input_path("pairs")
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows or [c.strip() for c in rows[0]] != ["doc_a", "doc_b"]:
            raise StageError(EXIT_PARSE, "pairs file header must be doc_a,doc_b")
        return sorted({(r[0].strip(), r[1].strip()) for r in rows[1:] if r})
    gold = _load_gold(cfg)
    return sorted({g.pair for g in gold})


def _load_gold(cfg: PipelineConfig):
    path = cfg.input_path("gold")
    try:
        return load_gold(path)
    except EvaluationError as exc:
        raise StageError(EXIT_PARSE, f"gold: {exc}") from None


def cmd_score(cfg: PipelineConfig) -> None:
    graph = _load_graph(cfg)
    out = cfg.output_dir
    manifest = Manifest(out)
    pairs = _score_pairs(cfg)
    views = {"hier": graph, "pcnet": pcnet_view(graph)}
    rows = []
    for method in cfg.methods:
        for network in cfg.networks:
            name = f"{method}@{network}"
            if method in measures.MEASURES:
                fn = measures.MEASURES[method]
                try:
                    scores = [fn(views[network], a, b).value for a, b in pairs]
                except GraphError as exc:
                    raise StageError(EXIT_PARSE, f"{name}: {exc}") from None
            else:
                path = _emb_path(out, EMBEDDING_METHODS[method], network)
                if not path.exists():
                    raise StageError(EXIT_ARTIFACTS, f"{path.name} missing; run 'train' first")
                manifest.require_consistent(cfg.config_hash, path)
                table = EmbeddingTable.load(path)
                try:
                    scores = [table.cosine(a, b) for a, b in pairs]
                except UnknownId as exc:
                    raise StageError(EXIT_PARSE, f"{name}: {exc}") from None
            rows.extend((a, b, name, s) for (a, b), s in zip(pairs, scores))
    path = out / "scores.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("doc_a,doc_b,method,score\n")
        for a, b, name, s in rows:
            fh.write(f"{a},{b},{name},{s:.6f}\n")
    manifest.record("score", cfg.config_hash, path)
    log.info("scored %d pairs with %d methods", len(pairs), len(rows) // max(1, len(pairs)))


def _load_scores(cfg: PipelineConfig) -> dict[str, dict[tuple[str, str], float]]:
    out = cfg.output_dir
    path = out / "scores.csv"
    if not path.exists():
        raise StageError(EXIT_ARTIFACTS, "scores.csv missing; run 'score' first")
    manifest = Manifest(out)
    manifest.require_consistent(cfg.config_hash, path, out / "nodes.tsv", out / "edges.tsv")
    by_method: dict[str, dict[tuple[str, str], float]] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            by_method.setdefault(row["method"], {})[(row["doc_a"], row["doc_b"])] = float(row["score"])
    return by_method


def cmd_evaluate(cfg: PipelineConfig) -> dict:
    gold = _load_gold(cfg)
    by_method = _load_scores(cfg)
    reports = []
    for name, predictions in by_method.items():
        method, _, network = name.partition("@")
        baseline_name = f"{method}@pcnet"
        baseline = by_method.get(baseline_name) if network == "hier" else None
        try:
            report = evaluate(predictions, gold, baseline, method=name, baseline_name=baseline_name)
        except EvaluationError as exc:
            raise StageError(EXIT_PARSE, f"{name}: {exc}") from None
        reports.append(report.to_json())
        rho = "undefined" if report.pearson_rho is None else f"{report.pearson_rho:.3f}"
        print(f"{name:36s} rho={rho}")
    payload = {"config_hash": cfg.config_hash, "n_pairs": len(gold), "methods": reports}
    path = cfg.output_dir / "report.json"
    _write_json(path, payload)
    Manifest(cfg.output_dir).record("evaluate", cfg.config_hash, path)
    return payload


def cmd_combine(cfg: PipelineConfig, mode: str) -> dict:
    gold = _load_gold(cfg)
    text_path = cfg.input_path("text_scores")
    try:
        text = load_pair_scores(text_path)
    except EvaluationError as exc:
        raise StageError(EXIT_PARSE, f"text_scores: {exc}") from None
    by_method = _load_scores(cfg)
    if cfg.combine_method not in by_method:
        raise StageError(EXIT_ARTIFACTS, f"scores.csv has no {cfg.combine_method!r} scores")
    network = by_method[cfg.combine_method]

    def lookup(table, pair):
        if pair in table:
            return table[pair]
        if pair[::-1] in table:
            return table[pair[::-1]]
        raise StageError(EXIT_PARSE, f"no score for pair {pair}")

    ordered = sorted(gold, key=lambda g: g.pair)
    combined = {
        g.pair: combine(lookup(text, g.pair), lookup(network, g.pair), mode) for g in ordered
    }
    out = cfg.output_dir
    csv_path = out / f"combined_{mode}.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("doc_a,doc_b,score\n")
        for (a, b), s in combined.items():
            fh.write(f"{a},{b},{s:.6f}\n")

    truth = [g.mean_score for g in ordered]
    text_vals = [lookup(text, g.pair) for g in ordered]
    net_vals = [lookup(network, g.pair) for g in ordered]
    text_err = [abs(x - t) for x, t in zip(text_vals, truth)]
    net_err = [abs(x - t) for x, t in zip(net_vals, truth)]

    def rho(xs):
        try:
            return pearson(xs, truth)
        except EvaluationError:
            return None

    t_stat, p_value = paired_ttest(net_err, text_err)
    payload = {
        "config_hash": cfg.config_hash,
        "mode": mode,
        "network_method": cfg.combine_method,
        "n": len(ordered),
        "rho": {"text": rho(text_vals), "network": rho(net_vals), "combined": rho(list(combined.values()))},
        "network_vs_text": {"t_statistic": t_stat, "p_value": p_value,
                            "test": "paired two-sided Student t-test on per-pair absolute errors"},
        "closer_to_gold": {
            "network": sum(n < t for n, t in zip(net_err, text_err)),
            "text": sum(t < n for n, t in zip(net_err, text_err)),
            "tie": sum(t == n for n, t in zip(net_err, text_err)),
        },
    }
    report_path = out / f"report_combined_{mode}.json"
    _write_json(report_path, payload)
    Manifest(out).record("combine", cfg.config_hash, csv_path, report_path)
    return payload


def cmd_extract(args: argparse.Namespace) -> None:
    out = Path(args.out_dir or ".")
    out.mkdir(parents=True, exist_ok=True)
    if args.outline:
        trees = []
        for p in args.outline:
            try:
                trees.append(parse_statute_outline(Path(p).read_text(encoding="utf-8")))
            except MalformedOutline as exc:
                raise StageError(EXIT_PARSE, f"{p}: {exc}") from None
            except OSError as exc:
                raise StageError(EXIT_CONFIG, str(exc)) from None
        dump_statutes(trees, out / "statutes.json")
        log.info("wrote %d statute trees", len(trees))
    if args.input:
        trees = _load_statute_input(Path(args.statutes)) if args.statutes else []
        docs = []
        for p in args.input:
            path = Path(p)
            if not path.exists():
                raise StageError(EXIT_CONFIG, f"input does not exist: {path}")
            docs.extend(_read_documents(path) if path.is_dir() else
                        [(DocumentRecord(path.stem, _first_line(path)), path.read_text(encoding="utf-8"))])
        _, rows = extract_document_citations(docs, StatuteIndex(trees))
        _write_jsonl(out / "citations.jsonl", rows)
        log.info("extracted %d citations from %d documents", len(rows), len(docs))


def _first_line(path: Path) -> str:
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            return line.strip()
    return ""


def cmd_run(cfg: PipelineConfig) -> None:
    cmd_build(cfg)
    embedding_generators = [EMBEDDING_METHODS[m] for m in cfg.methods if m in EMBEDDING_METHODS]
    for generator in embedding_generators:
        for network in cfg.networks:
            cmd_walk(cfg, generator, network)
            cmd_train(cfg, generator, network)
    cmd_score(cfg)
    if cfg.gold is not None:
        cmd_evaluate(cfg)
        if cfg.text_scores is not None:
            for mode in ("max", "average"):
                cmd_combine(cfg, mode)


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="legalnet", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="pipeline configuration JSON")
    common.add_argument("--seed", type=int, help="override the configured RNG seed")
    common.add_argument("--threads", type=int, help="worker processes for walk generation")
    common.add_argument("--out-dir", help="override the configured output directory")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("build", parents=[common], help="extract citations and build the network")
    for name, help_text in (("walk", "generate a walk corpus"), ("train", "train embeddings on a walk corpus")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--generator", choices=GENERATORS, required=True)
        p.add_argument("--network", choices=NETWORKS, default="hier")
    sub.add_parser("score", parents=[common], help="score document pairs with every method")
    sub.add_parser("evaluate", parents=[common], help="correlate scores with the gold standard")
    p = sub.add_parser("combine", parents=[common], help="combine text and network similarity")
    p.add_argument("--mode", choices=("max", "average"), required=True)
    sub.add_parser("run", parents=[common], help="run every stage in order")
    p = sub.add_parser("extract", parents=[common], help="standalone citation extraction")
    p.add_argument("--input", nargs="*", default=[], help="document files or directories")
    p.add_argument("--statutes", help="statutes.json (or outline directory) for the act index")
    p.add_argument("--outline", nargs="*", default=[], help="statute outline files to convert")
    return parser


def _config_from_args(args: argparse.Namespace) -> PipelineConfig:
    if args.config is None:
        raise StageError(EXIT_CONFIG, "--config is required")
    cfg = PipelineConfig.from_file(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.threads is not None:
        if args.threads < 1:
            raise StageError(EXIT_CONFIG, "--threads must be positive")
        overrides["threads"] = args.threads
    if args.out_dir is not None:
        overrides["out_dir"] = str(Path(args.out_dir).resolve())
    return replace(cfg, **overrides)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "extract":
            cmd_extract(args)
            return EXIT_OK
        cfg = _config_from_args(args)
        if args.command == "build":
            cmd_build(cfg)
        elif args.command == "walk":
            cmd_walk(cfg, args.generator, args.network)
        elif args.command == "train":
            cmd_train(cfg, args.generator, args.network)
        elif args.command == "score":
            cmd_score(cfg)
        elif args.command == "evaluate":
            cmd_evaluate(cfg)
        elif args.command == "combine":
            cmd_combine(cfg, args.mode)
        elif args.command == "run":
            cmd_run(cfg)
    except StageError as exc:
        print(f"legalnet {args.command}: {exc}", file=sys.stderr)
        return exc.code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
