"""Scoring predicted pair similarities against expert gold scores."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Literal, Mapping

from scipy import stats as _stats


class EvaluationError(ValueError):
    pass


class LengthMismatch(EvaluationError):
    pass


class ZeroVariance(EvaluationError):
    pass


class ParseError(EvaluationError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class ScoreOutOfRange(ParseError):
    pass


class MissingPrediction(EvaluationError, KeyError):
    pass


Pair = tuple[str, str]


@dataclass(frozen=True)
class GoldPair:
    doc_a: str
    doc_b: str
    annotator_scores: tuple[float, ...]
    mean_score: float

    @property
    def pair(self) -> Pair:
        return (self.doc_a, self.doc_b)

    @classmethod
    def from_scores(cls, doc_a: str, doc_b: str, scores) -> GoldPair:
        scores = tuple(float(s) for s in scores)
        if not scores:
            raise ValueError("at least one annotator score is required")
        return cls(doc_a, doc_b, scores, math.fsum(scores) / len(scores))


def load_gold(path) -> list[GoldPair]:
    """Read ``doc_a,doc_b,score_1[,score_2...]`` rows; the header line is required."""
    gold = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["doc_a", "doc_b"] or len(header) < 3:
            raise ParseError(1, "header must be doc_a,doc_b,score_1[,score_2...]")
        width = len(header)
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != width:
                raise ParseError(line, f"expected {width} fields, got {len(row)}")
            doc_a, doc_b = row[0].strip(), row[1].strip()
            if not doc_a or not doc_b:
                raise ParseError(line, "empty document id")
            try:
                scores = [float(c) for c in row[2:]]
            except ValueError:
                raise ParseError(line, "annotator scores must be numbers") from None
            for s in scores:
                if not 0.0 <= s <= 1.0:
                    raise ScoreOutOfRange(line, f"score {s} outside [0, 1]")
            gold.append(GoldPair.from_scores(doc_a, doc_b, scores))
    return gold


def load_pair_scores(path) -> dict[Pair, float]:
    """Read ``doc_a,doc_b,score`` rows (header required)."""
    scores = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["doc_a", "doc_b", "score"]:
            raise ParseError(1, "header must be doc_a,doc_b,score")
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise ParseError(reader.line_num, "expected 3 fields")
            try:
                scores[(row[0].strip(), row[1].strip())] = float(row[2])
            except ValueError:
                raise ParseError(reader.line_num, "score must be a number") from None
    return scores


def _check_lengths(xs, ys) -> int:
    if len(xs) != len(ys):
        raise LengthMismatch(f"lengths differ: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise LengthMismatch("need at least two observations")
    return len(xs)


def pearson(xs, ys) -> float:
    n = _check_lengths(xs, ys)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        raise ZeroVariance("correlation is undefined for a constant vector")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def paired_ttest(errors_a, errors_b) -> tuple[float, float]:
    """Two-sided paired Student's t-test; returns ``(t, p)``."""
    n = _check_lengths(errors_a, errors_b)
    diffs = [a - b for a, b in zip(errors_a, errors_b)]
    mean = math.fsum(diffs) / n
    var = math.fsum((d - mean) ** 2 for d in diffs) / (n - 1)
    if var == 0.0:
        if mean == 0.0:
            return 0.0, 1.0
        return math.copysign(math.inf, mean), 0.0
    t = mean / math.sqrt(var / n)
    p = 2.0 * float(_stats.t.sf(abs(t), n - 1))
    return t, min(1.0, p)


def combine(text_score: float, network_score: float, mode: Literal["max", "average"]) -> float:
    if mode == "max":
        return max(text_score, network_score)
    if mode == "average":
        return (text_score + network_score) / 2.0
    raise ValueError(f"mode must be 'max' or 'average', got {mode!r}")


@dataclass
class Significance:
    baseline: str
    t_statistic: float
    p_value: float
    test: str = "paired two-sided Student t-test on per-pair absolute errors"

    def to_json(self) -> dict:
        return {
            "baseline": self.baseline,
            "t_statistic": _json_float(self.t_statistic),
            "p_value": self.p_value,
            "test": self.test,
        }


@dataclass
class EvalReport:
    method: str
    pairs: list[tuple[GoldPair, float]]
    pearson_rho: float | None
    n_pairs: int
    significance: Significance | None = None
    error: str | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "rho": self.pearson_rho,
            "n": self.n_pairs,
            "error": self.error,
            "significance": self.significance.to_json() if self.significance else None,
            "pairs": [
                {"doc_a": g.doc_a, "doc_b": g.doc_b, "gold": g.mean_score, "predicted": p}
                for g, p in self.pairs
            ],
            **self.extra,
        }


def _json_float(x: float):
    return x if math.isfinite(x) else str(x)


def _lookup(predictions: Mapping[Pair, float], g: GoldPair) -> float:
    if g.pair in predictions:
        return float(predictions[g.pair])
    if (g.doc_b, g.doc_a) in predictions:
        return float(predictions[(g.doc_b, g.doc_a)])
    raise MissingPrediction(g.pair)


def evaluate(
    predictions: Mapping[Pair, float],
    gold: list[GoldPair],
    baseline: Mapping[Pair, float] | None = None,
    method: str = "method",
    baseline_name: str = "baseline",
) -> EvalReport:
    """Pearson correlation of predictions with the gold means.

    Pairs are processed in sorted order, so the result does not depend on
    the order of ``gold``. A constant prediction vector yields a report with
    ``pearson_rho=None`` and the error recorded.
    """
    ordered = sorted(gold, key=lambda g: g.pair)
    predicted = [_lookup(predictions, g) for g in ordered]
    truth = [g.mean_score for g in ordered]
    rho, error = None, None
    try:
        rho = pearson(predicted, truth)
    except EvaluationError as exc:
        error = f"{type(exc).__name__}: {exc}"
    significance = None
    if baseline is not None:
        base = [_lookup(baseline, g) for g in ordered]
        errs = [abs(p - t) for p, t in zip(predicted, truth)]
        base_errs = [abs(b - t) for b, t in zip(base, truth)]
        t_stat, p_value = paired_ttest(errs, base_errs)
        significance = Significance(baseline_name, t_stat, p_value)
    return EvalReport(method, list(zip(ordered, predicted)), rho, len(ordered), significance, error)
