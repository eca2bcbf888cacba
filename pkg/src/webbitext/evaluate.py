"""Decide whether a candidate pair is a translation pair.

The decision runs in two stages.  First the structural gate: if the
alignment's mismatch proportion exceeds the threshold K (default 20%),
the pair is rejected outright and no correlation is computed.  Second the
length test: the Pearson coefficient of the aligned unequal chunk lengths
must be positive and significant (two-tailed p below the threshold,
default .05, via the Student-t transform, which takes the number of
aligned segments into account).  Degenerate inputs map to explicit reject
reasons instead of errors: too few pairs, zero length variance, or an
empty token stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .align import align, aligned_chunks, chunk_pairs, mismatch_ratio
from .candidates import CandidatePair
from .stats import p_value, pearson_r

ACCEPT = "accept"
REJECT = "reject"

REASON_MISMATCH = "mismatch"
REASON_INSUFFICIENT = "insufficient_pairs"
REASON_ZERO_VARIANCE = "zero_variance"
REASON_NOT_SIGNIFICANT = "not_significant"
REASON_EMPTY = "empty"


@dataclass
class EvaluatorConfig:
    """Decision thresholds, frozen defaults matching the evaluated system."""

    k: float = 0.20
    p_threshold: float = 0.05
    min_pairs: int = 3

    def __post_init__(self):
        if not 0.0 <= self.k <= 1.0:
            raise ValueError("k must be in [0, 1]")
        if not 0.0 < self.p_threshold < 1.0:
            raise ValueError("p_threshold must be in (0, 1)")
        if self.min_pairs < 3:
            raise ValueError("min_pairs must be >= 3")


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    n: int
    p: float


@dataclass(frozen=True)
class SegmentPair:
    """One aligned text segment pair, for segment-level corpus output."""

    left_offset: int
    right_offset: int
    left_text: str
    right_text: str


@dataclass
class EvaluationReport:
    pair: CandidatePair
    verdict: str
    reject_reason: str | None = None
    mismatch_ratio: float = 1.0
    correlation: CorrelationResult | None = None
    segments: list = field(default_factory=list)

    @property
    def accepted(self):
        return self.verdict == ACCEPT

    def to_dict(self):
        d = {
            "url1": self.pair.url1,
            "url2": self.pair.url2,
            "verdict": self.verdict,
            "reject_reason": self.reject_reason,
            "mismatch_ratio": self.mismatch_ratio,
            "r": None,
            "n": None,
            "p": None,
        }
        if self.correlation is not None:
            d["r"] = self.correlation.r
            d["n"] = self.correlation.n
            d["p"] = self.correlation.p
        return d


def decide_lengths(pair_set, cfg=None):
    """Correlation verdict for a ChunkPairSet alone (structure gate aside).

    Returns (verdict, reject_reason, CorrelationResult or None).
    """
    cfg = cfg or EvaluatorConfig()
    if pair_set.n < cfg.min_pairs:
        return REJECT, REASON_INSUFFICIENT, None
    r = pearson_r(pair_set.xy())
    if math.isnan(r):
        return REJECT, REASON_ZERO_VARIANCE, None
    corr = CorrelationResult(r, pair_set.n, p_value(r, pair_set.n))
    if corr.p < cfg.p_threshold and corr.r > 0.0:
        return ACCEPT, None, corr
    return REJECT, REASON_NOT_SIGNIFICANT, corr


def evaluate_pair(left_doc, right_doc, cfg=None):
    """Full per-pair decision: align, threshold on mismatches, test lengths.

    Never raises on degenerate input; every failure mode is a Reject with
    a reason.  Aligned segment texts are attached only on Accept.
    """
    cfg = cfg or EvaluatorConfig()
    pair = CandidatePair(left_doc.source_id, right_doc.source_id)
    alignment = align(left_doc, right_doc)
    if alignment.total_tokens == 0:
        return EvaluationReport(pair, REJECT, REASON_EMPTY, mismatch_ratio=1.0)
    ratio = mismatch_ratio(alignment)
    if ratio > cfg.k:
        return EvaluationReport(pair, REJECT, REASON_MISMATCH, mismatch_ratio=ratio)
    pair_set = chunk_pairs(alignment, left_doc, right_doc)
    verdict, reason, corr = decide_lengths(pair_set, cfg)
    report = EvaluationReport(pair, verdict, reason, mismatch_ratio=ratio,
                              correlation=corr)
    if report.accepted:
        report.segments = [
            SegmentPair(a.offset, b.offset, a.text, b.text)
            for a, b in aligned_chunks(alignment, left_doc, right_doc)
        ]
    return report
