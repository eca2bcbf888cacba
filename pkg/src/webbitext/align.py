"""Minimum-difference alignment of two linearized token sequences.

Identical tokens anchor the alignment: start/end tokens match only when
their labels agree, chunk tokens match when their lengths are equal.
Chunk tokens of unequal length may be paired as substitutions; pairing is
cheap when the lengths are close (cost ``1 - min/max``) and approaches the
cost of a gap as they diverge, which reproduces a diff utility's
preference for pairing changed lines over deleting and inserting them.
Tag tokens never substitute across different labels.  Unmatched tokens
cost 1 each and are the mismatches that the downstream threshold counts.

The alignment minimizes total cost with a standard quadratic dynamic
program.  Among equal-cost alignments the one with the fewest gap tokens
is chosen (so the mismatch count is a canonical, symmetric quantity);
remaining ties break Match > Pair > GapLeft > GapRight scanning left to
right, purely for determinism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linearize import KIND_CHUNK

MATCH = "match"
PAIR = "pair"
GAP_LEFT = "gap_left"    # left token with no counterpart on the right
GAP_RIGHT = "gap_right"  # right token with no counterpart on the left

# Gap cost used inside the optimization only: the tiny surcharge makes the
# DP prefer fewer gaps among alignments of equal true cost.  Reported costs
# always use the true gap cost of 1.
_GAP_TRUE = 1.0
_GAP_EPS = 2.0 ** -40
_GAP_DP = _GAP_TRUE + _GAP_EPS

_INF = float("inf")


@dataclass(frozen=True)
class AlignOp:
    """One alignment edge; a gap op has None on its absent side."""

    kind: str
    left_index: int | None = None
    right_index: int | None = None


@dataclass
class Alignment:
    ops: list
    mismatch_count: int
    total_tokens: int
    cost: float


@dataclass(frozen=True)
class ChunkPair:
    """Lengths and source offsets of one aligned unequal chunk pair."""

    x: int
    y: int
    left_offset: int = 0
    right_offset: int = 0


@dataclass
class ChunkPairSet:
    """The (x, y) length pairs feeding the correlation test.

    Only unequal-length pairs belong here; equal-length aligned chunks are
    almost never natural language and would inflate the correlation.
    """

    pairs: list

    def __post_init__(self):
        for p in self.pairs:
            if p.x == p.y:
                raise ValueError("equal-length pair (%d, %d) not allowed" % (p.x, p.y))
            if p.x < 1 or p.y < 1:
                raise ValueError("chunk lengths must be >= 1")

    @property
    def n(self):
        return len(self.pairs)

    def xy(self):
        return [(p.x, p.y) for p in self.pairs]


def _token_codes(tokens, tag_ids):
    """Vector encodings: chunk mask, lengths, and tag identity codes."""
    k = len(tokens)
    is_chunk = np.zeros(k, dtype=bool)
    lengths = np.zeros(k, dtype=np.int64)
    tags = np.full(k, -1, dtype=np.int64)
    for idx, t in enumerate(tokens):
        if t.kind == KIND_CHUNK:
            is_chunk[idx] = True
            lengths[idx] = t.length
        else:
            tags[idx] = tag_ids.setdefault((t.kind, t.label), len(tag_ids))
    return is_chunk, lengths, tags


def _sub_cost(lt, rt):
    """Scalar substitution cost between two tokens; inf when illegal."""
    lc = lt.kind == KIND_CHUNK
    rc = rt.kind == KIND_CHUNK
    if lc and rc:
        if lt.length == rt.length:
            return 0.0
        return 1.0 - min(lt.length, rt.length) / max(lt.length, rt.length)
    if not lc and not rc and lt.kind == rt.kind and lt.label == rt.label:
        return 0.0
    return _INF


def align(left, right):
    """Optimal monotone alignment of two LinearDocuments.

    Every token of both inputs is covered by exactly one op; the op list
    is in document order.  ``mismatch_count`` counts gap-covered tokens,
    ``cost`` is the minimized objective (gaps at 1, pairs at 1 - min/max).
    """
    lt = left.tokens
    rt = right.tokens
    n, m = len(lt), len(rt)
    total = n + m
    if total == 0:
        return Alignment([], 0, 0, 0.0)

    tag_ids = {}
    _, r_len, r_tag = _token_codes(rt, tag_ids)
    r_is_chunk = r_tag < 0

    # Suffix costs: dp[i, j] = min cost aligning lt[i:] with rt[j:].
    dp = np.empty((n + 1, m + 1), dtype=np.float64)
    dp[n, :] = np.arange(m, -1, -1, dtype=np.float64) * _GAP_DP
    steps = np.arange(m + 1, dtype=np.float64) * _GAP_DP
    for i in range(n - 1, -1, -1):
        t = lt[i]
        if t.kind == KIND_CHUNK:
            llen = t.length
            hi = np.maximum(np.maximum(r_len, llen), 1)
            lo = np.minimum(r_len, llen)
            sub = np.where(r_is_chunk,
                           np.where(r_len == llen, 0.0, 1.0 - lo / hi),
                           _INF)
        else:
            code = tag_ids.get((t.kind, t.label), -2)
            sub = np.where(r_tag == code, 0.0, _INF)
        # Consume left token i at column j: substitution or a left gap.
        base = np.empty(m + 1, dtype=np.float64)
        base[:m] = np.minimum(dp[i + 1, 1:] + sub, dp[i + 1, :m] + _GAP_DP)
        base[m] = dp[i + 1, m] + _GAP_DP
        # Right gaps before that: dp[i, j] = min_{k>=j} base[k] + (k-j)*gap.
        keyed = base + steps
        np.minimum.accumulate(keyed[::-1], out=keyed[::-1])
        dp[i, :] = keyed - steps

    # Forward walk; recomputing candidates keeps tie preference explicit.
    ops = []
    mismatches = 0
    cost = 0.0
    i = j = 0
    while i < n or j < m:
        best = None  # (dp value, preference, kind, true cost)
        if i < n and j < m:
            sc = _sub_cost(lt[i], rt[j])
            if sc == 0.0:
                best = (dp[i + 1, j + 1], 0, MATCH, 0.0)
            elif sc < _INF:
                best = (sc + dp[i + 1, j + 1], 1, PAIR, sc)
        if i < n:
            cand = (_GAP_DP + dp[i + 1, j], 2, GAP_LEFT, _GAP_TRUE)
            if best is None or cand[:2] < best[:2]:
                best = cand
        if j < m:
            cand = (_GAP_DP + dp[i, j + 1], 3, GAP_RIGHT, _GAP_TRUE)
            if best is None or cand[:2] < best[:2]:
                best = cand
        kind = best[2]
        cost += best[3]
        if kind == MATCH or kind == PAIR:
            ops.append(AlignOp(kind, i, j))
            i += 1
            j += 1
        elif kind == GAP_LEFT:
            ops.append(AlignOp(kind, left_index=i))
            mismatches += 1
            i += 1
        else:
            ops.append(AlignOp(kind, right_index=j))
            mismatches += 1
            j += 1
    return Alignment(ops, mismatches, total, cost)


def mismatch_ratio(alignment):
    """Fraction of tokens with no counterpart; 1.0 for an empty pair."""
    if alignment.total_tokens == 0:
        return 1.0
    return alignment.mismatch_count / alignment.total_tokens


def chunk_pairs(alignment, left, right):
    """ChunkPairSet of the unequal-length aligned chunks, in order."""
    out = []
    for op in alignment.ops:
        if op.kind != PAIR:
            continue
        a = left.tokens[op.left_index]
        b = right.tokens[op.right_index]
        out.append(ChunkPair(a.length, b.length, a.offset, b.offset))
    return ChunkPairSet(out)


def aligned_chunks(alignment, left, right):
    """All chunk-to-chunk correspondences (Match and Pair), in order."""
    out = []
    for op in alignment.ops:
        if op.kind not in (MATCH, PAIR):
            continue
        a = left.tokens[op.left_index]
        b = right.tokens[op.right_index]
        if a.kind == KIND_CHUNK:
            out.append((a, b))
    return out
