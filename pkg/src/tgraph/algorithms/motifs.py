"""Counting of three-edge, up-to-three-node temporal motifs.

A motif instance is an ordered triple of edge-addition events (e1, e2, e3)
with strictly increasing timestamps t1 < t2 < t3 whose total span t3 - t1 is
at most delta and whose events touch at most three distinct nodes. The triple
is classified by relabeling nodes a, b, c in order of first appearance; the
first edge is always "ab", which leaves exactly 36 classes. Self-loop events
never participate.

The 6x6 matrix layout is fixed: row keys are the 6 canonical two-edge
prefixes and column keys the 6 possible canonical third edges, both sorted
lexicographically. ``enumerate_signatures`` emits the full mapping; the test
suite freezes it in a golden file.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from ..errors import InvalidArgumentError
from ..views import GraphView

ROW_PREFIXES = ("ab ab", "ab ac", "ab ba", "ab bc", "ab ca", "ab cb")
THIRD_EDGES = ("ab", "ac", "ba", "bc", "ca", "cb")

_ROW_INDEX = {key: i for i, key in enumerate(ROW_PREFIXES)}
_COL_INDEX = {key: i for i, key in enumerate(THIRD_EDGES)}


@dataclass(frozen=True)
class MotifSignature:
    signature: str  # e.g. "ab ba ab"
    row: int
    col: int


def enumerate_signatures() -> list[MotifSignature]:
    """The 36 valid classes in matrix order (row-major)."""
    out = []
    for prefix in ROW_PREFIXES:
        for third in THIRD_EDGES:
            out.append(
                MotifSignature(signature=f"{prefix} {third}", row=_ROW_INDEX[prefix], col=_COL_INDEX[third])
            )
    return out


@dataclass
class MotifMatrix:
    counts: list[list[int]]
    delta: int
    row_keys: tuple[str, ...] = ROW_PREFIXES
    col_keys: tuple[str, ...] = THIRD_EDGES
    metadata: dict = field(default_factory=dict)

    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def cell(self, prefix: str, third: str) -> int:
        return self.counts[_ROW_INDEX[prefix]][_COL_INDEX[third]]


def _label(node: int, a: int, b: int, c: int | None) -> tuple[str | None, int | None]:
    """Letter for ``node`` given current assignments; returns (letter, new_c)."""
    if node == a:
        return "a", c
    if node == b:
        return "b", c
    if c is None:
        return "c", node
    if node == c:
        return "c", c
    return None, c  # would be a fourth node


def temporal_motifs(view: GraphView, delta: int) -> MotifMatrix:
    """Count every qualifying ordered event triple once, into the 6x6 matrix.

    Enumeration walks the time-sorted addition events with a bisected
    delta-horizon per first event and prunes pairs already touching four
    nodes; exactness against the brute-force triple oracle is part of the
    acceptance suite.
    """
    if delta <= 0:
        raise InvalidArgumentError("delta must be positive")
    events = [
        (t, s, u, v) for t, s, u, v in view.visible_addition_events() if u != v
    ]
    times = [e[0] for e in events]
    counts = [[0] * 6 for _ in range(6)]
    n = len(events)
    for i in range(n):
        ti, _, ui, vi = events[i]
        horizon = bisect_right(times, ti + delta)
        for j in range(i + 1, horizon):
            tj, _, uj, vj = events[j]
            if tj == ti:
                continue
            a, b, c = ui, vi, None
            lu, c = _label(uj, a, b, c)
            if lu is None:
                continue
            lv, c = _label(vj, a, b, c)
            if lv is None:
                continue
            row = _ROW_INDEX[f"ab {lu}{lv}"]
            row_counts = counts[row]
            for k in range(j + 1, horizon):
                tk, _, uk, vk = events[k]
                if tk == tj:
                    continue
                lu3, c3 = _label(uk, a, b, c)
                if lu3 is None:
                    continue
                lv3, _ = _label(vk, a, b, c3)
                if lv3 is None:
                    continue
                row_counts[_COL_INDEX[f"{lu3}{lv3}"]] += 1
    return MotifMatrix(
        counts=counts,
        delta=delta,
        metadata={"view": view.describe(), "events": n},
    )
