"""Greedy covering algorithms and their exact verifiers.

statistical_cover builds a certificate by adding, in canonical order, any
translate whose overlap with the growing union falls short of the target
fraction; ruzsa_cover is the separate disjoint-translates argument (it is
not the delta = 1 specialization, whose add-condition is vacuous).
verify_iterated_cover checks the convolution-power lower bound that a
covering certificate implies.  All comparisons are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .functions import convolve, indicator
from .sets import GroupSet, indices_to_mask, k_fold_sum, sumset
from .groups import require_same_spec

__all__ = [
    "CoverCertificate",
    "IteratedCoverCheck",
    "statistical_cover",
    "ruzsa_cover",
    "verify_covered",
    "verify_iterated_cover",
]


@dataclass(frozen=True)
class CoverCertificate:
    """Output of statistical_cover, replayable step by step.

    trace lists the chosen elements in insertion order, so prefixes of the
    trace reproduce each intermediate stage; per_x_coverage maps every
    x in A to the exact count |(x+B) & (X+B)| at termination.
    """

    A: GroupSet
    B: GroupSet
    X: GroupSet
    delta: Fraction
    K: Fraction
    size_bound: Fraction
    per_x_coverage: dict[int, int]
    trace: tuple[int, ...]
    valid: bool

    def min_coverage(self) -> Fraction:
        worst = min(self.per_x_coverage.values())
        return Fraction(worst, len(self.B))


def _translate_masks(A: GroupSet, B: GroupSet) -> dict[int, int]:
    spec = A.spec
    b_arr = B.index_array
    order = spec.order
    return {
        x: indices_to_mask(order, spec.shift_indices(b_arr, x).tolist())
        for x in sorted(A.indices)
    }


def statistical_cover(A: GroupSet, B: GroupSet, delta: Fraction | int) -> CoverCertificate:
    """Greedy covering: X subset of A with |(x+B) & (X+B)| >= (1-delta)|B| for all x in A.

    The certificate always satisfies |X| <= (K-1)/delta + 1 with
    K = |A+B|/|B| compared as exact rationals.
    """
    require_same_spec(A, B)
    if not A.indices or not B.indices:
        raise ValueError("covering needs non-empty A and B")
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")

    masks = _translate_masks(A, B)
    a_sorted = sorted(A.indices)
    need = (1 - delta) * len(B)

    x0 = a_sorted[0]
    chosen = [x0]
    union = masks[x0]
    while True:
        found = None
        for x in a_sorted:
            if (masks[x] & union).bit_count() < need:
                found = x
                break
        if found is None:
            break
        chosen.append(found)
        union |= masks[found]

    ab_mask = 0
    for m in masks.values():
        ab_mask |= m
    K = Fraction(ab_mask.bit_count(), len(B))
    bound = (K - 1) / delta + 1
    per_x = {x: (masks[x] & union).bit_count() for x in a_sorted}
    valid = len(chosen) <= bound and all(c >= need for c in per_x.values())
    if not valid:
        raise RuntimeError(
            "statistical covering invariant violated; this indicates a bug"
        )
    return CoverCertificate(
        A=A,
        B=B,
        X=GroupSet(A.spec, frozenset(chosen)),
        delta=delta,
        K=K,
        size_bound=bound,
        per_x_coverage=per_x,
        trace=tuple(chosen),
        valid=True,
    )


def ruzsa_cover(A: GroupSet, B: GroupSet) -> GroupSet:
    """Greedy maximal B-separated X inside A; guarantees A inside X + B - B.

    The translates {x + B : x in X} are pairwise disjoint, so
    |X| <= |A+B| / |B| holds exactly.
    """
    require_same_spec(A, B)
    if not A.indices or not B.indices:
        raise ValueError("covering needs non-empty A and B")
    masks = _translate_masks(A, B)
    chosen: list[int] = []
    union = 0
    for x in sorted(A.indices):
        if masks[x] & union == 0:
            chosen.append(x)
            union |= masks[x]
    X = GroupSet(A.spec, frozenset(chosen))
    if len(X) * len(B) > len(A + B):
        raise RuntimeError("ruzsa covering size bound violated; this indicates a bug")
    covered = sumset(X, B) - B
    if not A.issubset(covered):
        raise RuntimeError("ruzsa covering postcondition violated; this indicates a bug")
    return X


def verify_covered(
    A: GroupSet,
    X: GroupSet,
    delta: Fraction | int,
    B: GroupSet | None = None,
) -> tuple[bool, Fraction]:
    """Is every translate x+B (x in A) covered by X+B in at least (1-delta)|B| points?

    Returns (holds, worst coverage fraction).  B defaults to A, the case
    the covering definition is stated for.
    """
    if B is None:
        B = A
    require_same_spec(A, B)
    require_same_spec(A, X)
    if not A.indices or not B.indices:
        raise ValueError("coverage check needs non-empty A and B")
    delta = Fraction(delta)
    spec = A.spec
    b_arr = B.index_array
    xb_mask = 0
    for x in X.indices:
        xb_mask |= indices_to_mask(spec.order, spec.shift_indices(b_arr, x).tolist())
    need = (1 - delta) * len(B)
    worst: int | None = None
    for x in sorted(A.indices):
        m = indices_to_mask(spec.order, spec.shift_indices(b_arr, x).tolist())
        c = (m & xb_mask).bit_count()
        if worst is None or c < worst:
            worst = c
    assert worst is not None
    return (Fraction(worst) >= need, Fraction(worst, len(B)))


@dataclass(frozen=True)
class IteratedCoverCheck:
    """Both sides of the k-step covering inequality, computed exactly."""

    lhs: Fraction
    rhs: Fraction
    holds: bool
    precondition_failures: tuple[str, ...]


def verify_iterated_cover(
    A: GroupSet, X: GroupSet, delta: Fraction | int, k: int
) -> IteratedCoverCheck:
    """Check <1_A * ... * 1_A (k+1 factors), 1_{kX+A}> >= (1-delta)^k |A|^(k+1).

    Preconditions (A covered by X at level 1-delta, identity in X, k >= 0)
    are reported rather than raised; the inequality is computed either way.
    """
    require_same_spec(A, X)
    delta = Fraction(delta)
    failures: list[str] = []
    if k < 0:
        raise ValueError("k must be non-negative")
    if not A.indices:
        raise ValueError("A must be non-empty")
    if not X.has_identity:
        failures.append("identity not in X")
    covered, frac = verify_covered(A, X, delta)
    if not covered:
        failures.append(f"A is not (1-delta)-covered by X (worst fraction {frac})")

    one_a = indicator(A)
    conv = one_a
    for _ in range(k):
        conv = convolve(conv, one_a)
    target = k_fold_sum(X, k) + A
    lhs = conv.inner(indicator(target))
    rhs = (1 - delta) ** k * Fraction(len(A)) ** (k + 1)
    return IteratedCoverCheck(
        lhs=lhs, rhs=rhs, holds=lhs >= rhs, precondition_failures=tuple(failures)
    )
