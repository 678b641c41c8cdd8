"""Intersection families and the main bound: hypothesis evaluation in three
forms, the exact d_r statistic, and extremal-family verification.

For a design of strength t and a target rank s the bound |Z| <= lambda_s on
an s-intersecting subfamily Z holds whenever, for every r in 0..s-1,

    mu(r,s) * nu(s,M) * lambda_t      < lambda_s   (rows with r <= 2s-t)
    mu(r,s) * nu(s,M) * lambda_{2s-r} < lambda_s   (rows with 2s-t <= r <= s-1)

Each row is also evaluated with theta in place of lambda (both sides scale
by the same positive factor, so the verdicts must agree and the code
asserts they do).  Two additional printed forms are reported alongside and
never silently reconciled with the raw rows:

* remark_form swaps the roles of mu and nu exactly as printed
  (nu(r,s) * mu(s,M) * theta(.) < theta(s)); on some families it disagrees
  with the raw rows and the report surfaces that;
* table1_form is a per-family closed-form threshold with two regimes
  (s < t-1 and s = t-1), evaluated in exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import families, parameters
from .designs import DesignCertificate
from .errors import BudgetExceededError
from .families import Element, FamilySpec
from .parameters import qbinom

DEFAULT_BUDGET = 10**8


def min_meet_rank(spec: FamilySpec, family) -> int:
    """Minimum rank of a pairwise meet; the top rank for a singleton."""
    members = tuple(family)
    if not members:
        raise ValueError("family must be nonempty")
    top = spec.top_rank
    for x in members:
        if x.spec != spec or x.rank != top:
            raise ValueError("family members must be top-fiber elements of this family")
    best = top
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            best = min(best, families.meet(x, y).rank)
            if best == 0:
                return 0
    return best


def is_intersecting(spec: FamilySpec, family, s: int) -> bool:
    """True iff every pairwise meet has rank at least s."""
    if not 0 < s < spec.top_rank:
        raise ValueError(f"s must satisfy 0 < s < {spec.top_rank}, got {s}")
    return min_meet_rank(spec, family) >= s


@dataclass(frozen=True)
class ConditionRow:
    """One r-row of the hypothesis, in design-index and theta form."""

    r: int
    conditions: tuple[str, ...]
    lhs: int
    rhs: int
    theta_lhs: int
    theta_rhs: int
    holds: bool


@dataclass(frozen=True)
class RemarkRow:
    r: int
    conditions: tuple[str, ...]
    lhs: int
    rhs: int
    holds: bool


@dataclass(frozen=True)
class ConditionReport:
    spec: FamilySpec
    s: int
    t: int
    indices: tuple[int, ...]
    bound: int  # lambda_s
    rows: tuple[ConditionRow, ...]
    cond1_vacuous: bool
    theorem_form: bool
    remark_rows: tuple[RemarkRow, ...]
    remark_form: bool
    remark_agrees: bool
    table1_form: bool
    table1_agrees: bool


def _row_ranges(s: int, t: int):
    """Per-r applicable conditions and the lambda index used on the left."""
    hi1 = 2 * s - t
    lo2 = max(0, hi1)
    for r in range(s):
        conditions = []
        if hi1 >= 0 and r <= hi1:
            conditions.append("cond1")
        if r >= lo2:
            conditions.append("cond2")
        j = t if r <= hi1 else 2 * s - r
        yield r, tuple(conditions), j


def check_conditions(cert: DesignCertificate, s: int) -> ConditionReport:
    """Evaluate the bound's hypotheses for the certificate at rank s."""
    spec = cert.spec
    t = cert.strength
    top = spec.top_rank
    if not 0 < s < t:
        raise ValueError(f"need 0 < s < t (certificate strength t={t}), got s={s}")
    lam = cert.indices
    nu_sm = parameters.nu(spec, s, top)
    theta_s = parameters.theta(spec, s)
    rows = []
    for r, conditions, j in _row_ranges(s, t):
        base = parameters.mu(spec, r, s) * nu_sm
        lhs, rhs = base * lam[j], lam[s]
        theta_lhs, theta_rhs = base * parameters.theta(spec, j), theta_s
        holds = lhs < rhs
        assert holds == (theta_lhs < theta_rhs), "lambda-form and theta-form verdicts must agree"
        rows.append(ConditionRow(r, conditions, lhs, rhs, theta_lhs, theta_rhs, holds))
    theorem_form = all(row.holds for row in rows)
    remark_form, remark_rows = remark_conditions(spec, s, t)
    table1_form = table1_condition(spec, s, t)
    return ConditionReport(
        spec=spec,
        s=s,
        t=t,
        indices=lam,
        bound=lam[s],
        rows=tuple(rows),
        cond1_vacuous=2 * s - t < 0,
        theorem_form=theorem_form,
        remark_rows=remark_rows,
        remark_form=remark_form,
        remark_agrees=remark_form == theorem_form,
        table1_form=table1_form,
        table1_agrees=table1_form == theorem_form,
    )


def remark_conditions(spec: FamilySpec, s: int, t: int) -> tuple[bool, tuple[RemarkRow, ...]]:
    """The printed index-free form: nu(r,s) * mu(s,M) * theta(.) < theta(s)."""
    top = spec.top_rank
    if not 0 < s < t <= top:
        raise ValueError(f"need 0 < s < t <= {top}, got s={s}, t={t}")
    mu_sm = parameters.mu(spec, s, top)
    theta_s = parameters.theta(spec, s)
    rows = []
    for r, conditions, j in _row_ranges(s, t):
        lhs = parameters.nu(spec, r, s) * mu_sm * parameters.theta(spec, j)
        rows.append(RemarkRow(r, conditions, lhs, theta_s, lhs < theta_s))
    return all(row.holds for row in rows), tuple(rows)


def table1_condition(spec: FamilySpec, s: int, t: int) -> bool:
    """Closed-form parameter threshold, per family and regime."""
    top = spec.top_rank
    if not 0 < s < t <= top:
        raise ValueError(f"need 0 < s < t <= {top}, got s={s}, t={t}")
    kind = spec.kind
    m, n, v, q, k = spec.m, spec.n, spec.v, spec.q, spec.k
    tight = s == t - 1  # otherwise s < t-1
    if kind == "johnson":
        if tight:
            return v > s + (m - s) * math.comb(m, s) ** 2
        return v > s + math.comb(m, s) * (m - s + 1) * (m - s)
    if kind == "grassmann":
        gauss = qbinom(m, s, q)
        if tight:
            return q ** (v - s) - 1 > gauss**2 * (q ** (m - s) - 1)
        return q ** (v - s) - 1 > (q ** (m - s) - 1) * ((q ** (m - s - 1) - 1) // (q - 1)) * gauss**2
    if kind == "hamming":
        if tight:
            return n > math.comb(m, s) ** 2
        return n > (m - s + 1) * math.comb(m, s)
    if kind == "bilinear":
        if tight:
            return q > qbinom(m, s, q) ** 2
        return n > ((q ** (m - s + 1) - 1) // (q - 1)) * qbinom(m, s, q)
    if kind == "injection":
        if tight:
            return n > s + math.comb(m, s) ** 2
        return n > s + (m - s + 1) * math.comb(m, s)
    if kind == "nbjohnson":
        if tight:
            return n * (m - s) > (k - s) * math.comb(k, s) ** 2
        return n * (m - s) > (k - s + 1) * (k - s) * math.comb(k, s)
    if tight:
        return (m - 1) * (m - s) > (k - s) * math.comb(k, s) ** 2
    return (m - 1) * (m - s) > (k - s + 1) * (k - s) * math.comb(k, s)


def ekr_bound(cert: DesignCertificate, s: int) -> int:
    """lambda_s; whether the bound is theorem-backed is check_conditions' job."""
    if not 0 <= s <= cert.strength:
        raise ValueError(f"s must satisfy 0 <= s <= {cert.strength}, got {s}")
    return cert.indices[s]


@dataclass(frozen=True)
class DrReport:
    """Exact d_r with its witness pair and the applicable bound."""

    r: int
    s: int
    d_r: int | None
    bound: int
    witness: tuple[Element, Element] | None


def compute_dr(cert: DesignCertificate, s: int, r: int, budget: int = DEFAULT_BUDGET) -> DrReport:
    """Exhaustive maximum of |{z in Y : x <= z, rank(z /\\ y) >= s}|.

    Quantifies over every x in the rank-s fiber and every y in Y with
    rank(x /\\ y) == r, and compares against mu(r,s) * lambda_j where
    j = t when r <= 2s-t and j = 2s-r otherwise.
    """
    spec = cert.spec
    t = cert.strength
    if not 0 <= r < s <= t:
        raise ValueError(f"need 0 <= r <= s-1 < t <= {spec.top_rank}, got r={r}, s={s}, t={t}")
    j = t if r <= 2 * s - t else 2 * s - r
    bound = parameters.mu(spec, r, s) * cert.indices[j]
    members = cert.elements
    fiber_s = families._fiber(spec, s)
    cost = len(fiber_s) * len(members) * 2
    if cost > budget:
        raise BudgetExceededError(
            f"d_r scan needs about {cost} comparisons, budget is {budget}",
            context={"fiber_size": len(fiber_s), "design_size": len(members)},
        )
    best = None
    witness = None
    for x in fiber_s:
        star_x = [z for z in members if families.leq(x, z)]
        for y in members:
            if families.meet(x, y).rank != r:
                continue
            count = sum(1 for z in star_x if families.meet(z, y).rank >= s)
            if best is None or count > best:
                best, witness = count, (x, y)
    return DrReport(r=r, s=s, d_r=best, bound=bound, witness=witness)


@dataclass(frozen=True)
class ExtremalVerdict:
    """How an intersecting family compares with the bound lambda_s."""

    size: int
    bound: int
    status: str  # below-bound | extremal-star | extremal-but-not-star | exceeds-bound
    center: Element | None


def verify_extremal(cert: DesignCertificate, family, s: int) -> ExtremalVerdict:
    """Classify an s-intersecting subfamily of the design against lambda_s."""
    spec = cert.spec
    members = tuple(family)
    if len(set(members)) != len(members):
        raise ValueError("family contains a duplicate element")
    if not set(members) <= set(cert.elements):
        raise ValueError("family is not a subset of the design")
    if not is_intersecting(spec, members, s):
        raise ValueError(f"family is not {s}-intersecting")
    bound = ekr_bound(cert, s)
    size = len(members)
    if size < bound:
        return ExtremalVerdict(size, bound, "below-bound", None)
    if size > bound:
        return ExtremalVerdict(size, bound, "exceeds-bound", None)
    # |family| == bound: extremal iff the family is a full star of some
    # rank-s center.  Any candidate center lies below the iterated meet.
    common = families.meet_all(members)
    for z in families.enumerate_fiber(spec, s):
        if not families.leq(z, common):
            continue
        covered = sum(1 for x in cert.elements if families.leq(z, x))
        if covered == size:
            return ExtremalVerdict(size, bound, "extremal-star", z)
    return ExtremalVerdict(size, bound, "extremal-but-not-star", None)
