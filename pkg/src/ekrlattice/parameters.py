"""Closed-form regularity constants and their brute-force counting oracle.

Each family carries four constants:

* mu(r, s)   -- rank-s elements between a fixed rank-r element and a fixed
                top element above it;
* nu(r, s)   -- rank-r elements below a fixed rank-s element;
* theta(r)   -- top-fiber elements above a fixed rank-r element;
* alpha(r,s) -- rank-s elements above a fixed rank-r element, always equal
                to theta(r) * mu(r, s) / theta(s) with exact division.

`oracle_count` computes the same quantities by literal enumeration for one
concrete witness tuple; the audit asserts the two routes agree everywhere.

All arithmetic is exact unbounded-integer arithmetic.
"""

from __future__ import annotations

import math

from . import families
from .errors import NonIntegralError
from .families import FamilySpec


def qbinom(a: int, b: int, q: int) -> int:
    """Gaussian binomial coefficient: b-dim subspaces of GF(q)^a; 0 if b > a."""
    if b < 0 or b > a:
        return 0
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _check_ranks(spec: FamilySpec, r: int, s: int):
    if not 0 <= r <= s <= spec.top_rank:
        raise ValueError(f"ranks must satisfy 0 <= r <= s <= {spec.top_rank}, got r={r}, s={s}")


def mu(spec: FamilySpec, r: int, s: int) -> int:
    """Count of rank-s elements u with z <= u <= y, for z of rank r below a top y."""
    _check_ranks(spec, r, s)
    kind = spec.kind
    if kind in ("johnson", "hamming", "injection"):
        return math.comb(spec.m - r, spec.m - s)
    if kind in ("grassmann", "bilinear"):
        return qbinom(spec.m - r, spec.m - s, spec.q)
    return math.comb(spec.k - r, s - r)


def nu(spec: FamilySpec, r: int, s: int) -> int:
    """Count of rank-r elements below a fixed rank-s element."""
    _check_ranks(spec, r, s)
    if spec.kind in ("grassmann", "bilinear"):
        return qbinom(s, r, spec.q)
    return math.comb(s, r)


def theta(spec: FamilySpec, r: int) -> int:
    """Count of top-fiber elements above a fixed rank-r element."""
    if not 0 <= r <= spec.top_rank:
        raise ValueError(f"rank must satisfy 0 <= r <= {spec.top_rank}, got {r}")
    kind = spec.kind
    if kind == "johnson":
        return math.comb(spec.v - r, spec.m - r)
    if kind == "grassmann":
        return qbinom(spec.v - r, spec.m - r, spec.q)
    if kind == "hamming":
        return spec.n ** (spec.m - r)
    if kind == "bilinear":
        # the codomain has q**n points, so each of the m-r missing basis
        # directions picks its image among q**n vectors
        return spec.q ** (spec.n * (spec.m - r))
    if kind == "injection":
        return math.perm(spec.n - r, spec.m - r)
    if kind == "nbjohnson":
        return spec.n ** (spec.k - r) * math.comb(spec.m - r, spec.k - r)
    return (spec.m - 1) ** (spec.k - r) * math.comb(spec.m - r, spec.k - r)


def alpha(spec: FamilySpec, r: int, s: int) -> int:
    """Count of rank-s elements above a fixed rank-r element."""
    _check_ranks(spec, r, s)
    num = theta(spec, r) * mu(spec, r, s)
    den = theta(spec, s)
    if num % den:
        raise NonIntegralError(
            f"theta(s) does not divide theta(r)*mu(r,s) for {spec} with r={r}, s={s}"
        )
    return num // den


def oracle_count(spec: FamilySpec, which: str, witnesses, *, r: int | None = None, s: int | None = None) -> int:
    """Literal enumeration count for one witness tuple.

    * theta: witnesses=(z,) counts top elements above z;
    * mu:    witnesses=(z, y) with y a top element above z, counts rank-s
             elements between them;
    * nu:    witnesses=(u,) counts rank-r elements below u;
    * alpha: witnesses=(u,) counts rank-s elements above u.
    """
    top = spec.top_rank
    if which == "theta":
        (z,) = witnesses
        return sum(1 for y in families.enumerate_fiber(spec, top) if families.leq(z, y))
    if which == "mu":
        z, y = witnesses
        if y.rank != top:
            raise ValueError("mu oracle requires a top-fiber witness y")
        if not families.leq(z, y):
            raise ValueError("mu oracle requires z below y")
        if s is None or not z.rank <= s <= top:
            raise ValueError("mu oracle requires z.rank <= s <= top rank")
        return sum(
            1
            for u in families.enumerate_fiber(spec, s)
            if families.leq(z, u) and families.leq(u, y)
        )
    if which == "nu":
        (u,) = witnesses
        if r is None or not 0 <= r <= u.rank:
            raise ValueError("nu oracle requires 0 <= r <= u.rank")
        return sum(1 for z in families.enumerate_fiber(spec, r) if families.leq(z, u))
    if which == "alpha":
        (u,) = witnesses
        if s is None or not u.rank <= s <= top:
            raise ValueError("alpha oracle requires u.rank <= s <= top rank")
        return sum(1 for z in families.enumerate_fiber(spec, s) if families.leq(u, z))
    raise ValueError(f"unknown parameter name {which!r}")
