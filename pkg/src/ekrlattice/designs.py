"""Designs in top fibers: strength verification, index arithmetic, stars,
generators, and the design file format.

A design of strength t is a set Y of top-fiber elements covering every
rank-t element the same number lambda_t of times.  Certificates store the
whole index vector lambda_0..lambda_t, each entry derived exactly from
lambda_t via lambda_j = lambda_t * theta(j) / theta(t).

Design files are UTF-8 with LF line endings::

    family hamming:m=3,n=11
    strength 2
    1:0,2:0,3:0
    ...

`#` starts a comment line; the declared strength is re-verified on load.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from pathlib import Path

from . import families, gf as gflib, parameters
from .errors import BudgetExceededError, NonIntegralError, ParseError, VerificationError
from .families import Element, FamilySpec

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class DesignCertificate:
    """A verified design: elements, strength, and exact index vector."""

    spec: FamilySpec
    elements: tuple[Element, ...]
    strength: int
    indices: tuple[int, ...]  # indices[j] == lambda_j for 0 <= j <= strength

    @property
    def size(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class Star:
    """All members of a design lying above a fixed center."""

    center: Element
    members: tuple[Element, ...]


def _validate_top_elements(spec: FamilySpec, elements):
    elements = tuple(elements)
    if not elements:
        raise ValueError("design must be nonempty")
    top = spec.top_rank
    for x in elements:
        if x.spec != spec:
            raise ValueError("design element belongs to a different family")
        if x.rank != top:
            raise ValueError(f"design element {families.format_element(x)} has rank {x.rank}, expected {top}")
    if len(set(elements)) != len(elements):
        raise ValueError("design contains a duplicate element")
    return elements


def _coverage_counts(spec: FamilySpec, elements, t: int, budget: int):
    fiber = families._fiber(spec, t)
    cost = len(fiber) * len(elements)
    if cost > budget:
        raise BudgetExceededError(
            f"strength verification needs {cost} comparisons, budget is {budget}",
            context={"fiber_size": len(fiber), "design_size": len(elements)},
        )
    return fiber, [sum(1 for x in elements if families.leq(z, x)) for z in fiber]


def is_design(spec: FamilySpec, elements, t: int, budget: int = DEFAULT_BUDGET) -> int | None:
    """lambda_t when every rank-t element is covered equally, else None."""
    elements = _validate_top_elements(spec, elements)
    if not 0 <= t <= spec.top_rank:
        raise ValueError(f"strength {t} out of range 0..{spec.top_rank}")
    _, counts = _coverage_counts(spec, elements, t, budget)
    first = counts[0]
    return first if all(c == first for c in counts) else None


def design_witness(spec: FamilySpec, elements, t: int, budget: int = DEFAULT_BUDGET):
    """Two (element, count) pairs with unequal counts, or None when constant."""
    elements = _validate_top_elements(spec, elements)
    fiber, counts = _coverage_counts(spec, elements, t, budget)
    first = counts[0]
    for z, c in zip(fiber, counts):
        if c != first:
            return (fiber[0], first), (z, c)
    return None


def derive_index(spec: FamilySpec, lam_t: int, t: int, t_prime: int) -> int:
    """lambda_{t'} = lambda_t * theta(t') / theta(t), asserted exact."""
    if not 0 <= t_prime <= t <= spec.top_rank:
        raise ValueError(f"need 0 <= t' <= t <= {spec.top_rank}, got t'={t_prime}, t={t}")
    num = lam_t * parameters.theta(spec, t_prime)
    den = parameters.theta(spec, t)
    if num % den:
        raise NonIntegralError(
            f"lambda_{t_prime} = {lam_t} * theta({t_prime}) / theta({t}) is not an integer for {spec}"
        )
    return num // den


def make_certificate(spec: FamilySpec, elements, t: int, budget: int = DEFAULT_BUDGET) -> DesignCertificate:
    """Verify strength t and package the elements with their index vector."""
    elements = _validate_top_elements(spec, elements)
    lam = is_design(spec, elements, t, budget)
    if lam is None:
        witness = design_witness(spec, elements, t, budget)
        (z1, c1), (z2, c2) = witness
        raise VerificationError(
            f"not a {t}-design: {families.format_element(z1)} is covered {c1} times "
            f"but {families.format_element(z2)} is covered {c2} times",
            witness=witness,
        )
    indices = tuple(derive_index(spec, lam, t, j) for j in range(t + 1))
    return DesignCertificate(spec, elements, t, indices)


def restrict_strength(cert: DesignCertificate, t: int) -> DesignCertificate:
    """View a t-design as a design of smaller strength (same elements)."""
    if not 0 <= t <= cert.strength:
        raise ValueError(f"strength {t} out of range 0..{cert.strength}")
    return DesignCertificate(cert.spec, cert.elements, t, cert.indices[: t + 1])


def star(spec: FamilySpec, elements, z: Element) -> Star:
    """All members of the design above z, in canonical order."""
    if z.spec != spec:
        raise ValueError("star center belongs to a different family")
    members = tuple(sorted(x for x in elements if families.leq(z, x)))
    return Star(z, members)


def full_fiber(spec: FamilySpec, t: int | None = None, budget: int = DEFAULT_BUDGET) -> DesignCertificate:
    """The whole top fiber as a design; lambda_j = theta(j) for every j <= t."""
    top = spec.top_rank
    if t is None:
        t = top
    if not 0 <= t <= top:
        raise ValueError(f"strength {t} out of range 0..{top}")
    size = parameters.theta(spec, 0)
    if size > budget:
        raise BudgetExceededError(
            f"top fiber has {size} elements, budget is {budget}",
            context={"fiber_size": size},
        )
    elements = tuple(families.enumerate_fiber(spec, top))
    indices = tuple(parameters.theta(spec, j) for j in range(t + 1))
    return DesignCertificate(spec, elements, t, indices)


def generate_linear_oa(q: int, m: int) -> DesignCertificate:
    """Orthogonal array of strength m-1 and index 1 in hamming(m, n=q).

    Rows are (x_1, ..., x_{m-1}, sum x_i mod q) over all tuples; any m-1
    coordinates determine the remaining one, so each rank-(m-1) element is
    covered exactly once.
    """
    if not gflib.is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    spec = FamilySpec(kind="hamming", m=m, n=q)
    elements = []
    for tup in product(range(q), repeat=m - 1):
        word = tup + (sum(tup) % q,)
        elements.append(Element(spec, tuple(enumerate(word, start=1))))
    cert = make_certificate(spec, elements, m - 1)
    if cert.indices[m - 1] != 1:
        raise AssertionError("linear orthogonal array must have index 1")
    return cert


# ---------------------------------------------------------------------------
# design files


def save_design(cert: DesignCertificate, path) -> None:
    lines = [f"family {cert.spec}", f"strength {cert.strength}"]
    lines.extend(families.format_element(x) for x in cert.elements)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _significant_lines(path):
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def _read_header(lines, path, *, want_strength: bool):
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise ParseError(f"{path}: empty design file") from None
    if not first.startswith("family "):
        raise ParseError(f"{path}:{lineno}: expected `family <spec>`")
    spec = parse_spec_line(first, path, lineno)
    strength = None
    rest = lines
    try:
        lineno, second = next(lines)
    except StopIteration:
        second = None
    if second is not None:
        if second.startswith("strength "):
            text = second[len("strength "):].strip()
            if not text.isdigit():
                raise ParseError(f"{path}:{lineno}: bad strength {text!r}")
            strength = int(text)
        else:
            if want_strength:
                raise ParseError(f"{path}:{lineno}: expected `strength <t>`")
            rest = _chain_back((lineno, second), lines)
    if want_strength and strength is None:
        raise ParseError(f"{path}: missing `strength <t>` line")
    return spec, strength, rest


def parse_spec_line(line, path, lineno) -> FamilySpec:
    try:
        return families.parse_family_spec(line[len("family "):])
    except ParseError as exc:
        raise ParseError(f"{path}:{lineno}: {exc}") from exc


def _chain_back(item, rest):
    yield item
    yield from rest


def _read_elements(spec, lines, path):
    elements = []
    seen = set()
    for lineno, text in lines:
        try:
            element = families.parse_element(spec, text)
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
        if element.rank != spec.top_rank:
            raise ParseError(f"{path}:{lineno}: element is not in the top fiber")
        if element in seen:
            raise ParseError(f"{path}:{lineno}: duplicate element {text!r}")
        seen.add(element)
        elements.append(element)
    if not elements:
        raise ParseError(f"{path}: design file lists no elements")
    return tuple(elements)


def read_design_file(path):
    """Parse a design file without verifying: (spec, declared strength, elements)."""
    lines = _significant_lines(path)
    spec, strength, rest = _read_header(lines, path, want_strength=True)
    elements = _read_elements(spec, rest, path)
    return spec, strength, elements


def read_family_file(path):
    """Parse a family file (header plus elements; strength line optional)."""
    lines = _significant_lines(path)
    spec, _, rest = _read_header(lines, path, want_strength=False)
    elements = _read_elements(spec, rest, path)
    return spec, elements


def load_design(path, budget: int = DEFAULT_BUDGET) -> DesignCertificate:
    """Load and re-verify a design file; rejects files whose strength fails."""
    spec, strength, elements = read_design_file(path)
    if not 0 <= strength <= spec.top_rank:
        raise ParseError(f"{path}: declared strength {strength} out of range 0..{spec.top_rank}")
    return make_certificate(spec, elements, strength, budget)
