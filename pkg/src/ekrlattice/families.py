"""Seven families of ranked meet-semilattices with canonical element codecs.

Every family is truncated at its top rank M, so each fiber is finite and
enumerable.  Elements carry a canonical payload (equal payloads ==
equal elements):

* johnson    -- subsets of {1..v} of size <= m, stored as sorted tuples;
* grassmann  -- subspaces of GF(q)^v of dimension <= m, stored as RREF
                row tuples;
* hamming    -- partial maps {1..m} -> {0..n-1}, stored as sorted
                (position, value) pairs;
* bilinear   -- partial linear maps: a subspace E of GF(q)^m in RREF plus
                the images of its basis rows in GF(q)^n;
* injection  -- partial injective maps {1..m} -> {1..n};
* nbjohnson  -- hamming truncated at rank k < m;
* signed     -- partial maps {1..m} -> {1..m} with f(i) != i, truncated
                at rank k < m.

Positions are 1-based everywhere; values are 0-based for hamming and
nbjohnson and 1-based for injection and signed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations, permutations, product
from typing import Iterator

from . import gf as gflib
from .errors import FamilyMismatchError, ParseError

KINDS = ("johnson", "grassmann", "hamming", "bilinear", "injection", "nbjohnson", "signed")

_REQUIRED = {
    "johnson": ("v", "m"),
    "grassmann": ("v", "m", "q"),
    "hamming": ("m", "n"),
    "bilinear": ("m", "n", "q"),
    "injection": ("m", "n"),
    "nbjohnson": ("m", "n", "k"),
    "signed": ("m", "k"),
}

_MAP_KINDS = ("hamming", "injection", "nbjohnson", "signed")


@dataclass(frozen=True)
class FamilySpec:
    """Which family, plus its integer parameters.

    The top rank M is m for johnson/grassmann/hamming/bilinear/injection
    and k for nbjohnson/signed.
    """

    kind: str
    v: int | None = None
    m: int | None = None
    n: int | None = None
    q: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind not in _REQUIRED:
            raise ParseError(f"unknown family kind {self.kind!r}")
        required = _REQUIRED[self.kind]
        for name in ("v", "m", "n", "q", "k"):
            value = getattr(self, name)
            if name in required:
                if not isinstance(value, int) or value < 1:
                    raise ParseError(f"{self.kind}: parameter {name} must be a positive integer")
            elif value is not None:
                raise ParseError(f"{self.kind}: unexpected parameter {name}")
        kind = self.kind
        if kind in ("johnson", "grassmann") and not self.v >= 2 * self.m >= 2:
            raise ParseError(f"{kind}: requires v >= 2m >= 2")
        if kind == "hamming" and self.n < 2:
            raise ParseError("hamming: requires n >= 2")
        if kind == "injection" and self.n < self.m:
            raise ParseError("injection: requires n >= m")
        if kind == "nbjohnson":
            if self.n < 2:
                raise ParseError("nbjohnson: requires n >= 2")
            if not self.k < self.m:
                raise ParseError("nbjohnson: requires k < m")
        if kind == "signed" and not self.k < self.m:
            raise ParseError("signed: requires k < m")
        if self.q is not None:
            try:
                gflib.field(self.q)
            except ValueError as exc:
                raise ParseError(f"{kind}: {exc}") from exc

    @property
    def top_rank(self) -> int:
        return self.k if self.kind in ("nbjohnson", "signed") else self.m

    def __str__(self) -> str:
        params = ",".join(f"{name}={getattr(self, name)}" for name in _REQUIRED[self.kind])
        return f"{self.kind}:{params}"


def parse_family_spec(text: str) -> FamilySpec:
    """Parse the `kind:key=value,...` grammar, e.g. `johnson:v=7,m=3`."""
    text = text.strip()
    kind, sep, rest = text.partition(":")
    if not sep or not rest:
        raise ParseError(f"bad family spec {text!r}: expected kind:key=value,...")
    params: dict[str, int] = {}
    for item in rest.split(","):
        name, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"bad family spec item {item!r}")
        name = name.strip()
        if name in params:
            raise ParseError(f"duplicate parameter {name!r}")
        try:
            params[name] = int(value)
        except ValueError as exc:
            raise ParseError(f"bad integer in family spec item {item!r}") from exc
    if set(params) != set(_REQUIRED.get(kind, ())):
        raise ParseError(
            f"{kind}: expected parameters {', '.join(_REQUIRED.get(kind, ('?',)))}"
        )
    return FamilySpec(kind=kind, **params)


@dataclass(frozen=True)
class Element:
    """One canonical semilattice point; equality is payload equality."""

    spec: FamilySpec
    payload: tuple

    @property
    def rank(self) -> int:
        if self.spec.kind == "bilinear":
            return len(self.payload[0])
        return len(self.payload)

    def __lt__(self, other: "Element") -> bool:
        if self.spec != other.spec:
            raise FamilyMismatchError("cannot order elements of different families")
        return self.payload < other.payload

    def __str__(self) -> str:
        return format_element(self)


def least(spec: FamilySpec) -> Element:
    """The least element: empty set, zero space, or empty partial map."""
    payload = ((), ()) if spec.kind == "bilinear" else ()
    return Element(spec, payload)


def rank(x: Element) -> int:
    return x.rank


def _same_family(x: Element, y: Element) -> FamilySpec:
    if x.spec != y.spec:
        raise FamilyMismatchError(f"family mismatch: {x.spec} vs {y.spec}")
    return x.spec


# ---------------------------------------------------------------------------
# linear-map helpers (bilinear)


def _pivot_columns(rref_rows):
    return tuple(next(i for i, c in enumerate(row) if c) for row in rref_rows)


def _apply_linear(dom_rows, images, w, fld):
    """Image of w under the map sending dom row i to images[i].

    dom_rows must be RREF and w must lie in their row space, so the
    coordinates of w are just its entries at the pivot columns.
    """
    if not dom_rows:
        return None
    n = len(images[0])
    out = [0] * n
    for row_idx, piv in enumerate(_pivot_columns(dom_rows)):
        c = w[piv]
        if c:
            img = images[row_idx]
            out = [fld.add(x, fld.mul(c, y)) for x, y in zip(out, img)]
    return tuple(out)


def _member_image(dom_rows, images, w, fld):
    """Like _apply_linear but returns None when w is outside the domain."""
    if not dom_rows:
        return None
    pivots = _pivot_columns(dom_rows)
    if not gflib.in_rowspace(dom_rows, pivots, w, fld):
        return None
    return _apply_linear(dom_rows, images, w, fld)


# ---------------------------------------------------------------------------
# lattice operations


def meet(x: Element, y: Element) -> Element:
    """Greatest lower bound of x and y."""
    spec = _same_family(x, y)
    kind = spec.kind
    if kind == "johnson" or kind in _MAP_KINDS:
        payload = tuple(sorted(set(x.payload) & set(y.payload)))
        return Element(spec, payload)
    fld = gflib.field(spec.q)
    if kind == "grassmann":
        rows = gflib.intersect_rowspaces(x.payload, y.payload, spec.v, fld)
        return Element(spec, rows)
    # bilinear: the subspace of dom(x) /\ dom(y) where both maps agree
    dom_x, img_x = x.payload
    dom_y, img_y = y.payload
    inter = gflib.intersect_rowspaces(dom_x, dom_y, spec.m, fld)
    if not inter:
        return least(spec)
    diffs = []
    for w in inter:
        fx = _apply_linear(dom_x, img_x, w, fld)
        fy = _apply_linear(dom_y, img_y, w, fld)
        diffs.append(tuple(fld.sub(a, b) for a, b in zip(fx, fy)))
    null = gflib.combination_nullspace(diffs, fld)
    if not null:
        return least(spec)
    agree = []
    for coeffs in null:
        vec = [0] * spec.m
        for c, row in zip(coeffs, inter):
            if c:
                vec = [fld.add(a, fld.mul(c, b)) for a, b in zip(vec, row)]
        agree.append(tuple(vec))
    w_rows, _ = gflib.rref(agree, fld)
    images = tuple(_apply_linear(dom_x, img_x, w, fld) for w in w_rows)
    return Element(spec, (w_rows, images))


def leq(x: Element, y: Element) -> bool:
    """True iff x is below y (equivalently meet(x, y) == x)."""
    spec = _same_family(x, y)
    kind = spec.kind
    if kind == "johnson" or kind in _MAP_KINDS:
        return set(x.payload) <= set(y.payload)
    fld = gflib.field(spec.q)
    if kind == "grassmann":
        pivots = _pivot_columns(y.payload)
        return all(gflib.in_rowspace(y.payload, pivots, row, fld) for row in x.payload)
    dom_x, img_x = x.payload
    dom_y, img_y = y.payload
    for row, img in zip(dom_x, img_x):
        got = _member_image(dom_y, img_y, row, fld)
        if got != img:
            return False
    return True


def join_bounded(x: Element, y: Element) -> Element | None:
    """Least upper bound within the truncated lattice, or None.

    When an upper bound exists its rank is rank(x) + rank(y) - rank(x/\\y);
    upper bounds are only sought at rank <= M.
    """
    spec = _same_family(x, y)
    kind = spec.kind
    top = spec.top_rank
    if kind == "johnson":
        union = tuple(sorted(set(x.payload) | set(y.payload)))
        return Element(spec, union) if len(union) <= top else None
    if kind in _MAP_KINDS:
        merged = dict(x.payload)
        for pos, val in y.payload:
            if merged.get(pos, val) != val:
                return None
            merged[pos] = val
        if len(merged) > top:
            return None
        if kind == "injection" and len(set(merged.values())) != len(merged):
            return None
        return Element(spec, tuple(sorted(merged.items())))
    fld = gflib.field(spec.q)
    if kind == "grassmann":
        total = gflib.sum_rowspaces(x.payload, y.payload, fld)
        return Element(spec, total) if len(total) <= top else None
    # bilinear: extensions exist iff the maps agree on the domain overlap
    dom_x, img_x = x.payload
    dom_y, img_y = y.payload
    inter = gflib.intersect_rowspaces(dom_x, dom_y, spec.m, fld)
    for w in inter:
        if _apply_linear(dom_x, img_x, w, fld) != _apply_linear(dom_y, img_y, w, fld):
            return None
    total = gflib.sum_rowspaces(dom_x, dom_y, fld)
    if len(total) > top:
        return None
    if not total:
        return least(spec)
    stacked = tuple(dom_x) + tuple(dom_y)
    images = []
    for g in total:
        coeffs = gflib.solve_combination(stacked, g, fld)
        img = [0] * spec.n
        for c, src in zip(coeffs, tuple(img_x) + tuple(img_y)):
            if c:
                img = [fld.add(a, fld.mul(c, b)) for a, b in zip(img, src)]
        images.append(tuple(img))
    return Element(spec, (total, tuple(images)))


def meet_all(elements) -> Element:
    """Iterated meet of a nonempty collection."""
    return reduce(meet, elements)


# ---------------------------------------------------------------------------
# fiber enumeration


def _value_choices(spec: FamilySpec, pos: int) -> list[int]:
    kind = spec.kind
    if kind in ("hamming", "nbjohnson"):
        return list(range(spec.n))
    if kind == "signed":
        return [v for v in range(1, spec.m + 1) if v != pos]
    raise AssertionError(kind)


def _fiber_payloads(spec: FamilySpec, i: int) -> list[tuple]:
    kind = spec.kind
    if kind == "johnson":
        return [tuple(c) for c in combinations(range(1, spec.v + 1), i)]
    if kind == "injection":
        out = []
        for pos in combinations(range(1, spec.m + 1), i):
            for vals in permutations(range(1, spec.n + 1), i):
                out.append(tuple(zip(pos, vals)))
        return out
    if kind in ("hamming", "nbjohnson", "signed"):
        out = []
        for pos in combinations(range(1, spec.m + 1), i):
            for vals in product(*(_value_choices(spec, p) for p in pos)):
                out.append(tuple(zip(pos, vals)))
        return out
    fld = gflib.field(spec.q)
    if kind == "grassmann":
        return list(gflib.enumerate_rref_matrices(spec.v, i, fld))
    vectors = list(product(range(spec.q), repeat=spec.n))
    out = []
    for dom in gflib.enumerate_rref_matrices(spec.m, i, fld):
        for images in product(vectors, repeat=i):
            out.append((dom, images))
    return out


@lru_cache(maxsize=128)
def _fiber(spec: FamilySpec, i: int) -> tuple[Element, ...]:
    payloads = _fiber_payloads(spec, i)
    payloads.sort()
    return tuple(Element(spec, p) for p in payloads)


def enumerate_fiber(spec: FamilySpec, i: int) -> Iterator[Element]:
    """Every rank-i element exactly once, in canonical (payload) order."""
    if not 0 <= i <= spec.top_rank:
        raise ValueError(f"rank {i} out of range 0..{spec.top_rank}")
    return iter(_fiber(spec, i))


def enumerate_all(spec: FamilySpec) -> Iterator[Element]:
    """Every element of every fiber, by increasing rank."""
    for i in range(spec.top_rank + 1):
        yield from enumerate_fiber(spec, i)


# ---------------------------------------------------------------------------
# codecs


def format_element(x: Element) -> str:
    kind = x.spec.kind
    if x.rank == 0:
        return "-"
    if kind == "johnson":
        return " ".join(str(i) for i in x.payload)
    if kind in _MAP_KINDS:
        return ",".join(f"{p}:{v}" for p, v in x.payload)
    if kind == "grassmann":
        return ";".join(".".join(str(c) for c in row) for row in x.payload)
    dom, images = x.payload
    dom_text = ";".join(".".join(str(c) for c in row) for row in dom)
    img_text = ";".join(".".join(str(c) for c in row) for row in images)
    return f"E={dom_text};f={img_text}"


def _parse_matrix(text: str, width: int, hi: int, what: str) -> tuple:
    rows = []
    for row_text in text.split(";"):
        cells = row_text.split(".")
        if len(cells) != width:
            raise ParseError(f"{what}: expected {width} entries per row, got {row_text!r}")
        row = []
        for cell in cells:
            if not cell.isdigit():
                raise ParseError(f"{what}: bad field element {cell!r}")
            value = int(cell)
            if value >= hi:
                raise ParseError(f"{what}: field element {value} out of range 0..{hi - 1}")
            row.append(value)
        rows.append(tuple(row))
    return tuple(rows)


def _parse_pairs(spec: FamilySpec, text: str) -> tuple:
    kind = spec.kind
    pairs = []
    last_pos = 0
    for item in text.split(","):
        pos_text, sep, val_text = item.partition(":")
        if not sep or not pos_text.isdigit() or not (val_text.isdigit()):
            raise ParseError(f"bad position:value pair {item!r}")
        pos, val = int(pos_text), int(val_text)
        if not 1 <= pos <= spec.m:
            raise ParseError(f"position {pos} out of range 1..{spec.m}")
        if pos <= last_pos:
            raise ParseError("positions must be strictly increasing")
        last_pos = pos
        if kind in ("hamming", "nbjohnson"):
            if not 0 <= val <= spec.n - 1:
                raise ParseError(f"value {val} out of range 0..{spec.n - 1}")
        elif kind == "injection":
            if not 1 <= val <= spec.n:
                raise ParseError(f"value {val} out of range 1..{spec.n}")
        else:
            if not 1 <= val <= spec.m:
                raise ParseError(f"value {val} out of range 1..{spec.m}")
            if val == pos:
                raise ParseError(f"fixed point {pos}:{val} is not allowed")
        pairs.append((pos, val))
    if kind == "injection" and len({v for _, v in pairs}) != len(pairs):
        raise ParseError("duplicate values in an injective map")
    return tuple(pairs)


def parse_element(spec: FamilySpec, text: str) -> Element:
    """Parse a canonical element encoding; non-canonical input is rejected."""
    raw = text.strip()
    if raw == "-":
        return least(spec)
    if not raw:
        raise ParseError("empty element encoding")
    kind = spec.kind
    if kind == "johnson":
        parts = raw.split()
        values = []
        for part in parts:
            if not part.isdigit():
                raise ParseError(f"bad ground-set member {part!r}")
            values.append(int(part))
        if any(not 1 <= x <= spec.v for x in values):
            raise ParseError(f"ground-set member out of range 1..{spec.v}")
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ParseError("members must be strictly increasing")
        payload = tuple(values)
    elif kind in _MAP_KINDS:
        payload = _parse_pairs(spec, raw)
    elif kind == "grassmann":
        fld = gflib.field(spec.q)
        rows = _parse_matrix(raw, spec.v, spec.q, "grassmann matrix")
        if gflib.rref(rows, fld)[0] != rows:
            raise ParseError("matrix is not in reduced row echelon form")
        payload = rows
    else:
        fld = gflib.field(spec.q)
        if not raw.startswith("E=") or ";f=" not in raw:
            raise ParseError("bilinear element must look like E=<matrix>;f=<matrix>")
        dom_text, _, img_text = raw[2:].partition(";f=")
        dom = _parse_matrix(dom_text, spec.m, spec.q, "domain matrix")
        images = _parse_matrix(img_text, spec.n, spec.q, "image matrix")
        if gflib.rref(dom, fld)[0] != dom:
            raise ParseError("domain matrix is not in reduced row echelon form")
        if len(images) != len(dom):
            raise ParseError("domain and image matrices must have the same number of rows")
        payload = (dom, images)
    element = Element(spec, payload)
    if element.rank > spec.top_rank:
        raise ParseError(f"rank {element.rank} exceeds top rank {spec.top_rank}")
    if format_element(element) != raw:
        raise ParseError(f"non-canonical element encoding {text!r}")
    return element
