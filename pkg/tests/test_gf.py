"""Field arithmetic and linear algebra, checked against brute-force spans."""

from __future__ import annotations

from itertools import product

import pytest

from ekrlattice import gf


def brute_span(rows, fld):
    """Every vector in the row space, by enumerating all coefficient tuples."""
    if not rows:
        return {tuple()}
    width = len(rows[0])
    out = set()
    for coeffs in product(range(fld.q), repeat=len(rows)):
        vec = [0] * width
        for c, row in zip(coeffs, rows):
            if c:
                vec = [fld.add(x, fld.mul(c, y)) for x, y in zip(vec, row)]
        out.add(tuple(vec))
    return out


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms_exhaustive(q):
    fld = gf.field(q)
    elements = range(q)
    for a in elements:
        assert fld.add(a, 0) == a
        assert fld.mul(a, 1) == a
        assert fld.add(a, fld.neg(a)) == 0
        if a:
            assert fld.mul(a, fld.inv(a)) == 1
    for a in elements:
        for b in elements:
            assert fld.add(a, b) == fld.add(b, a)
            assert fld.mul(a, b) == fld.mul(b, a)
            for c in elements:
                assert fld.add(fld.add(a, b), c) == fld.add(a, fld.add(b, c))
                assert fld.mul(fld.mul(a, b), c) == fld.mul(a, fld.mul(b, c))
                assert fld.mul(a, fld.add(b, c)) == fld.add(fld.mul(a, b), fld.mul(a, c))


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 32, 49, 64])
def test_prime_power_tables_cover_all_units(q):
    fld = gf.field(q)
    assert sorted(fld._exp) == list(range(1, q))


def test_prime_power_detection():
    assert gf.prime_power(8) == (2, 3)
    assert gf.prime_power(49) == (7, 2)
    assert gf.prime_power(12) is None
    assert gf.prime_power(1) is None
    with pytest.raises(ValueError):
        gf.field(6)


def test_unsupported_prime_power():
    with pytest.raises(ValueError):
        gf.field(121)  # 11^2 is beyond the Conway table


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        gf.field(5).inv(0)


@pytest.mark.parametrize("q,width", [(2, 4), (3, 3), (4, 3)])
def test_rref_is_canonical_and_preserves_span(q, width):
    fld = gf.field(q)
    samples = [
        ((1,) + (0,) * (width - 1),),
        tuple(tuple((i + j) % q for j in range(width)) for i in range(2)),
        tuple(tuple((i * j + 1) % q for j in range(width)) for i in range(3)),
    ]
    for rows in samples:
        red, pivots = gf.rref(rows, fld)
        assert gf.rref(red, fld)[0] == red
        assert brute_span(red, fld) == brute_span(rows, fld)
        for row, p in zip(red, pivots):
            assert row[p] == 1
            assert all(other[p] == 0 for other in red if other is not row)


@pytest.mark.parametrize("q", [2, 3])
def test_intersect_matches_brute_span(q):
    fld = gf.field(q)
    width = 4
    vecs = [tuple((i >> j) % q if q == 2 else ((i // q**j) % q) for j in range(width)) for i in range(1, q**width)]
    cases = [
        (vecs[0:2], vecs[1:3]),
        (vecs[0:3], vecs[2:5]),
        (vecs[3:5], vecs[5:8]),
    ]
    for a_rows, b_rows in cases:
        a = gf.rref(a_rows, fld)[0]
        b = gf.rref(b_rows, fld)[0]
        inter = gf.intersect_rowspaces(a, b, width, fld)
        expected = brute_span(a, fld) & brute_span(b, fld)
        assert brute_span(inter, fld) == expected
        total = gf.sum_rowspaces(a, b, fld)
        assert brute_span(total, fld) == {
            tuple(fld.add(x, y) for x, y in zip(u, v))
            for u in brute_span(a, fld)
            for v in brute_span(b, fld)
        }


def test_solve_combination_and_nullspace():
    fld = gf.field(3)
    rows = ((1, 2, 0), (0, 1, 1), (1, 0, 1))  # third = first - 2*second (mod 3)
    target = (2, 2, 1)  # 2 * first + second
    coeffs = gf.solve_combination(rows, target, fld)
    assert coeffs is not None
    combo = [0, 0, 0]
    for c, row in zip(coeffs, rows):
        combo = [fld.add(x, fld.mul(c, y)) for x, y in zip(combo, row)]
    assert tuple(combo) == target
    assert gf.solve_combination(((1, 0, 0),), (0, 1, 0), fld) is None
    null = gf.combination_nullspace(rows, fld)
    assert null, "dependent rows must have a nontrivial combination nullspace"
    for coeffs in null:
        combo = [0, 0, 0]
        for c, row in zip(coeffs, rows):
            combo = [fld.add(x, fld.mul(c, y)) for x, y in zip(combo, row)]
        assert tuple(combo) == (0, 0, 0)


@pytest.mark.parametrize(
    "q,width,r,expected",
    [
        (2, 4, 1, 15),  # lines of GF(2)^4: one per nonzero vector up to scaling
        (2, 4, 2, 35),
        (3, 3, 1, 13),
    ],
)
def test_enumerate_rref_counts_subspaces(q, width, r, expected):
    fld = gf.field(q)
    mats = list(gf.enumerate_rref_matrices(width, r, fld))
    assert len(mats) == len(set(mats)) == expected
    spans = {frozenset(brute_span(m, fld)) for m in mats}
    assert len(spans) == expected
