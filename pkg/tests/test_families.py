"""Element models: codecs, meet/join/rank, fibers, and lattice laws.

Exhaustive law checks run over complete small instances of all seven
families; hypothesis drives randomized triples through the same laws on a
mixed element pool.
"""

from __future__ import annotations

from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from ekrlattice import families, gf, parameters
from ekrlattice.errors import FamilyMismatchError, ParseError

SMALL_SPECS = (
    "johnson:v=4,m=2",
    "grassmann:v=4,m=2,q=2",
    "hamming:m=2,n=3",
    "bilinear:m=2,n=1,q=2",
    "injection:m=2,n=3",
    "nbjohnson:m=3,n=2,k=2",
    "signed:m=3,k=2",
)


def small_universes():
    for text in SMALL_SPECS:
        spec = families.parse_family_spec(text)
        yield spec, list(families.enumerate_all(spec))


# ---------------------------------------------------------------------------
# spec parsing


def test_spec_string_round_trip():
    for text in SMALL_SPECS:
        spec = families.parse_family_spec(text)
        assert str(spec) == text
        assert families.parse_family_spec(str(spec)) == spec


@pytest.mark.parametrize(
    "bad",
    [
        "johnson:v=3,m=2",  # v < 2m
        "johnson:v=4",  # missing m
        "johnson:v=4,m=2,q=2",  # stray q
        "hamming:m=2,n=1",  # n < 2
        "injection:m=4,n=3",  # n < m
        "nbjohnson:m=3,n=2,k=3",  # k >= m
        "signed:m=3,k=3",
        "grassmann:v=4,m=2,q=6",  # not a prime power
        "mystery:v=1",
        "johnson",
    ],
)
def test_bad_specs_rejected(bad):
    with pytest.raises(ParseError):
        families.parse_family_spec(bad)


def test_top_rank():
    assert families.parse_family_spec("johnson:v=7,m=3").top_rank == 3
    assert families.parse_family_spec("nbjohnson:m=4,n=3,k=2").top_rank == 2
    assert families.parse_family_spec("signed:m=5,k=2").top_rank == 2


# ---------------------------------------------------------------------------
# rank / meet / leq / join examples


def test_rank_examples():
    js = families.parse_family_spec("johnson:v=6,m=3")
    assert families.parse_element(js, "1 3 5").rank == 3
    gs = families.parse_family_spec("grassmann:v=4,m=2,q=2")
    assert families.least(gs).rank == 0
    hs = families.parse_family_spec("hamming:m=3,n=5")
    assert families.parse_element(hs, "1:4,3:2").rank == 2


def test_meet_examples():
    js = families.parse_family_spec("johnson:v=6,m=3")
    a = families.parse_element(js, "1 2 3")
    b = families.parse_element(js, "2 3 4")
    assert families.format_element(families.meet(a, b)) == "2 3"

    hs = families.parse_family_spec("hamming:m=2,n=5")
    a = families.parse_element(hs, "1:0,2:3")
    b = families.parse_element(hs, "1:0,2:4")
    assert families.format_element(families.meet(a, b)) == "1:0"


def test_grassmann_meet_against_vector_enumeration():
    # derived oracle: the common vectors of the two spans
    from test_gf import brute_span

    gs = families.parse_family_spec("grassmann:v=4,m=2,q=2")
    fld = gf.field(2)
    a = families.parse_element(gs, "1.0.0.0;0.1.0.0")
    b = families.parse_element(gs, "0.1.0.0;0.0.1.0")
    met = families.meet(a, b)
    common = brute_span(a.payload, fld) & brute_span(b.payload, fld)
    assert brute_span(met.payload, fld) == common
    assert families.format_element(met) == "0.1.0.0"


def test_leq_examples():
    js = families.parse_family_spec("johnson:v=6,m=3")
    assert families.leq(families.parse_element(js, "1 2"), families.parse_element(js, "1 2 3"))
    assert not families.leq(families.parse_element(js, "1 4"), families.parse_element(js, "1 2 3"))
    hs = families.parse_family_spec("hamming:m=2,n=2")
    assert not families.leq(
        families.parse_element(hs, "1:0"), families.parse_element(hs, "1:1,2:0")
    )


def test_join_examples():
    js = families.parse_family_spec("johnson:v=6,m=3")
    a = families.parse_element(js, "1 2")
    b = families.parse_element(js, "2 3")
    assert families.format_element(families.join_bounded(a, b)) == "1 2 3"
    assert families.join_bounded(a, families.parse_element(js, "3 4")) is None  # rank 4 > M

    hs = families.parse_family_spec("hamming:m=2,n=2")
    assert families.join_bounded(
        families.parse_element(hs, "1:0"), families.parse_element(hs, "1:1")
    ) is None

    # injective joins must stay injective
    isp = families.parse_family_spec("injection:m=2,n=2")
    a = families.parse_element(isp, "1:1")
    b = families.parse_element(isp, "2:1")
    assert families.join_bounded(a, b) is None


def test_family_mismatch_raises():
    a = families.parse_element(families.parse_family_spec("johnson:v=4,m=2"), "1 2")
    b = families.parse_element(families.parse_family_spec("johnson:v=6,m=2"), "1 2")
    with pytest.raises(FamilyMismatchError):
        families.meet(a, b)
    with pytest.raises(FamilyMismatchError):
        families.leq(a, b)
    with pytest.raises(FamilyMismatchError):
        families.join_bounded(a, b)


# ---------------------------------------------------------------------------
# fibers


def test_fiber_examples_against_direct_listings():
    js = families.parse_family_spec("johnson:v=4,m=2")
    assert len(list(families.enumerate_fiber(js, 2))) == len(list(combinations(range(4), 2)))

    gs = families.parse_family_spec("grassmann:v=4,m=2,q=2")
    # lines of GF(2)^4: nonzero vectors up to scaling, counted directly
    nonzero = [v for v in product(range(2), repeat=4) if any(v)]
    assert len(list(families.enumerate_fiber(gs, 1))) == len(nonzero)

    ss = families.parse_family_spec("signed:m=3,k=2")
    direct = [
        ((p1, v1), (p2, v2))
        for p1, p2 in combinations(range(1, 4), 2)
        for v1 in range(1, 4)
        if v1 != p1
        for v2 in range(1, 4)
        if v2 != p2
    ]
    assert len(direct) == 12
    assert len(list(families.enumerate_fiber(ss, 2))) == 12


def test_fiber_is_sorted_unique_and_counted_by_alpha():
    for spec, _ in small_universes():
        for i in range(spec.top_rank + 1):
            fiber = list(families.enumerate_fiber(spec, i))
            payloads = [e.payload for e in fiber]
            assert payloads == sorted(payloads)
            assert len(set(fiber)) == len(fiber)
            assert len(fiber) == parameters.alpha(spec, 0, i)


def test_fiber_rank_out_of_range():
    spec = families.parse_family_spec("johnson:v=4,m=2")
    with pytest.raises(ValueError):
        list(families.enumerate_fiber(spec, 3))
    with pytest.raises(ValueError):
        list(families.enumerate_fiber(spec, -1))


# ---------------------------------------------------------------------------
# codecs


def test_parse_examples():
    js = families.parse_family_spec("johnson:v=6,m=3")
    assert families.parse_element(js, "1 3 5").payload == (1, 3, 5)
    hs = families.parse_family_spec("hamming:m=3,n=5")
    assert families.parse_element(hs, "1:4,3:2").payload == ((1, 4), (3, 2))


@pytest.mark.parametrize(
    "spec_text,bad",
    [
        ("signed:m=3,k=2", "2:2"),  # fixed point
        ("johnson:v=6,m=3", "3 1"),  # unsorted
        ("johnson:v=6,m=3", "1 1"),  # repeated
        ("johnson:v=6,m=3", "0 1"),  # out of range
        ("johnson:v=6,m=3", "1 2 3 4"),  # rank above M
        ("johnson:v=6,m=3", ""),  # empty is not the least element
        ("hamming:m=2,n=3", "2:0,1:0"),  # positions out of order
        ("hamming:m=2,n=3", "1:3"),  # value out of range
        ("injection:m=3,n=5", "1:2,2:2"),  # duplicate values
        ("grassmann:v=4,m=2,q=2", "0.1.0.0;1.0.0.0"),  # not RREF (row order)
        ("grassmann:v=4,m=2,q=2", "1.1.0.0;0.1.0.0"),  # not reduced above pivot
        ("grassmann:v=4,m=2,q=2", "1.0.0"),  # wrong width
        ("bilinear:m=2,n=2,q=2", "E=1.0;f=1.1;0.0"),  # row count mismatch
        ("bilinear:m=2,n=2,q=2", "1.0;f=1.1"),  # missing E=
        ("johnson:v=6,m=3", "1  2"),  # non-canonical spacing
        ("hamming:m=2,n=3", "1:+2"),  # non-canonical integer
    ],
)
def test_parse_rejects_bad_input(spec_text, bad):
    spec = families.parse_family_spec(spec_text)
    with pytest.raises(ParseError):
        families.parse_element(spec, bad)


def test_codec_round_trip_everywhere():
    for spec, universe in small_universes():
        for element in universe:
            text = families.format_element(element)
            assert families.parse_element(spec, text) == element


def test_codec_handles_multi_digit_field_elements():
    spec = families.parse_family_spec("grassmann:v=2,m=1,q=13")
    fiber = list(families.enumerate_fiber(spec, 1))
    assert len(fiber) == 14  # q + 1 lines in a plane
    assert families.format_element(fiber[-1]) == "1.12"
    for element in fiber:
        assert families.parse_element(spec, families.format_element(element)) == element


def test_least_element_formats_as_dash():
    for spec, _ in small_universes():
        z = families.least(spec)
        assert families.format_element(z) == "-"
        assert families.parse_element(spec, "-") == z
        assert z.rank == 0


# ---------------------------------------------------------------------------
# lattice laws, exhaustive on complete small instances


def test_meet_is_greatest_lower_bound_exhaustive():
    for spec, universe in small_universes():
        for x in universe:
            for y in universe:
                met = families.meet(x, y)
                assert families.leq(met, x) and families.leq(met, y)
                assert met.rank <= min(x.rank, y.rank)
                for z in universe:
                    if families.leq(z, x) and families.leq(z, y):
                        assert families.leq(z, met)


def test_join_rank_identity_exhaustive():
    for spec, universe in small_universes():
        for x in universe:
            for y in universe:
                joined = families.join_bounded(x, y)
                uppers = [z for z in universe if families.leq(x, z) and families.leq(y, z)]
                if joined is None:
                    assert not uppers
                else:
                    met = families.meet(x, y)
                    assert joined.rank == x.rank + y.rank - met.rank
                    assert all(families.leq(joined, z) for z in uppers)
                    assert joined in uppers


def test_leq_agrees_with_meet_definition_exhaustive():
    for spec, universe in small_universes():
        for x in universe:
            for y in universe:
                assert families.leq(x, y) == (families.meet(x, y) == x)


# ---------------------------------------------------------------------------
# lattice laws, randomized


_POOLS = {
    text: list(families.enumerate_all(families.parse_family_spec(text)))
    for text in (
        "johnson:v=6,m=3",
        "hamming:m=3,n=3",
        "grassmann:v=4,m=2,q=2",
        "bilinear:m=2,n=2,q=2",
        "injection:m=2,n=3",
        "nbjohnson:m=3,n=2,k=2",
        "signed:m=3,k=2",
    )
}


@st.composite
def element_triples(draw):
    pool = _POOLS[draw(st.sampled_from(sorted(_POOLS)))]
    return tuple(draw(st.sampled_from(pool)) for _ in range(3))


@settings(deadline=None, max_examples=150)
@given(element_triples())
def test_meet_laws_random(triple):
    x, y, z = triple
    assert families.meet(x, x) == x
    assert families.meet(x, y) == families.meet(y, x)
    assert families.meet(families.meet(x, y), z) == families.meet(x, families.meet(y, z))


@settings(deadline=None, max_examples=150)
@given(element_triples())
def test_meet_bounds_random(triple):
    x, y, _ = triple
    met = families.meet(x, y)
    assert met.rank <= min(x.rank, y.rank)
    assert families.leq(met, x) and families.leq(met, y)


_FUZZ_SPECS = tuple(
    families.parse_family_spec(text)
    for text in ("johnson:v=6,m=3", "hamming:m=3,n=3", "grassmann:v=4,m=2,q=2", "bilinear:m=2,n=2,q=2")
)


@settings(deadline=None, max_examples=300)
@given(st.text(alphabet="0123456789.;:,= Ef-x", max_size=24))
def test_parser_rejects_garbage_cleanly(text):
    # either a ParseError or an element that reproduces the input exactly
    for spec in _FUZZ_SPECS:
        try:
            element = families.parse_element(spec, text)
        except ParseError:
            continue
        assert families.format_element(element) == text.strip()
