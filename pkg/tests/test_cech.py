"""Cech complexes, quasi-isomorphism, Laurent splitting and exactness."""

import random
from fractions import Fraction

import pytest

from adicspec.cech import (
    alternating_subcomplex,
    build_complex,
    check_laurent_exactness,
    cohomology,
    constant_presheaf,
    function_presheaf,
    lambda_map,
    laurent,
    laurent_split,
    parse_presheaf_text,
    presheaf,
    random_presheaf,
    render_presheaf_text,
    tuple_sign,
)
from adicspec.errors import (
    NonFunctorialPresheaf,
    ParseError,
    TruncationTooSmall,
    ZeroSeries,
)
from adicspec.linalg import identity
from adicspec.tate import parse_series, series


class TestBuildComplex:
    def test_trivial_cover(self):
        P = constant_presheaf(1, 1)
        C = build_complex(P)
        assert C.spaces == (1,)
        assert cohomology(C) == [1]

    def test_connected_two_set(self):
        P = constant_presheaf(2, 1)
        assert cohomology(build_complex(P)) == [1, 0]

    def test_disconnected_two_set(self):
        dims = {frozenset({0}): 1, frozenset({1}): 1, frozenset({0, 1}): 0}
        res = {(frozenset({0}), frozenset({0, 1})): [],
               (frozenset({1}), frozenset({0, 1})): []}
        P = presheaf(2, dims, res)
        assert cohomology(build_complex(P))[0] == 2

    def test_non_functorial_rejected(self):
        dims = {frozenset({0}): 1, frozenset({1}): 1, frozenset({2}): 1,
                frozenset({0, 1}): 1, frozenset({0, 2}): 1,
                frozenset({1, 2}): 1, frozenset({0, 1, 2}): 1}
        res = {}
        for S in list(dims):
            for t in range(3):
                if t not in S:
                    res[(S, S | {t})] = identity(1)
        # break one square: composite 0 -> {0,1} -> {0,1,2} gives 2,
        # while 0 -> {0,2} -> {0,1,2} still gives 1
        res[(frozenset({0, 1}), frozenset({0, 1, 2}))] = [[Fraction(2)]]
        with pytest.raises(NonFunctorialPresheaf):
            presheaf(3, dims, res)


class TestAlternating:
    def test_singleton_cover(self):
        C = alternating_subcomplex(constant_presheaf(1, 2))
        assert C.spaces == (2,)
        assert C.buffer_dim == 0

    def test_three_set_counts(self):
        C = alternating_subcomplex(constant_presheaf(3, 1))
        assert C.spaces == (3, 3, 1)   # C^1 has one block per increasing pair

    def test_sign_of_transposition(self):
        assert tuple_sign((0, 1)) == 1
        assert tuple_sign((1, 0)) == -1
        assert tuple_sign((0, 0)) == 0
        assert tuple_sign((2, 0, 1)) == 1

    def test_quasi_isomorphism_three_sets(self):
        rng = random.Random(5)
        P = random_presheaf(rng, 3)
        assert cohomology(build_complex(P)) == \
            cohomology(alternating_subcomplex(P))

    def test_constant_acyclic(self):
        # every cover of constant coefficients on a connected nerve
        for n in (2, 3):
            for d in (1, 2):
                dims = cohomology(build_complex(constant_presheaf(n, d)))
                assert dims[0] == d
                assert all(x == 0 for x in dims[1:])


class TestFunctionPresheaf:
    def test_dims_are_intersections(self):
        P = function_presheaf(2, [{0, 1}, {1, 2}])
        assert P.dim({0}) == 2 and P.dim({1}) == 2 and P.dim({0, 1}) == 1

    def test_cohomology_counts_components(self):
        # disjoint supports: H^0 sees both pieces
        P = function_presheaf(2, [{0}, {1}])
        assert cohomology(build_complex(P))[0] == 2


class TestPresheafText:
    def test_round_trip(self):
        rng = random.Random(9)
        P = random_presheaf(rng, 2)
        text = render_presheaf_text(P)
        Q = parse_presheaf_text(text)
        assert Q.dims == P.dims
        assert Q.res == P.res

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_presheaf_text("dim 0 1\n")
        with pytest.raises(ParseError):
            parse_presheaf_text("cover 1\ndim 0 1\nres 0 0,1\n")


class TestLaurentSplit:
    def test_example(self):
        L = laurent({1: 1, 0: 2, -1: 3})
        g, h = laurent_split(L)
        assert g == laurent({1: 1, 0: 2})
        assert h == laurent({1: -3})
        assert lambda_map(g, h) == L

    def test_zero(self):
        g, h = laurent_split(laurent({}))
        assert g.is_zero() and h.is_zero()

    def test_negative_power(self):
        g, h = laurent_split(laurent({-2: 5}))
        assert g.is_zero() and h == laurent({2: -5})

    def test_section_property(self):
        rng = random.Random(11)
        for _ in range(50):
            L = laurent({d: rng.randint(-5, 5) for d in range(-6, 7)
                         if rng.random() < 0.5})
            g, h = laurent_split(L)
            assert lambda_map(g, h) == L
            assert all(d >= 0 for d, _ in g.coeffs)
            assert all(d >= 1 for d, _ in h.coeffs)

    def test_diagonal_constants_in_kernel(self):
        for c in (1, Fraction(-3, 7), 5):
            assert lambda_map(laurent({0: c}), laurent({0: c})).is_zero()


class TestLaurentExactness:
    @pytest.mark.parametrize("ftext", ["T", "5*T+1", "T^2-5"])
    def test_standard_instances(self, ftext):
        rep = check_laurent_exactness(parse_series(ftext, 5), 20)
        assert rep.exact
        assert rep.lambda_rank == 41
        assert rep.kernel_dim == 1

    def test_zero_rejected(self):
        with pytest.raises(ZeroSeries):
            check_laurent_exactness(series(5, {}), 20)

    def test_truncation_too_small(self):
        with pytest.raises(TruncationTooSmall):
            check_laurent_exactness(parse_series("T^2-5", 5), 3)

    def test_report_renders(self):
        rep = check_laurent_exactness(parse_series("T", 2), 5)
        text = rep.render_text()
        assert "exact: true" in text
        d = rep.as_dict()
        assert d["exact"] is True and d["N"] == 5
