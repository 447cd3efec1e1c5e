"""Points of the adic unit disc: evaluation, classification, subsets."""

import random
from fractions import Fraction

import pytest

from adicspec import polys
from adicspec.disc import (
    PointType,
    ball,
    classical,
    classify,
    disc_specializes,
    eval_at,
    gauss_point,
    height1_generization,
    in_rational_subset,
    intersect_rational,
    laurent_cover,
    parse_point,
    parse_rational_subset,
    point_eq,
    point_eq_warns,
    rational_cover,
    rational_subset,
    render_point,
    render_rational_subset,
    type5_above,
    type5_below,
)
from adicspec.errors import (
    ContextMismatch,
    MalformedSubset,
    NotTypeFive,
    NotUnitIdeal,
    ParseError,
)
from adicspec.ordgroup import (
    pos_element,
    radius_above_group,
    radius_below_group,
    radius_element,
)
from adicspec.tate import gauss_norm, parse_series, series
from adicspec.value import nonzero, value_cmp, value_le, value_max, value_mul


def random_series(rng, p, max_deg=8):
    coeffs = {}
    for d in range(rng.randint(0, max_deg) + 1):
        if rng.random() < 0.5:
            num = rng.randint(-40, 40)
            if num:
                coeffs[d] = Fraction(num, rng.randint(1, 40))
    return series(p, coeffs)


def point_family(p=2):
    """A mixed family of points of all four kinds."""
    centers = [Fraction(c) for c in (0, 1, 2, 3)] + [Fraction(1, 3), Fraction(2, 3)]
    radii = [Fraction(1), Fraction(1, p), Fraction(1, p ** 2),
             Fraction(3, 4), Fraction(1, 3)]
    pts = [classical(p, c) for c in centers]
    for c in centers:
        for r in radii:
            pts.append(ball(p, c, r))
            pts.append(type5_below(p, c, r))
            if r < 1:
                pts.append(type5_above(p, c, r))
    return pts


class TestConstruction:
    def test_center_outside_disc(self):
        with pytest.raises(ValueError):
            classical(2, Fraction(1, 2))

    def test_above_radius_one_excluded(self):
        with pytest.raises(ValueError):
            type5_above(2, 0, 1)

    def test_radius_range(self):
        with pytest.raises(ValueError):
            ball(2, 0, 2)


class TestClassification:
    def test_gauss_is_type2(self):
        assert classify(gauss_point(5)) is PointType.TYPE2

    def test_non_power_radius_is_type3(self):
        assert classify(ball(5, 0, Fraction(1, 2))) is PointType.TYPE3

    def test_power_radius_is_type2(self):
        assert classify(ball(5, 0, Fraction(1, 25))) is PointType.TYPE2

    def test_classical_and_type5(self):
        assert classify(classical(5, 0)) is PointType.TYPE1
        assert classify(type5_below(5, 0, 1)) is PointType.TYPE5_BELOW
        assert classify(type5_above(5, 0, Fraction(1, 5))) is PointType.TYPE5_ABOVE


class TestEvaluation:
    def test_gauss_example(self):
        f = parse_series("5*T+1", 5)
        assert eval_at(gauss_point(5), f) == nonzero(pos_element(1))

    def test_classical_example(self):
        f = parse_series("5*T+1", 5)
        assert eval_at(classical(5, 0), f) == nonzero(pos_element(1))

    def test_type5_below_monomial(self):
        G = radius_below_group(Fraction(1))
        assert eval_at(type5_below(5, 0, 1), parse_series("T", 5)) == \
            nonzero(radius_element(G, 1, 1))

    def test_gauss_matches_gauss_norm(self):
        rng = random.Random(3)
        x = gauss_point(5)
        for _ in range(100):
            f = random_series(rng, 5)
            assert eval_at(x, f) == gauss_norm(f)

    def test_classical_is_padic_abs_of_value(self):
        rng = random.Random(5)
        for _ in range(100):
            f = random_series(rng, 2)
            c = Fraction(rng.choice([0, 1, 2, 3, 5]))
            got = eval_at(classical(2, c), f)
            v = polys.poly_eval(f.as_dict(), c)
            if v == 0:
                assert got.is_zero()
            else:
                assert got == nonzero(pos_element(polys.padic_abs(v, 2)))

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            eval_at(gauss_point(5), parse_series("T", 2))

    @pytest.mark.parametrize("x", [
        classical(2, 1), ball(2, 0, Fraction(3, 4)), gauss_point(2),
        type5_below(2, 1, Fraction(1, 2)), type5_above(2, 0, Fraction(1, 4))])
    def test_evaluation_is_a_valuation(self, x):
        from adicspec.tate import series_add, series_mul
        rng = random.Random(7)
        for _ in range(100):
            f, g = random_series(rng, 2), random_series(rng, 2)
            vf, vg = eval_at(x, f), eval_at(x, g)
            assert eval_at(x, series_mul(f, g)) == value_mul(vf, vg)
            s = eval_at(x, series_add(f, g))
            assert value_le(s, value_max(vf, vg))
            if value_cmp(vf, vg) != 0:
                assert s == value_max(vf, vg)

    def test_ball_center_independence(self):
        rng = random.Random(9)
        for _ in range(50):
            f = random_series(rng, 2)
            r = Fraction(1, 2)
            # |0 - 2|_2 = 1/2 <= r: same closed disc
            assert eval_at(ball(2, 0, r), f) == eval_at(ball(2, 2, r), f)

    def test_monotone_in_radius(self):
        rng = random.Random(11)
        radii = [Fraction(1, 8), Fraction(1, 3), Fraction(1, 2), Fraction(1)]
        for _ in range(50):
            f = random_series(rng, 2)
            vals = [eval_at(ball(2, 0, r), f) for r in radii]
            for a, b in zip(vals, vals[1:]):
                assert value_le(a, b)

    def test_specialization_sandwich(self):
        from adicspec.ordgroup import quotient_by_convex, radius_real_subgroup
        rng = random.Random(13)
        c, r = Fraction(1), Fraction(1, 2)
        below, mid, above = (type5_below(2, c, r), ball(2, c, r),
                             type5_above(2, c, r))
        for _ in range(50):
            f = random_series(rng, 2)
            vm = eval_at(mid, f)
            for x in (below, above):
                vx = eval_at(x, f)
                if vx.is_zero():
                    assert vm.is_zero()
                    continue
                G = vx.elt.group
                _, proj = quotient_by_convex(G, radius_real_subgroup(G))
                assert proj(vx.elt).payload == vm.elt.payload


class TestEquality:
    def test_ball_depends_on_disc(self):
        assert point_eq(ball(5, 0, Fraction(1, 5)), ball(5, 5, Fraction(1, 5)))

    def test_below_needs_open_disc(self):
        assert not point_eq(type5_below(5, 0, Fraction(1, 5)),
                            type5_below(5, 5, Fraction(1, 5)))

    def test_reflexive(self):
        for x in point_family():
            assert point_eq(x, x)

    def test_warning_flag(self):
        assert point_eq_warns(type5_below(5, 0, Fraction(1, 2)), gauss_point(5))
        assert not point_eq_warns(type5_below(5, 0, Fraction(1, 5)),
                                  gauss_point(5))


class TestSpecialization:
    def test_type5_below_gauss(self):
        assert disc_specializes(type5_below(5, 0, 1), gauss_point(5))

    def test_classical_not_in_gauss_closure(self):
        assert not disc_specializes(classical(5, 0), gauss_point(5))

    def test_reflexive(self):
        for x in point_family():
            assert disc_specializes(x, x)

    def test_type3_is_closed(self):
        r = Fraction(1, 3)
        assert not disc_specializes(type5_below(2, 0, r), ball(2, 0, r))


class TestHeight1Generization:
    def test_below_gauss(self):
        assert point_eq(height1_generization(type5_below(5, 0, 1)),
                        gauss_point(5))

    def test_above(self):
        assert point_eq(height1_generization(type5_above(5, 0, Fraction(1, 5))),
                        ball(5, 0, Fraction(1, 5)))

    def test_ball_rejected(self):
        with pytest.raises(NotTypeFive):
            height1_generization(gauss_point(5))

    def test_specializes_to_result(self):
        x = type5_above(2, 1, Fraction(1, 2))
        assert disc_specializes(x, height1_generization(x))


class TestRationalSubsets:
    def test_gauss_in_unit_numerator(self):
        R = parse_rational_subset("R(T;1)", 5)
        assert in_rational_subset(gauss_point(5), R)

    def test_denominator_vanishes(self):
        R = parse_rational_subset("R(1;T)", 5)
        assert not in_rational_subset(classical(5, 0), R)
        assert in_rational_subset(gauss_point(5), R)

    def test_malformed(self):
        R = rational_subset((parse_series("T", 5),), parse_series("T^2", 5))
        with pytest.raises(MalformedSubset):
            in_rational_subset(gauss_point(5), R)

    def test_intersection_agrees_pointwise(self):
        p = 2
        R1 = parse_rational_subset("R(T;1)", p)
        R2 = parse_rational_subset("R(1;T)", p)
        R12 = intersect_rational(R1, R2)
        for x in point_family(p)[:50]:
            both = in_rational_subset(x, R1) and in_rational_subset(x, R2)
            assert in_rational_subset(x, R12) == both

    def test_intersection_example_memberships(self):
        R12 = intersect_rational(parse_rational_subset("R(T;1)", 5),
                                 parse_rational_subset("R(1;T)", 5))
        assert in_rational_subset(gauss_point(5), R12)
        assert not in_rational_subset(classical(5, 0), R12)

    def test_round_trip(self):
        R = parse_rational_subset("R(T,5*T^2;T-1)", 5)
        assert parse_rational_subset(render_rational_subset(R), 5) == R


class TestCovers:
    def test_laurent_members(self):
        cov = laurent_cover(parse_series("T", 5))
        assert len(cov.members) == 2
        # the first member {|T| <= 1} is the whole disc
        for x in point_family(5)[:30]:
            assert in_rational_subset(x, cov.members[0])

    def test_laurent_covers_every_point(self):
        cov = laurent_cover(parse_series("5*T+1", 5))
        for x in point_family(5):
            assert any(in_rational_subset(x, m) for m in cov.members)

    def test_rational_cover_memberships(self):
        cov = rational_cover([parse_series("T", 5), parse_series("T-1", 5)])
        x = classical(5, 0)
        assert not in_rational_subset(x, cov.members[0])
        assert in_rational_subset(x, cov.members[1])

    def test_rational_cover_rejects_common_zero(self):
        with pytest.raises(NotUnitIdeal):
            rational_cover([parse_series("T", 5)])


class TestLiterals:
    def test_round_trip(self):
        for x in point_family():
            assert parse_point(render_point(x), 2) == x

    def test_type4_rejected(self):
        with pytest.raises(ParseError, match="type-4"):
            parse_point("deadend:0", 2)

    def test_bad_literals(self):
        for bad in ("ball:0", "classical:x", "orbit:1,2"):
            with pytest.raises(ParseError):
                parse_point(bad, 2)
