"""Concrete valuations on the supported base rings.

Supported rings: Z, Q, F_p, Q[T], Q(T).  Ring elements are plain Python
data: int, Fraction, int mod p, coefficient dict, or a reduced pair of
coefficient dicts with monic denominator.

Valuation kinds form a closed tagged union so that support, equivalence,
specialization and the horizontal/vertical calculus all have exact
closed-form branches.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key

from . import polys
from .errors import (
    CharacteristicGroupNotContained,
    NotContinuous,
    NotConvexSubgroupOfValueGroup,
    ParseError,
    UnsupportedKind,
    WrongRing,
)
from .ordgroup import (
    ConvexSubgroup,
    Group,
    convex_subgroup_generated,
    group_cmp,
    full_subgroup,
    is_full_subgroup,
    is_trivial_subgroup,
    pos_element,
    pos_rational_group,
    quotient_by_convex,
    subgroup_as_group,
    subgroup_contains,
    subgroup_contains_subgroup,
    trivial_group,
    trivial_subgroup,
    unit,
)
from .tate import PadicContext, TateSeries, _is_prime
from .value import (
    ZERO,
    Value,
    nonzero,
    value_cofinal,
    value_in_subgroup,
    value_le,
)


class RingKind(Enum):
    INTEGERS_Z = "Z"
    RATIONALS_Q = "Q"
    FINITE_FIELD = "F"
    POLY_OVER_Q = "Q[T]"
    RATFUNC_Q = "Q(T)"


@dataclass(frozen=True)
class BaseRing:
    kind: RingKind
    p: int = 0

    def __post_init__(self):
        if self.kind is RingKind.FINITE_FIELD and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


_ORDER_KEY = cmp_to_key(group_cmp)

RING_Z = BaseRing(RingKind.INTEGERS_Z)
RING_Q = BaseRing(RingKind.RATIONALS_Q)
RING_QT = BaseRing(RingKind.POLY_OVER_Q)
RING_QRAT = BaseRing(RingKind.RATFUNC_Q)


def finite_field(p: int) -> BaseRing:
    return BaseRing(RingKind.FINITE_FIELD, p)


def ring_zero(ring: BaseRing):
    k = ring.kind
    if k is RingKind.INTEGERS_Z or k is RingKind.FINITE_FIELD:
        return 0
    if k is RingKind.RATIONALS_Q:
        return Fraction(0)
    if k is RingKind.POLY_OVER_Q:
        return {}
    return ({}, polys.poly_const(1))


def ratfunc(num: dict, den: dict):
    """Reduced representative with monic denominator."""
    if polys.is_zero(den):
        raise ZeroDivisionError("zero denominator")
    if polys.is_zero(num):
        return ({}, polys.poly_const(1))
    g = polys.poly_gcd(num, den)
    num, _ = polys.poly_divmod(num, g)
    den, _ = polys.poly_divmod(den, g)
    lead = den[polys.degree(den)]
    return (polys.poly_scale(num, 1 / lead), polys.poly_scale(den, 1 / lead))


def ring_is_zero(ring: BaseRing, a) -> bool:
    k = ring.kind
    if k is RingKind.FINITE_FIELD:
        return a % ring.p == 0
    if k is RingKind.POLY_OVER_Q:
        return polys.is_zero(a)
    if k is RingKind.RATFUNC_Q:
        return polys.is_zero(a[0])
    return a == 0


def ring_add(ring: BaseRing, a, b):
    k = ring.kind
    if k is RingKind.FINITE_FIELD:
        return (a + b) % ring.p
    if k is RingKind.POLY_OVER_Q:
        return polys.poly_add(a, b)
    if k is RingKind.RATFUNC_Q:
        num = polys.poly_add(polys.poly_mul(a[0], b[1]), polys.poly_mul(b[0], a[1]))
        return ratfunc(num, polys.poly_mul(a[1], b[1]))
    return a + b


def ring_mul(ring: BaseRing, a, b):
    k = ring.kind
    if k is RingKind.FINITE_FIELD:
        return (a * b) % ring.p
    if k is RingKind.POLY_OVER_Q:
        return polys.poly_mul(a, b)
    if k is RingKind.RATFUNC_Q:
        return ratfunc(polys.poly_mul(a[0], b[0]), polys.poly_mul(a[1], b[1]))
    return a * b


def ring_neg(ring: BaseRing, a):
    k = ring.kind
    if k is RingKind.FINITE_FIELD:
        return (-a) % ring.p
    if k is RingKind.POLY_OVER_Q:
        return polys.poly_neg(a)
    if k is RingKind.RATFUNC_Q:
        return (polys.poly_neg(a[0]), a[1])
    return -a


class IdealKind(Enum):
    ZERO_IDEAL = "zero"
    PRIME_P = "prime"
    POLY_GEN = "poly"


@dataclass(frozen=True)
class PrimeIdealDescriptor:
    kind: IdealKind
    p: int = 0
    generator: tuple = ()  # sorted (degree, Fraction) pairs for POLY_GEN

    @staticmethod
    def zero() -> "PrimeIdealDescriptor":
        return PrimeIdealDescriptor(IdealKind.ZERO_IDEAL)

    @staticmethod
    def prime(p: int) -> "PrimeIdealDescriptor":
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return PrimeIdealDescriptor(IdealKind.PRIME_P, p=p)

    @staticmethod
    def poly(generator: dict) -> "PrimeIdealDescriptor":
        gen = polys.poly_monic(generator)
        if polys.degree(gen) < 1:
            raise ValueError("generator must be nonconstant")
        if not _poly_is_irreducible(gen):
            raise ValueError("generator must be irreducible over Q")
        return PrimeIdealDescriptor(IdealKind.POLY_GEN,
                                    generator=tuple(sorted(gen.items())))


def _poly_is_irreducible(f: dict) -> bool:
    """Irreducibility over Q for the small degrees this library builds:
    degree 1 always; degree 2 and 3 iff no rational root; higher degrees
    are rejected (not needed by any supported construction)."""
    d = polys.degree(f)
    if d == 1:
        return True
    if d in (2, 3):
        return not _has_rational_root(f)
    raise ValueError(f"irreducibility test not supported for degree {d}")


def _has_rational_root(f: dict) -> bool:
    # rational root theorem on the integer-cleared polynomial
    from math import gcd, lcm
    mult = lcm(*[c.denominator for c in f.values()])
    g = {d: int(c * mult) for d, c in f.items()}
    d = polys.degree(g)
    a0 = g.get(polys.order(g), 0)
    if polys.order(g) > 0:
        return True  # root 0
    lead = g[d]
    for pnum in _divisors(abs(a0)):
        for pden in _divisors(abs(lead)):
            if gcd(pnum, pden) != 1:
                continue
            for sign in (1, -1):
                if polys.poly_eval(f, Fraction(sign * pnum, pden)) == 0:
                    return True
    return False


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.extend([d, n // d])
        d += 1
    return sorted(set(out))


def ideal_member(ring: BaseRing, P: PrimeIdealDescriptor, a) -> bool:
    if P.kind is IdealKind.ZERO_IDEAL:
        return ring_is_zero(ring, a)
    if P.kind is IdealKind.PRIME_P:
        return a % P.p == 0
    _, r = polys.poly_divmod(a, dict(P.generator))
    return polys.is_zero(r)


@dataclass(frozen=True)
class IdealOfDefinition:
    ring: BaseRing
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise ValueError("ideal needs at least one generator")


class ValuationKind(Enum):
    TRIVIAL = "trivial"
    PADIC = "padic"
    DEGREE = "deg"
    PADIC_COMPOSITE = "padic-composite"
    PADIC_POLY = "padic-poly"


@dataclass(frozen=True)
class Valuation:
    ring: BaseRing
    kind: ValuationKind
    p: int = 0
    rho: Fraction = Fraction(1, 2)
    supp: PrimeIdealDescriptor | None = None
    H: ConvexSubgroup | None = None  # PADIC_COMPOSITE restriction subgroup
    point: object = None             # PADIC_POLY disc point


def trivial_valuation(ring: BaseRing, supp: PrimeIdealDescriptor) -> Valuation:
    return Valuation(ring, ValuationKind.TRIVIAL, supp=supp)


def padic_valuation(ring: BaseRing, p: int, rho=None) -> Valuation:
    if ring.kind not in (RingKind.INTEGERS_Z, RingKind.RATIONALS_Q):
        raise WrongRing("p-adic valuations live on Z or Q here")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    rho = Fraction(rho) if rho is not None else Fraction(1, p)
    if not (0 < rho < 1):
        raise ValueError("rho must lie in (0, 1)")
    return Valuation(ring, ValuationKind.PADIC, p=p, rho=rho)


def degree_valuation(rho) -> Valuation:
    rho = Fraction(rho)
    if not (0 < rho < 1):
        raise ValueError("rho must lie in (0, 1)")
    return Valuation(RING_QRAT, ValuationKind.DEGREE, rho=rho)


def disc_point_valuation(point) -> Valuation:
    return Valuation(RING_QT, ValuationKind.PADIC_POLY, p=point.ctx.p, point=point)


def value_group(v: Valuation) -> Group:
    k = v.kind
    if k is ValuationKind.TRIVIAL:
        return trivial_group()
    if k in (ValuationKind.PADIC, ValuationKind.DEGREE):
        return pos_rational_group()
    if k is ValuationKind.PADIC_COMPOSITE:
        return subgroup_as_group(v.H)
    from . import disc
    return disc.value_group_of(v.point)


def eval_valuation(v: Valuation, a) -> Value:
    """Apply the valuation to a ring element; exact in every branch."""
    k = v.kind
    if k is ValuationKind.TRIVIAL:
        if ideal_member(v.ring, v.supp, a):
            return ZERO
        return nonzero(unit(trivial_group()))
    if k is ValuationKind.PADIC:
        if a == 0:
            return ZERO
        return nonzero(pos_element(v.rho ** polys.padic_exponent(Fraction(a), v.p)))
    if k is ValuationKind.DEGREE:
        num, den = a
        if polys.is_zero(num):
            return ZERO
        return nonzero(pos_element(v.rho ** (polys.degree(den) - polys.degree(num))))
    if k is ValuationKind.PADIC_COMPOSITE:
        if a == 0:
            return ZERO
        base = pos_element(v.rho ** polys.padic_exponent(Fraction(a), v.p))
        if subgroup_contains(v.H, base):
            from .ordgroup import element_into_subgroup
            return nonzero(element_into_subgroup(base, v.H))
        return ZERO
    from . import disc
    return disc.eval_at(v.point, TateSeries.from_dict(PadicContext(v.p), a))


def support(v: Valuation) -> PrimeIdealDescriptor:
    k = v.kind
    if k is ValuationKind.TRIVIAL:
        return v.supp
    if k in (ValuationKind.PADIC, ValuationKind.DEGREE):
        return PrimeIdealDescriptor.zero()
    if k is ValuationKind.PADIC_COMPOSITE:
        if is_trivial_subgroup(v.H):
            return PrimeIdealDescriptor.prime(v.p)
        return PrimeIdealDescriptor.zero()
    from . import disc
    if v.point.kind is disc.PointKind.CLASSICAL:
        gen = polys.poly_sub(polys.poly_x(), polys.poly_const(v.point.center))
        return PrimeIdealDescriptor.poly(gen)
    return PrimeIdealDescriptor.zero()


def normalized(v: Valuation) -> Valuation:
    """Collapse composite kinds onto their closed forms where possible."""
    if v.kind is ValuationKind.PADIC_COMPOSITE:
        if is_full_subgroup(v.H):
            return padic_valuation(v.ring, v.p, v.rho)
        if is_trivial_subgroup(v.H):
            return trivial_valuation(v.ring, PrimeIdealDescriptor.prime(v.p))
    return v


def default_probes(ring: BaseRing):
    k = ring.kind
    if k is RingKind.INTEGERS_Z:
        return list(range(1, 31))
    if k is RingKind.RATIONALS_Q:
        return [Fraction(n, d) for n in range(1, 8) for d in range(1, 8)]
    if k is RingKind.FINITE_FIELD:
        return list(range(1, ring.p))
    if k is RingKind.POLY_OVER_Q:
        return [polys.poly_const(n) for n in (1, 2, 5)] + [
            polys.poly_x(), polys.poly_add(polys.poly_x(), polys.poly_const(1))]
    return [(polys.poly_const(1), polys.poly_const(1)),
            (polys.poly_x(), polys.poly_const(1)),
            (polys.poly_const(1), polys.poly_x())]


def equivalent(v: Valuation, w: Valuation) -> bool:
    """Equivalence of valuations, decided structurally per kind.

    The structural answer is cross-checked on a probe family: equivalent
    valuations must induce the same divisibility order |a| <= |b|.
    """
    if v.ring != w.ring:
        raise WrongRing(f"{v.ring} vs {w.ring}")
    v, w = normalized(v), normalized(w)
    if v.kind != w.kind:
        result = False
    elif v.kind is ValuationKind.TRIVIAL:
        result = v.supp == w.supp
    elif v.kind is ValuationKind.PADIC:
        result = v.p == w.p  # rho is irrelevant to the equivalence class
    elif v.kind is ValuationKind.DEGREE:
        result = True
    elif v.kind is ValuationKind.PADIC_COMPOSITE:
        result = v.p == w.p and v.H == w.H
    else:
        from . import disc
        result = disc.point_eq(v.point, w.point)
    if result:
        probes = default_probes(v.ring)[:10]
        for a in probes:
            for b in probes:
                assert value_le(eval_valuation(v, a), eval_valuation(v, b)) == \
                    value_le(eval_valuation(w, a), eval_valuation(w, b))
    return result


def characteristic_group(v: Valuation) -> ConvexSubgroup:
    """Convex subgroup generated by the image values >= 1."""
    G = value_group(v)
    k = v.kind
    if k is ValuationKind.TRIVIAL:
        return trivial_subgroup(G)
    if k is ValuationKind.PADIC:
        if v.ring.kind is RingKind.INTEGERS_Z:
            return trivial_subgroup(G)  # |n|_p <= 1 on Z
        return full_subgroup(G)         # field case
    if k is ValuationKind.DEGREE:
        return full_subgroup(G)
    if k is ValuationKind.PADIC_COMPOSITE:
        return trivial_subgroup(G)
    # disc points: constants p^-m alone give values > 1 in Q[T]
    return full_subgroup(G)


def vertical_quotient(v: Valuation, H: ConvexSubgroup) -> Valuation:
    """v/H: compose with the order-preserving quotient projection."""
    G = value_group(v)
    if H.group != G:
        raise NotConvexSubgroupOfValueGroup(f"{H.group} vs {G}")
    if is_trivial_subgroup(H):
        return v
    if is_full_subgroup(H):
        return trivial_valuation(v.ring, support(v))
    if v.kind is ValuationKind.PADIC_POLY:
        from . import disc
        from .ordgroup import SubgroupKind
        if H.kind is SubgroupKind.RADIUS_REAL:
            # quotient by the infinitesimal subgroup is the ball point
            return disc_point_valuation(disc.height1_generization(v.point))
    raise UnsupportedKind(f"no closed form for {v.kind} / {H.kind}")


def horizontal_restrict(v: Valuation, H: ConvexSubgroup) -> Valuation:
    """v|_H: keep values inside H, send everything else to zero.

    Requires H convex in the value group and containing the
    characteristic group.
    """
    G = value_group(v)
    if H.group != G:
        raise NotConvexSubgroupOfValueGroup(f"{H.group} vs {G}")
    if not subgroup_contains_subgroup(H, characteristic_group(v)):
        raise CharacteristicGroupNotContained(
            "restriction subgroup must contain the characteristic group")
    if is_full_subgroup(H):
        return v
    if v.kind is ValuationKind.TRIVIAL:
        return v
    if v.kind is ValuationKind.PADIC:
        return normalized(Valuation(v.ring, ValuationKind.PADIC_COMPOSITE,
                                    p=v.p, rho=v.rho, H=H))
    if v.kind is ValuationKind.PADIC_COMPOSITE:
        return normalized(Valuation(v.ring, ValuationKind.PADIC_COMPOSITE,
                                    p=v.p, rho=v.rho, H=H))
    raise UnsupportedKind(f"no closed form for {v.kind}|_{H.kind}")


def c_gamma_I(v: Valuation, I: IdealOfDefinition) -> ConvexSubgroup:
    """The greatest convex subgroup for which all generator values are
    cofinal; equals the characteristic group when a generator value
    already meets it, and the full group when v kills the ideal."""
    if I.ring != v.ring:
        raise WrongRing(f"{I.ring} vs {v.ring}")
    G = value_group(v)
    values = [eval_valuation(v, a) for a in I.generators]
    if all(val.is_zero() for val in values):
        return full_subgroup(G)
    cg = characteristic_group(v)
    if any(value_in_subgroup(val, cg) for val in values):
        return cg
    h = max((val.elt for val in values if not val.is_zero()), key=_ORDER_KEY)
    return convex_subgroup_generated(h)


def retract(v: Valuation, I: IdealOfDefinition) -> Valuation:
    """Restriction onto c_gamma_I(v, I); idempotent, fixes members of
    the retracted spectrum."""
    return horizontal_restrict(v, c_gamma_I(v, I))


def is_continuous(v: Valuation, I: IdealOfDefinition) -> bool:
    """True iff every generator value is cofinal for the value group."""
    if I.ring != v.ring:
        raise WrongRing(f"{I.ring} vs {v.ring}")
    G = value_group(v)
    full = full_subgroup(G)
    return all(value_cofinal(eval_valuation(v, a), full) for a in I.generators)


def is_analytic(v: Valuation, I: IdealOfDefinition) -> bool:
    """True iff the support does not contain the ideal of definition."""
    if not is_continuous(v, I):
        raise NotContinuous("analyticity is defined for continuous valuations")
    return any(not eval_valuation(v, a).is_zero() for a in I.generators)


def in_subbasic(v: Valuation, f, s) -> bool:
    """Membership in the subbasic open {|f| <= |s| != 0}."""
    vs = eval_valuation(v, s)
    if vs.is_zero():
        return False
    return value_le(eval_valuation(v, f), vs)


def specializes(v: Valuation, w: Valuation, probes=None) -> bool:
    """Semi-decision of "v lies in the closure of w".

    Exact closed forms cover the curated models (Spv Z, Spv Q, disc
    points); otherwise every probe pair (f, s) with v in the subbasic
    open {|f| <= |s| != 0} must also contain w.
    """
    if v.ring != w.ring:
        raise WrongRing(f"{v.ring} vs {w.ring}")
    if equivalent(v, w):
        return True
    nv, nw = normalized(v), normalized(w)
    if v.ring.kind in (RingKind.INTEGERS_Z, RingKind.RATIONALS_Q):
        return _spv_z_specializes(nv, nw)
    if nv.kind is ValuationKind.PADIC_POLY and nw.kind is ValuationKind.PADIC_POLY:
        from . import disc
        return disc.disc_specializes(nv.point, nw.point)
    if probes is None:
        probes = [(f, s) for f in default_probes(v.ring)
                  for s in default_probes(v.ring)]
    return all(in_subbasic(w, f, s)
               for f, s in probes if in_subbasic(v, f, s))


def _spv_z_specializes(v: Valuation, w: Valuation) -> bool:
    def shape(u):
        if u.kind is ValuationKind.PADIC:
            return ("padic", u.p)
        if u.supp.kind is IdealKind.ZERO_IDEAL:
            return ("triv0",)
        return ("triv", u.supp.p)
    sv, sw = shape(v), shape(w)
    if sw == ("triv0",):
        return True   # the trivial valuation with zero support is generic
    if sw[0] == "padic":
        return sv == ("triv", sw[1])  # closure of |.|_p is {|.|_p, |.|_0p}
    return False      # the |.|_0p are closed points


# --- literals (CLI interface) ----------------------------------------------

def parse_valuation(text: str, ring: BaseRing) -> Valuation:
    text = text.strip()
    head, _, rest = text.partition(":")
    try:
        if head == "padic":
            return padic_valuation(ring, int(rest))
        if head == "trivial":
            n = int(rest)
            if n == 0:
                return trivial_valuation(ring, PrimeIdealDescriptor.zero())
            return trivial_valuation(ring, PrimeIdealDescriptor.prime(n))
        if head == "deg":
            return degree_valuation(Fraction(rest))
    except ValueError as exc:
        raise ParseError(f"bad valuation literal {text!r}: {exc}") from exc
    raise ParseError(f"unknown valuation literal {text!r}")


def render_valuation(v: Valuation) -> str:
    v = normalized(v)
    if v.kind is ValuationKind.PADIC:
        return f"padic:{v.p}"
    if v.kind is ValuationKind.TRIVIAL:
        if v.supp.kind is IdealKind.ZERO_IDEAL:
            return "trivial:0"
        if v.supp.kind is IdealKind.PRIME_P:
            return f"trivial:{v.supp.p}"
        return "trivial:poly"
    if v.kind is ValuationKind.DEGREE:
        return f"deg:{v.rho}"
    if v.kind is ValuationKind.PADIC_POLY:
        from . import disc
        return f"point:{disc.render_point(v.point)}"
    return f"padic:{v.p}|H"


def parse_ideal(text: str, ring: BaseRing) -> IdealOfDefinition:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(f"bad ideal literal {text!r}")
    gens = []
    for part in text[1:-1].split(","):
        part = part.strip()
        if ring.kind is RingKind.POLY_OVER_Q:
            from .tate import parse_series
            gens.append(parse_series(part, 2).as_dict())
        elif ring.kind is RingKind.RATIONALS_Q:
            gens.append(Fraction(part))
        else:
            gens.append(int(part))
    return IdealOfDefinition(ring, tuple(gens))


def render_ideal_descriptor(P: PrimeIdealDescriptor) -> str:
    if P.kind is IdealKind.ZERO_IDEAL:
        return "(0)"
    if P.kind is IdealKind.PRIME_P:
        return f"({P.p})"
    from .tate import TateSeries, render_series
    f = TateSeries.from_dict(PadicContext(2), dict(P.generator))
    return f"({render_series(f)})"


def render_ideal(I: IdealOfDefinition) -> str:
    parts = []
    for g in I.generators:
        if isinstance(g, dict):
            from .tate import TateSeries, render_series
            parts.append(render_series(TateSeries.from_dict(PadicContext(2), g)))
        else:
            parts.append(str(g))
    return "(" + ",".join(parts) + ")"
