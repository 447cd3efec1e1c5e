"""Cech cochain complexes over exact rationals.

A finite presheaf is given by explicit data: a cover size n, a rational
vector-space dimension for every nonempty subset of cover indices, and a
restriction matrix for every one-step inclusion of subsets.  From this
the full cochain complex (all index tuples) and the alternating
subcomplex (strictly increasing tuples) are built with exact matrices,
and cohomology dimensions are computed by fraction-free elimination.

The module also carries the concrete Laurent-cover exactness check: for
a nonzero polynomial f the two-set cover {|f| <= 1}, {|f| >= 1} has an
augmented cochain complex whose exactness is verified degree-by-degree
on the polynomial window of degree <= N.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import (
    NonFunctorialPresheaf,
    NotAComplex,
    ParseError,
    TruncationTooSmall,
    ZeroSeries,
)
from .linalg import identity, mat_mul, rank
from .polys import normalize, poly_add, poly_mul, poly_neg
from .tate import TateSeries, render_series


# ---------------------------------------------------------------------------
# finite presheaves
# ---------------------------------------------------------------------------

@dataclass
class FinitePresheaf:
    """Presheaf on a finite cover, given by explicit matrices.

    dims maps every nonempty frozenset of indices S to dim F(U_S); res
    maps every one-step pair (S, S') with S' = S + one index to the
    restriction matrix F(U_S) -> F(U_S'), stored as rows of Fractions.
    """

    n: int
    dims: dict
    res: dict
    _composites: dict = field(default_factory=dict, repr=False)

    def dim(self, S) -> int:
        return self.dims[frozenset(S)]

    def restriction(self, S, Sp):
        """Composite restriction F(U_S) -> F(U_S') for S a subset of S'.

        All one-step chains from S to S' must give the same matrix;
        otherwise the presheaf is not functorial.
        """
        S, Sp = frozenset(S), frozenset(Sp)
        if not S <= Sp:
            raise NonFunctorialPresheaf(f"{set(S)} is not a subset of {set(Sp)}")
        if S == Sp:
            return identity(self.dims[S])
        key = (S, Sp)
        if key in self._composites:
            return self._composites[key]
        result = None
        for t in sorted(Sp - S):
            mid = S | {t}
            cand = mat_mul(self.restriction(mid, Sp), self.res[(S, mid)])
            if result is None:
                result = cand
            elif cand != result:
                raise NonFunctorialPresheaf(
                    f"restrictions {set(S)} -> {set(Sp)} disagree along "
                    f"different chains")
        self._composites[key] = result
        return result


def _subsets(n: int):
    idx = range(n)
    for size in range(1, n + 1):
        for combo in combinations(idx, size):
            yield frozenset(combo)


def presheaf(n: int, dims: dict, res: dict) -> FinitePresheaf:
    """Validate dimensions, matrix shapes and functoriality."""
    dims = {frozenset(k): int(v) for k, v in dims.items()}
    res = {(frozenset(a), frozenset(b)): tuple(tuple(Fraction(x) for x in row)
                                               for row in m)
           for (a, b), m in res.items()}
    for S in _subsets(n):
        if S not in dims:
            raise NonFunctorialPresheaf(f"missing dimension for {set(S)}")
    for S in _subsets(n):
        for t in range(n):
            if t in S:
                continue
            Sp = S | {t}
            if (S, Sp) not in res:
                raise NonFunctorialPresheaf(
                    f"missing restriction {set(S)} -> {set(Sp)}")
            m = res[(S, Sp)]
            if len(m) != dims[Sp] or any(len(row) != dims[S] for row in m):
                raise NonFunctorialPresheaf(
                    f"restriction {set(S)} -> {set(Sp)} has wrong shape")
    P = FinitePresheaf(n, dims, res)
    # force every composite, which checks chain independence
    for S in _subsets(n):
        for Sp in _subsets(n):
            if S < Sp:
                P.restriction(S, Sp)
    return P


def constant_presheaf(n: int, dim: int) -> FinitePresheaf:
    dims = {S: dim for S in _subsets(n)}
    res = {(S, S | {t}): identity(dim)
           for S in _subsets(n) for t in range(n) if t not in S}
    return presheaf(n, dims, res)


def function_presheaf(n: int, point_sets) -> FinitePresheaf:
    """Presheaf of rational-valued functions on abstract point sets.

    U_i carries the functions on point_sets[i]; F(U_S) is the functions
    on the intersection, and restrictions are coordinate projections.
    Always functorial.
    """
    point_sets = [frozenset(s) for s in point_sets]
    carriers = {}
    for S in _subsets(n):
        pts = frozenset.intersection(*(point_sets[i] for i in S))
        carriers[S] = sorted(pts)
    dims = {S: len(carriers[S]) for S in _subsets(n)}
    res = {}
    for S in _subsets(n):
        for t in range(n):
            if t in S:
                continue
            Sp = S | {t}
            res[(S, Sp)] = [[Fraction(int(p == q)) for q in carriers[S]]
                            for p in carriers[Sp]]
    return presheaf(n, dims, res)


def _unimodular_pair(rng, d: int):
    """Random integer matrix with determinant +-1, together with its
    exact inverse, built from elementary row operations."""
    M = identity(d)
    Minv = identity(d)
    for _ in range(2 * d):
        i, j = rng.randrange(d), rng.randrange(d)
        if i == j:
            continue
        c = Fraction(rng.choice([-2, -1, 1, 2]))
        for col in range(d):
            M[i][col] += c * M[j][col]
        for row in range(d):
            Minv[row][j] -= c * Minv[row][i]
    return M, Minv


def random_presheaf(rng, n: int, universe: int = 3) -> FinitePresheaf:
    """Random functorial presheaf: a function presheaf conjugated by
    random unimodular change-of-basis matrices on every subset."""
    point_sets = [frozenset(p for p in range(universe) if rng.random() < 0.7)
                  for _ in range(n)]
    base = function_presheaf(n, point_sets)
    basis = {S: _unimodular_pair(rng, base.dims[S]) for S in _subsets(n)}
    res = {}
    for (S, Sp), m in base.res.items():
        res[(S, Sp)] = mat_mul(basis[Sp][0], mat_mul(m, basis[S][1]))
    return presheaf(n, base.dims, res)


# ---------------------------------------------------------------------------
# cochain complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CechComplex:
    """Spaces C^0..C^qmax (plus the buffer dimension of C^{qmax+1}) and
    differentials d^q: C^q -> C^{q+1} for q = 0..qmax."""

    spaces: tuple          # dims of C^0 .. C^qmax
    buffer_dim: int        # dim of C^{qmax+1}
    diffs: tuple           # d^0 .. d^qmax as dense row matrices


def tuple_sign(t) -> int:
    """0 for tuples with a repeated index, otherwise the parity sign of
    the permutation sorting the tuple."""
    if len(set(t)) < len(t):
        return 0
    inversions = sum(1 for a, b in combinations(t, 2) if a > b)
    return -1 if inversions % 2 else 1


def _degree_tuples(n: int, q: int, alternating: bool):
    if alternating:
        return list(combinations(range(n), q + 1))
    return list(product(range(n), repeat=q + 1))


def _layout(P: FinitePresheaf, tuples):
    offsets = {}
    total = 0
    for t in tuples:
        offsets[t] = total
        total += P.dims[frozenset(t)]
    return offsets, total


def _differential(P: FinitePresheaf, q: int, alternating: bool):
    src = _degree_tuples(P.n, q, alternating)
    dst = _degree_tuples(P.n, q + 1, alternating)
    src_off, src_dim = _layout(P, src)
    dst_off, dst_dim = _layout(P, dst)
    zero = Fraction(0)
    matrix = [[zero] * src_dim for _ in range(dst_dim)]
    for tau in dst:
        S_tau = frozenset(tau)
        d_tau = P.dims[S_tau]
        if d_tau == 0:
            continue
        r0 = dst_off[tau]
        for j in range(len(tau)):
            sigma = tau[:j] + tau[j + 1:]
            d_sigma = P.dims[frozenset(sigma)]
            if d_sigma == 0:
                continue
            sign = Fraction(-1 if j % 2 else 1)
            R = P.restriction(frozenset(sigma), S_tau)
            c0 = src_off[sigma]
            for r in range(d_tau):
                row = matrix[r0 + r]
                Rr = R[r]
                for c in range(d_sigma):
                    row[c0 + c] += sign * Rr[c]
    return matrix, src_dim, dst_dim


def _nonzero_cols(matrix):
    cols = {}
    for r, row in enumerate(matrix):
        for c, v in enumerate(row):
            if v != 0:
                cols.setdefault(c, []).append((r, v))
    return cols


def _compose_is_zero(d_next, d_prev) -> bool:
    by_col_next = _nonzero_cols(d_next)
    by_col_prev = _nonzero_cols(d_prev)
    for c, entries in by_col_prev.items():
        acc = {}
        for k, v in entries:
            for r, w in by_col_next.get(k, ()):
                acc[r] = acc.get(r, Fraction(0)) + w * v
        if any(x != 0 for x in acc.values()):
            return False
    return True


def _build(P: FinitePresheaf, qmax: int, alternating: bool) -> CechComplex:
    spaces = []
    diffs = []
    for q in range(qmax + 1):
        matrix, src_dim, dst_dim = _differential(P, q, alternating)
        spaces.append(src_dim)
        diffs.append(tuple(tuple(row) for row in matrix))
    buffer_dim = dst_dim
    for q in range(qmax):
        if not _compose_is_zero(diffs[q + 1], diffs[q]):
            raise NotAComplex(f"d^{q + 1} o d^{q} != 0")
    return CechComplex(tuple(spaces), buffer_dim, tuple(diffs))


def build_complex(P: FinitePresheaf, qmax: int | None = None) -> CechComplex:
    """Full cochain complex over all index tuples, degrees 0..qmax."""
    if qmax is None:
        qmax = max(P.n - 1, 0)
    return _build(P, qmax, alternating=False)


def alternating_subcomplex(P: FinitePresheaf, qmax: int | None = None) -> CechComplex:
    """Subcomplex on strictly increasing index tuples."""
    if qmax is None:
        qmax = max(P.n - 1, 0)
    return _build(P, qmax, alternating=True)


def cohomology(C: CechComplex):
    """Cohomology dimensions in degrees 0..qmax, exactly."""
    for q in range(len(C.diffs) - 1):
        if not _compose_is_zero(C.diffs[q + 1], C.diffs[q]):
            raise NotAComplex(f"d^{q + 1} o d^{q} != 0")
    ranks = [rank(d) for d in C.diffs]
    out = []
    for q, dim in enumerate(C.spaces):
        r_prev = ranks[q - 1] if q > 0 else 0
        out.append(dim - ranks[q] - r_prev)
    return out


# ---------------------------------------------------------------------------
# presheaf text format
# ---------------------------------------------------------------------------

def _parse_index_set(token: str) -> frozenset:
    try:
        return frozenset(int(part) for part in token.split(","))
    except ValueError as exc:
        raise ParseError(f"bad index set {token!r}") from exc


def parse_presheaf_text(text: str) -> FinitePresheaf:
    """Parse the structured presheaf format:

        cover <n>
        dim <i0,..,ik> <dimension>          one line per nonempty subset
        res <S> <S'>                        one block per one-step pair
        <row of rationals "a/b" separated by spaces>  (dim(S') rows)
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("cover "):
        raise ParseError("presheaf file must start with 'cover <n>'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ParseError("bad cover size") from exc
    dims = {}
    res = {}
    i = 1
    while i < len(lines):
        parts = lines[i].split()
        if parts[0] == "dim":
            if len(parts) != 3:
                raise ParseError(f"bad dim line {lines[i]!r}")
            dims[_parse_index_set(parts[1])] = int(parts[2])
            i += 1
        elif parts[0] == "res":
            if len(parts) != 3:
                raise ParseError(f"bad res line {lines[i]!r}")
            S, Sp = _parse_index_set(parts[1]), _parse_index_set(parts[2])
            if Sp not in dims or S not in dims:
                raise ParseError(f"res before dim for {lines[i]!r}")
            rows = []
            for _ in range(dims[Sp]):
                i += 1
                if i >= len(lines):
                    raise ParseError("truncated restriction matrix")
                try:
                    rows.append([Fraction(tok) for tok in lines[i].split()])
                except ValueError as exc:
                    raise ParseError(f"bad matrix row {lines[i]!r}") from exc
            res[(S, Sp)] = rows
            i += 1
        else:
            raise ParseError(f"unknown directive {parts[0]!r}")
    return presheaf(n, dims, res)


def render_presheaf_text(P: FinitePresheaf) -> str:
    def key(S):
        return (len(S), sorted(S))

    def show(S):
        return ",".join(str(i) for i in sorted(S))

    out = [f"cover {P.n}"]
    for S in sorted(P.dims, key=key):
        out.append(f"dim {show(S)} {P.dims[S]}")
    for (S, Sp) in sorted(P.res, key=lambda k: (key(k[0]), key(k[1]))):
        out.append(f"res {show(S)} {show(Sp)}")
        for row in P.res[(S, Sp)]:
            out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Laurent polynomials in zeta over Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial in zeta with rational coefficients; coeffs is a
    sorted tuple of (degree, value) pairs with no zero values."""

    coeffs: tuple

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs


def laurent(coeffs: dict) -> LaurentPoly:
    items = tuple(sorted((int(d), Fraction(v)) for d, v in coeffs.items()
                         if Fraction(v) != 0))
    return LaurentPoly(items)


def laurent_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out = a.as_dict()
    for d, v in b.coeffs:
        out[d] = out.get(d, Fraction(0)) + v
    return laurent(out)


def laurent_neg(a: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(tuple((d, -v) for d, v in a.coeffs))


def laurent_sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return laurent_add(a, laurent_neg(b))


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out = {}
    for da, va in a.coeffs:
        for db, vb in b.coeffs:
            d = da + db
            out[d] = out.get(d, Fraction(0)) + va * vb
    return laurent(out)


def laurent_invert_variable(a: LaurentPoly) -> LaurentPoly:
    """Substitute zeta -> zeta^{-1}."""
    return laurent({-d: v for d, v in a.coeffs})


def lambda_map(g: LaurentPoly, h: LaurentPoly) -> LaurentPoly:
    """lambda(g, h) = g(zeta) - h(zeta^{-1}) where h lives in eta = 1/zeta."""
    return laurent_sub(g, laurent_invert_variable(h))


def laurent_split(L: LaurentPoly):
    """Split L into (g, h) with lambda(g, h) = L: g is the part of L in
    non-negative degrees and h = -(negative part) re-indexed in eta."""
    g = laurent({d: v for d, v in L.coeffs if d >= 0})
    h = laurent({-d: -v for d, v in L.coeffs if d < 0})
    return g, h


def render_laurent(a: LaurentPoly, var: str = "z") -> str:
    if a.is_zero():
        return "0"
    parts = []
    for d, v in sorted(a.coeffs, reverse=True):
        if d == 0:
            term = str(v)
        else:
            power = var if d == 1 else f"{var}^{d}"
            if v == 1:
                term = power
            elif v == -1:
                term = f"-{power}"
            else:
                term = f"{v}*{power}"
        parts.append(term)
    text = parts[0]
    for term in parts[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text


# ---------------------------------------------------------------------------
# Laurent-cover exactness check
# ---------------------------------------------------------------------------

def _bivariate_mul(a: dict, b: dict) -> dict:
    """Multiply Laurent polynomials in zeta whose coefficients are
    polynomials in T (dicts degree -> Fraction)."""
    out = {}
    for da, pa in a.items():
        for db, pb in b.items():
            d = da + db
            out[d] = poly_add(out.get(d, {}), poly_mul(pa, pb))
    return {d: normalize(p) for d, p in out.items() if normalize(p)}


def _bivariate_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for d, p in b.items():
        out[d] = poly_add(out.get(d, {}), p)
    return {d: p for d, p in ((d, normalize(p)) for d, p in out.items()) if p}


def _bivariate_eq(a: dict, b: dict) -> bool:
    return _bivariate_add(a, {d: poly_neg(p) for d, p in b.items()}) == {}


@dataclass(frozen=True)
class ExactnessReport:
    """Outcome of the three truncated exactness checks for the Laurent
    cover generated by f."""

    f_text: str
    N: int
    prime: int
    domain_dim: int
    codomain_dim: int
    lambda_rank: int
    kernel_dim: int
    kernel_is_diagonal: bool
    surjective: bool
    identities_checked: int
    identities_ok: bool
    preimages_checked: int
    preimages_ok: bool
    notes: tuple

    @property
    def exact(self) -> bool:
        return (self.kernel_is_diagonal and self.surjective
                and self.identities_ok and self.preimages_ok)

    def as_dict(self) -> dict:
        return {
            "f": self.f_text,
            "N": self.N,
            "prime": self.prime,
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
            "lambda_rank": self.lambda_rank,
            "kernel_dim": self.kernel_dim,
            "kernel_is_diagonal": self.kernel_is_diagonal,
            "surjective": self.surjective,
            "identities_checked": self.identities_checked,
            "identities_ok": self.identities_ok,
            "preimages_checked": self.preimages_checked,
            "preimages_ok": self.preimages_ok,
            "exact": self.exact,
            "notes": list(self.notes),
        }

    def render_text(self) -> str:
        lines = [
            f"laurent exactness check for f = {self.f_text} "
            f"(window N = {self.N}, p = {self.prime})",
            f"  lambda: domain {self.domain_dim}, codomain "
            f"{self.codomain_dim}, rank {self.lambda_rank}",
            f"  check 1 (kernel = diagonal constants): "
            f"kernel dim {self.kernel_dim}, "
            f"{'pass' if self.kernel_is_diagonal else 'FAIL'}",
            f"  check 2 (lambda surjective on window): "
            f"{'pass' if self.surjective else 'FAIL'}",
            f"  check 3 (lambda' onto (f-z)-multiples): "
            f"{self.identities_checked} identities, "
            f"{self.preimages_checked} preimages, "
            f"{'pass' if self.identities_ok and self.preimages_ok else 'FAIL'}",
            f"exact: {'true' if self.exact else 'false'}",
        ]
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def check_laurent_exactness(f: TateSeries, N: int) -> ExactnessReport:
    """Verify exactness of the augmented two-row Laurent-cover complex on
    the polynomial window of degree <= N.

    Check 1: ker(lambda) on pairs (g, h) of degree <= N equals the
    diagonal constants, the image of the augmentation a -> (a, a).
    Check 2: lambda maps the window onto the Laurent polynomials with
    degrees in [-N, N].
    Check 3: for every m = 1..N the identity
        (f - z) * z^{-m} = -(1 - f*eta) * eta^{m-1}   (eta = 1/z)
    holds exactly, so every (f - z)-multiple in the window has an
    explicit preimage under the restricted map lambda'; random multiples
    are decomposed and re-checked.
    """
    if f.is_zero():
        raise ZeroSeries("laurent cover needs a nonzero f")
    fpoly = f.as_dict()
    deg_f = max(fpoly)
    if N < deg_f + 2:
        raise TruncationTooSmall(f"need N >= deg(f) + 2 = {deg_f + 2}")

    # lambda over the monomial basis: columns are z^0..z^N then
    # eta^0..eta^N, rows are z^d for d in [-N, N].
    dom = 2 * (N + 1)
    cod = 2 * N + 1
    zero = Fraction(0)
    matrix = [[zero] * dom for _ in range(cod)]
    for j in range(N + 1):
        matrix[N + j][j] = Fraction(1)            # g-part: z^j
        matrix[N - j][N + 1 + j] = Fraction(-1)   # h-part: -z^{-j}
    lam_rank = rank(matrix)
    kernel_dim = dom - lam_rank
    diagonal = [Fraction(0)] * dom
    diagonal[0] = diagonal[N + 1] = Fraction(1)   # (g, h) = (1, 1)
    diag_in_kernel = all(
        sum((row[c] * diagonal[c] for c in range(dom)), Fraction(0)) == 0
        for row in matrix)
    kernel_is_diagonal = kernel_dim == 1 and diag_in_kernel
    surjective = lam_rank == cod

    # check 3: exact identities with polynomial coefficients in T
    f_minus_z = {0: dict(fpoly), 1: {0: Fraction(-1)}}
    one_minus_f_eta = {0: {0: Fraction(1)}, -1: poly_neg(fpoly)}
    identities_ok = True
    for m in range(1, N + 1):
        lhs = _bivariate_mul(f_minus_z, {-m: {0: Fraction(1)}})
        rhs = _bivariate_mul(one_minus_f_eta, {-(m - 1): {0: Fraction(-1)}})
        if not _bivariate_eq(lhs, rhs):
            identities_ok = False
            break

    # random (f - z)-multiples: build the preimage from the splitting and
    # the identities, then re-apply lambda' and compare exactly
    rng = random.Random(20230 + deg_f)
    preimages = 20
    preimages_ok = True
    for _ in range(preimages):
        L = {d: {0: Fraction(rng.randint(-5, 5))}
             for d in range(-(N - 1), N - deg_f)
             if rng.random() < 0.4}
        L = {d: p for d, p in L.items() if normalize(p)}
        target = _bivariate_mul(f_minus_z, L)
        g_part = _bivariate_mul(f_minus_z,
                                {d: p for d, p in L.items() if d >= 0})
        h_part = {}
        for d, p in L.items():
            if d < 0:
                term = _bivariate_mul(one_minus_f_eta, {-(-d - 1): p})
                h_part = _bivariate_add(h_part, term)
        # lambda'(g, h) = g(z) - h(1/z); h_part is already written in z
        applied = _bivariate_add(
            g_part, {d: poly_neg(p) for d, p in h_part.items()})
        if not _bivariate_eq(applied, target):
            preimages_ok = False
            break

    notes = (
        f"window: coefficients truncated at degree {N}; boundary degrees "
        f"outside [-{N}, {N}] are not represented",
        "third-row exactness is certified on the window only; the "
        "completed-ring identification is not part of this finite check",
    )
    return ExactnessReport(
        f_text=render_series(f),
        N=N,
        prime=f.ctx.p,
        domain_dim=dom,
        codomain_dim=cod,
        lambda_rank=lam_rank,
        kernel_dim=kernel_dim,
        kernel_is_diagonal=kernel_is_diagonal,
        surjective=surjective,
        identities_checked=N,
        identities_ok=identities_ok,
        preimages_checked=preimages,
        preimages_ok=preimages_ok,
        notes=notes,
    )
