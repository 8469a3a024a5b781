"""Arithmetic gadgets attached to moduli of sheaves and cubic fourfolds:
the algebraic Mukai lattice, the primitive cohomology lattice of a cubic
fourfold, Newton polygons and the supersingularity test, and the
Frobenius-pairing compatibility check for K3 crystals over the prime field.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import _intlinalg as la
from .bb_form import degree_to_bb, perfect_matchings
from .errors import DomainError, InconsistencyError, StructureError
from .lattice_core import (QuadLattice, as_vector, direct_sum, make_E8,
                           make_U, orthogonal_complement)
from .local_arith import _val


@dataclass(frozen=True)
class MukaiVector:
    """An element (r, c1, s) of Z + NS + Z."""

    r: int
    c1: tuple
    s: int

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(int(x) for x in self.c1))


def mukai_pairing(v, w, ns):
    """<(a,b,c), (a',b',c')> = b.b' - a c' - a' c, with b.b' in NS."""
    b = as_vector(v.c1, ns.rank)
    bp = as_vector(w.c1, ns.rank)
    return la.vec_mat_vec(b, ns.gram, bp) - v.r * w.s - w.r * v.s


def mukai_lattice(ns):
    """The algebraic Mukai lattice Z + NS + Z with basis order
    (rank class, NS block, point class).

    The rank/point plane is glued in as a sign-reversed hyperbolic plane,
    so that the Hilbert-scheme vector (1, 0, 1-n) has positive square
    2n - 2 for n >= 2.
    """
    n = ns.rank
    g = [[0] * (n + 2) for _ in range(n + 2)]
    g[0][n + 1] = g[n + 1][0] = -1
    for i in range(n):
        for j in range(n):
            g[1 + i][1 + j] = ns.gram[i][j]
    tags = ns.summands if ns.summands is not None else ("?",)
    return QuadLattice(g, summands=("U",) + tags)


def mukai_vector_embed(v, ns):
    """Coordinates of a Mukai vector in the mukai_lattice basis."""
    return (v.r,) + as_vector(v.c1, ns.rank) + (v.s,)


@dataclass(frozen=True)
class MukaiDiscReport:
    """Comparison of p-primary discriminant orders of v-perp in the Mukai
    lattice against the input NS lattice."""

    prime: int
    v_square: int
    perp_rank: int
    perp_det: int
    ns_det: int
    perp_p_exponent: int
    ns_p_exponent: int
    orders_match: bool
    bound_p20_applies: bool
    bound_p20_ok: bool


def mukai_perp_disc_check(v, ns, p):
    """Check that the p-part of disc(v-perp) matches the p-part of disc(NS)
    when p does not divide v^2.

    Also surfaces the p^20 bound on |disc(v-perp)_p| for rank-24 Mukai
    lattices.  A mismatch would contradict the underlying theory and raises
    InconsistencyError.
    """
    vsq = mukai_pairing(v, v, ns)
    if vsq % p == 0:
        raise DomainError("the comparison requires p not dividing v^2")
    big = mukai_lattice(ns)
    vec = mukai_vector_embed(v, ns)
    perp, _ = orthogonal_complement(big, vec)
    pe = _val(perp.det, p) if perp.det % p == 0 else 0
    ne = _val(ns.det, p) if ns.det % p == 0 else 0
    match = pe == ne
    applies = big.rank == 24
    ok = (pe <= 20) if applies else True
    if not match:
        raise InconsistencyError(
            f"disc order mismatch at p={p}: p^{pe} vs p^{ne}")
    return MukaiDiscReport(
        prime=p,
        v_square=vsq,
        perp_rank=perp.rank,
        perp_det=perp.det,
        ns_det=ns.det,
        perp_p_exponent=pe,
        ns_p_exponent=ne,
        orders_match=match,
        bound_p20_applies=applies,
        bound_p20_ok=ok,
    )


def cubic_primitive_lattice():
    """The rank-22 primitive middle-cohomology lattice of a cubic fourfold
    in the period-domain sign convention (signature (2, 20)): two
    hyperbolic planes, two negative definite E8 summands, and the negated
    hexagonal rank-2 form [[-2,-1],[-1,-2]]."""
    a2 = QuadLattice(((-2, -1), (-1, -2)), summands=("-A2",))
    out = direct_sum(make_U(), make_U())
    out = direct_sum(out, make_E8())
    out = direct_sum(out, make_E8())
    return direct_sum(out, a2)


def fermat_transcendental_lattice():
    """Transcendental lattice of the Fermat cubic fourfold over C."""
    return QuadLattice(((-6, -3), (-3, -6)))


class AbelJacobiConstants(NamedTuple):
    """Degrees relating a cubic fourfold to its variety of lines: the cube
    hyperplane degree h^4, the Pluecker polarization's quadratic norm, and
    its top self-intersection g^4."""

    h4: int
    g_norm: int
    g4: int


def abel_jacobi_constants():
    """The frozen degree bookkeeping (h^4, q(g), g^4) = (3, 6, 108), with
    the consistency identities rechecked on every call."""
    c = AbelJacobiConstants(h4=3, g_norm=6, g4=108)
    assert perfect_matchings(2) * c.g_norm ** 2 == c.g4
    assert degree_to_bb(c.g4, 2).root == c.g_norm
    return c


@dataclass(frozen=True)
class NewtonPolygon:
    """Root valuations of a p-adic polynomial with multiplicities,
    ascending."""

    prime: int
    slopes: tuple  # ((Fraction slope, multiplicity), ...)

    @property
    def degree(self):
        return sum(m for _, m in self.slopes)

    @property
    def is_isoclinic(self):
        return len(self.slopes) == 1


def newton_polygon(coeffs, p):
    """Newton polygon of a polynomial from its coefficients (ascending).

    Slopes are the p-adic valuations of the roots, i.e. the negated slopes
    of the lower convex hull of (i, v_p(a_i)).  The constant term must be
    nonzero (a zero root has no finite valuation) and the leading
    coefficient must be nonzero.
    """
    coeffs = [int(c) for c in coeffs]
    if not coeffs or all(c == 0 for c in coeffs):
        raise DomainError("polynomial must be nonzero")
    if coeffs[-1] == 0:
        raise DomainError("leading coefficient must be nonzero")
    if coeffs[0] == 0:
        raise DomainError("zero constant term: polygon has an infinite "
                          "slope, which is rejected")
    if p < 2 or not _is_prime_small(p):
        raise DomainError(f"{p} is not prime")
    pts = [(i, _int_val(c, p)) for i, c in enumerate(coeffs) if c != 0]
    hull = _lower_hull(pts)
    slopes = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        slope = -Fraction(y1 - y0, x1 - x0)
        mult = x1 - x0
        slopes.append((slope, mult))
    slopes.sort(key=lambda sm: sm[0])
    merged = []
    for slope, mult in slopes:
        if merged and merged[-1][0] == slope:
            merged[-1] = (slope, merged[-1][1] + mult)
        else:
            merged.append((slope, mult))
    out = NewtonPolygon(prime=p, slopes=tuple(merged))
    assert out.degree == len(coeffs) - 1
    return out


def _int_val(c, p):
    v = 0
    c = abs(c)
    while c % p == 0:
        c //= p
        v += 1
    return v


def _lower_hull(pts):
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the new chord
            if (y1 - y0) * (pt[0] - x0) >= (pt[1] - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _is_prime_small(p):
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return p >= 2


def is_supersingular_newton(polygon, weight):
    """True iff the polygon is a straight line of slope weight/2."""
    if weight < 1:
        raise DomainError("weight must be positive")
    return (polygon.is_isoclinic
            and polygon.slopes[0][0] == Fraction(weight, 2))


@dataclass(frozen=True)
class FrobeniusPairingInstance:
    """A Frobenius matrix and a pairing over the p-adic integers with the
    base field of p elements (so the Frobenius twist on scalars is
    trivial)."""

    frobenius: tuple
    gram: tuple
    prime: int

    def __post_init__(self):
        f = tuple(tuple(int(x) for x in row) for row in self.frobenius)
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(g)
        if any(len(row) != n for row in g) or len(f) != n or \
                any(len(row) != n for row in f):
            raise DomainError("matrices must be square and of equal size")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise DomainError("pairing must be symmetric")
        if la.det([list(r) for r in g]) == 0:
            raise DomainError("pairing must be nondegenerate")
        object.__setattr__(self, "frobenius", f)
        object.__setattr__(self, "gram", g)


def check_k3_crystal_pairing(inst):
    """True iff F^T G F = p^2 G: the Frobenius scales the pairing by p^2."""
    f = [list(r) for r in inst.frobenius]
    g = [list(r) for r in inst.gram]
    lhs = la.mat_mul(la.transpose(f), la.mat_mul(g, f))
    rhs = [[inst.prime ** 2 * x for x in row] for row in g]
    return lhs == rhs


def hilbert_scheme_vector(n, ns):
    """The Mukai vector (1, 0, 1-n) of the length-n Hilbert scheme."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return MukaiVector(r=1, c1=(0,) * ns.rank, s=1 - n)
