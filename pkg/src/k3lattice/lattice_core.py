"""Integral quadratic lattices represented by symmetric Gram matrices.

A lattice is Z^rank with the pairing <x, y> = x^T G y for a fixed symmetric
nondegenerate integer matrix G.  An isometry onto another lattice is a
unimodular g with g^T G' g = G.  All arithmetic is exact.
"""

from dataclasses import dataclass, field

from math import gcd

from . import _intlinalg as la
from .errors import DegenerateLatticeError, DomainError, InvalidGramError


def _freeze_gram(gram):
    rows = []
    for row in gram:
        rows.append(tuple(int(x) for x in row))
    return tuple(rows)


@dataclass(frozen=True)
class QuadLattice:
    """A nondegenerate integral quadratic lattice.

    ``summands`` optionally records constructor lineage (tags like "U",
    "E8") so that downstream arguments needing certified hyperbolic-plane
    summands can check for them.  It never affects equality.
    """

    gram: tuple
    summands: tuple = field(default=None, compare=False)

    def __post_init__(self):
        g = _freeze_gram(self.gram)
        n = len(g)
        if n == 0:
            raise InvalidGramError("Gram matrix must be non-empty")
        if any(len(row) != n for row in g):
            raise InvalidGramError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise InvalidGramError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)
        d = la.det(g)
        if d == 0:
            raise DegenerateLatticeError("Gram matrix is degenerate")
        object.__setattr__(self, "_det", d)
        if self.summands is not None:
            object.__setattr__(self, "summands", tuple(self.summands))

    @property
    def rank(self):
        return len(self.gram)

    @property
    def det(self):
        return self._det

    def __repr__(self):
        return f"QuadLattice(rank={self.rank}, det={self.det})"


@dataclass(frozen=True)
class PointedLattice:
    """A lattice together with a distinguished nonzero vector."""

    lattice: QuadLattice
    point: tuple

    def __post_init__(self):
        v = as_vector(self.point, self.lattice.rank)
        if all(x == 0 for x in v):
            raise DomainError("distinguished vector must be nonzero")
        object.__setattr__(self, "point", v)


def as_vector(v, rank=None):
    """Normalize a vector to a tuple of ints, checking length if given."""
    vec = tuple(int(x) for x in v)
    if rank is not None and len(vec) != rank:
        raise DomainError(f"vector has length {len(vec)}, expected {rank}")
    return vec


def make_U():
    """The hyperbolic plane: Gram [[0,1],[1,0]]."""
    return QuadLattice(((0, 1), (1, 0)), summands=("U",))


# Frozen basis for E8: the branch node first, then the arms of length 4, 2
# and 1 of the E8 tree.  This Gram has det 1 and is positive definite; the
# lattice used throughout is its negation.
_E8_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (5, 6), (0, 7))


def make_E8():
    """The negative definite even unimodular lattice of rank 8."""
    g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = 1
    return QuadLattice(g, summands=("E8",))


def make_rank1(m):
    """Rank-one lattice generated by a vector of self-pairing m != 0."""
    m = int(m)
    if m == 0:
        raise DegenerateLatticeError("rank-1 lattice needs m != 0")
    return QuadLattice(((m,),), summands=(f"<{m}>",))


def direct_sum(l1, l2):
    """Orthogonal direct sum, as a block-diagonal Gram."""
    n1, n2 = l1.rank, l2.rank
    g = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            g[i][j] = l1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            g[n1 + i][n1 + j] = l2.gram[i][j]
    tags1 = l1.summands if l1.summands is not None else ("?",)
    tags2 = l2.summands if l2.summands is not None else ("?",)
    return QuadLattice(g, summands=tags1 + tags2)


def k3n_lattice(n):
    """Second-cohomology lattice of a hyperkaehler variety of K3^[n] type:
    U^3 + E8^2 for n = 1, with an extra rank-one summand of norm 2-2n for
    n > 1."""
    if n < 1:
        raise DomainError("n must be >= 1")
    out = make_U()
    for _ in range(2):
        out = direct_sum(out, make_U())
    for _ in range(2):
        out = direct_sum(out, make_E8())
    if n > 1:
        out = direct_sum(out, make_rank1(2 - 2 * n))
    return out


def inner_product(lat, x, y):
    """<x, y> = x^T G y."""
    x = as_vector(x, lat.rank)
    y = as_vector(y, lat.rank)
    return la.vec_mat_vec(x, lat.gram, y)


def is_primitive(lat, v):
    """True iff v is not a nontrivial integer multiple of a lattice vector,
    i.e. gcd of its coordinates is 1."""
    v = as_vector(v, lat.rank)
    if all(x == 0 for x in v):
        raise DomainError("zero vector is neither primitive nor imprimitive")
    return gcd(*v) == 1 if len(v) > 1 else abs(v[0]) == 1


def orthogonal_complement(lat, v):
    """Saturated orthogonal complement of a vector.

    Returns (complement, basis) where basis rows are vectors of ``lat``
    spanning {x : <x, v> = 0} saturatedly, and ``complement`` carries the
    induced Gram.  Raises DegenerateLatticeError if the induced form is
    degenerate (e.g. for isotropic v).
    """
    v = as_vector(v, lat.rank)
    if all(x == 0 for x in v):
        raise DomainError("cannot take the complement of the zero vector")
    constraint = [la.mat_vec(lat.gram, v)]
    kernel = la.integer_kernel(constraint)
    b = kernel  # rows
    g = [[la.vec_mat_vec(bi, lat.gram, bj) for bj in b] for bi in b]
    if la.det(g) == 0:
        raise DegenerateLatticeError(
            "induced form on the complement is degenerate")
    return QuadLattice(g), tuple(tuple(row) for row in b)


def signature(lat):
    """(positive, negative) inertia of the rational quadratic space."""
    pos, neg, zero = la.symmetric_sign_counts(lat.gram)
    assert zero == 0
    return pos, neg


def is_even(lat):
    """True iff every self-pairing is even (equivalently, the diagonal is)."""
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


def is_isometry(lat, g):
    """True iff g^T G g = G for the lattice's Gram G."""
    m = [list(map(int, row)) for row in g]
    if len(m) != lat.rank or any(len(r) != lat.rank for r in m):
        return False
    gt = la.transpose(m)
    return la.mat_mul(gt, la.mat_mul(list(map(list, lat.gram)), m)) == \
        [list(row) for row in lat.gram]


def hyperbolic_summand_count(lat):
    """Number of hyperbolic-plane summands certified by constructor lineage
    (0 when the lineage is unknown)."""
    if lat.summands is None:
        return 0
    return sum(1 for tag in lat.summands if tag == "U")
