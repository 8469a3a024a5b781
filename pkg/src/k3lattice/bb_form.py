"""The quadratic form behind a fully symmetrized 2n-fold product.

For a symmetric bilinear form q on a free module, the associated 2n-linear
symmetric map is

    w(a_1, ..., a_2n) = sum over perfect matchings of {1..2n} of the
                        product of q over the matched pairs,

which equals the (1/(n! 2^n))-normalized sum over all permutations.  On the
diagonal, w(a, ..., a) = c_n q(a, a)^n where c_n = (2n)!/(2^n n!) counts the
matchings.  Conversely q can be recovered from w and one nonzero value
q(xi, xi): cross terms from w(xi, ..., xi, a) = c_n q(xi, xi)^{n-1} q(xi, a)
and the xi-orthogonal block from
w(xi, ..., xi, a, b) = c_{n-1} q(a, b) q(xi, xi)^{n-1}.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt

from .errors import DomainError, InconsistencyError


def perfect_matchings(n):
    """(2n)!/(2^n n!), the number of perfect matchings of 2n objects."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return factorial(2 * n) // (2 ** n * factorial(n))


def _pair_value(gram, x, y):
    return sum(Fraction(xi) * sum(Fraction(g) * Fraction(yj)
                                  for g, yj in zip(row, y))
               for xi, row in zip(x, gram))


def _matchings(indices):
    if not indices:
        yield ()
        return
    first = indices[0]
    for i in range(1, len(indices)):
        rest = indices[1:i] + indices[i + 1:]
        for m in _matchings(rest):
            yield ((first, indices[i]),) + m


def symmetrized_power(gram, n, args):
    """Evaluate the symmetrized 2n-fold product of the form ``gram`` on a
    tuple of exactly 2n rational vectors, summing over perfect matchings."""
    if n < 1:
        raise DomainError("n must be >= 1")
    args = [tuple(Fraction(x) for x in v) for v in args]
    if len(args) != 2 * n:
        raise DomainError(f"expected {2 * n} vectors, got {len(args)}")
    k = len(args)
    pair = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            pair[i][j] = pair[j][i] = _pair_value(gram, args[i], args[j])
    total = Fraction(0)
    for matching in _matchings(tuple(range(k))):
        term = Fraction(1)
        for i, j in matching:
            term *= pair[i][j]
        total += term
    return total


@dataclass(frozen=True)
class SymmetrizedPowerForm:
    """A base form together with the degree of its symmetrization."""

    base_form: tuple
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise DomainError("degree must be >= 1")
        g = tuple(tuple(Fraction(x) for x in row) for row in self.base_form)
        if any(len(row) != len(g) for row in g):
            raise DomainError("base form must be square")
        for i in range(len(g)):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise DomainError("base form must be symmetric")
        object.__setattr__(self, "base_form", g)

    def __call__(self, args):
        return symmetrized_power(self.base_form, self.degree, args)


def recover_form(w, n, xi, xi_norm, basis, check="basic"):
    """Recover the unique symmetric form q with q(xi, xi) = xi_norm whose
    symmetrized 2n-fold product is ``w``.

    ``w`` is a callback taking a sequence of 2n rational vectors.  ``basis``
    must be a basis of the ambient space; the returned Gram matrix is q on
    it.  ``check`` is "none", "basic" (default: diagonal and near-diagonal
    samples), or "full" (every multiset of basis vectors); if the samples
    are not reproduced by the recovered form, InconsistencyError is raised.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    xi_norm = Fraction(xi_norm)
    if xi_norm == 0:
        raise InconsistencyError("q(xi, xi) must be nonzero to recover q")
    xi = tuple(Fraction(x) for x in xi)
    basis = [tuple(Fraction(x) for x in v) for v in basis]
    r = len(basis)
    if any(len(b) != r for b in basis) or len(xi) != r:
        raise DomainError("basis must be square and match the vector length")
    c_n = perfect_matchings(n)
    c_prev = perfect_matchings(n - 1)

    if n == 1:
        q = [[w((basis[i], basis[j])) for j in range(r)] for i in range(r)]
        if check != "none" and w((xi, xi)) != xi_norm:
            raise InconsistencyError("w(xi, xi) contradicts the claimed "
                                     "q(xi, xi)")
    else:
        # cross terms q(xi, b_i) from the almost-pure-xi slice
        head = (xi,) * (2 * n - 1)
        cross = [w(head + (b,)) / (c_n * xi_norm ** (n - 1)) for b in basis]
        # xi-orthogonal projections b_i - (q(xi, b_i)/q(xi, xi)) xi
        proj = [tuple(x - (c / xi_norm) * y for x, y in zip(b, xi))
                for b, c in zip(basis, cross)]
        head2 = (xi,) * (2 * n - 2)
        q = [[None] * r for _ in range(r)]
        for i in range(r):
            for j in range(i, r):
                val = w(head2 + (proj[i], proj[j]))
                qa = val / (c_prev * xi_norm ** (n - 1))
                q[i][j] = q[j][i] = qa + cross[i] * cross[j] / xi_norm
    q = [[Fraction(x) for x in row] for row in q]

    if check != "none":
        from . import _intlinalg as la
        cols = [[basis[j][t] for j in range(r)] for t in range(r)]
        try:
            inv = la.rational_inverse(cols)
        except ZeroDivisionError:
            raise DomainError("basis vectors are linearly dependent")
        xi_coords = tuple(sum(inv[i][t] * xi[t] for t in range(r))
                          for i in range(r))
        unit = [tuple(Fraction(int(i == j)) for j in range(r))
                for i in range(r)]
        samples = [((xi,) * (2 * n), (xi_coords,) * (2 * n))]
        if check == "full":
            from itertools import combinations_with_replacement
            for combo in combinations_with_replacement(range(r), 2 * n):
                samples.append((tuple(basis[i] for i in combo),
                                tuple(unit[i] for i in combo)))
        else:
            for i in range(r):
                samples.append(((basis[i],) * (2 * n),
                                (unit[i],) * (2 * n)))
                for j in range(i + 1, r):
                    samples.append(((basis[i],) * (2 * n - 1) + (basis[j],),
                                    (unit[i],) * (2 * n - 1) + (unit[j],)))
        for ambient, coords in samples:
            if w(ambient) != symmetrized_power(q, n, coords):
                raise InconsistencyError(
                    "samples are not generated by any symmetric form with "
                    "the given q(xi, xi)")
    return tuple(tuple(row) for row in q)


@dataclass(frozen=True)
class DegreeRoot:
    """Solution of c_n x^n = d over the positive reals.

    ``root`` is the exact rational solution when one exists (then
    ``interval`` is the degenerate pair (root, root)); otherwise ``root``
    is None and ``interval`` isolates the irrational root.
    """

    root: object
    is_integral: bool
    interval: tuple


def _nth_root_exact(a, n):
    """Integer n-th root of a positive integer, or None."""
    if a <= 0:
        return None
    lo, hi = 0, 1
    while hi ** n < a:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** n < a:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** n == a else None


def degree_to_bb(d, n, interval_width=Fraction(1, 10 ** 6)):
    """The positive root of c_n x^n = d, where c_n counts perfect matchings.

    Converts the top self-intersection degree of a polarization into its
    Beauville-Bogomolov norm.  Exact when the root is rational; otherwise
    returns an isolating interval of at most the requested width.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    d = Fraction(d)
    if d <= 0:
        raise DomainError("degree must be positive")
    target = d / perfect_matchings(n)
    num = _nth_root_exact(target.numerator, n)
    den = _nth_root_exact(target.denominator, n)
    if num is not None and den is not None:
        root = Fraction(num, den)
        return DegreeRoot(root=root, is_integral=root.denominator == 1,
                          interval=(root, root))
    lo = Fraction(0)
    hi = Fraction(max(1, isqrt(target.numerator // target.denominator) + 1))
    while hi ** n < target:
        hi *= 2
    while hi - lo > interval_width:
        mid = (lo + hi) / 2
        if mid ** n < target:
            lo = mid
        else:
            hi = mid
    return DegreeRoot(root=None, is_integral=False, interval=(lo, hi))
