"""p-adic invariants of quadratic lattices.

The workhorse is an exact block diagonalization over the local ring of
p-integral rationals: every transformation matrix has p-unit determinant
and p-integral entries, so the result is a valid Jordan-type splitting over
the p-adic integers while all arithmetic stays exact.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import _intlinalg as la
from .disc_form import disc_local_part, discriminant_group, forms_isomorphic
from .errors import DomainError, StructureError, UnverifiedHypothesisWarning
from .lattice_core import (as_vector, hyperbolic_summand_count, inner_product,
                           is_even, is_primitive, orthogonal_complement,
                           signature)


def _val(x, p):
    """p-adic valuation of a nonzero int or Fraction."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _unit_mod_p(x, p):
    """The mod-p residue of x / p^v(x) for a p-integral-unit-part rational."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
    while den % p == 0:
        den //= p
    return num * pow(den, -1, p) % p


def _legendre(u, p):
    """Legendre symbol of a p-unit residue, as +1 or -1."""
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _block_split(gram, p):
    """Split a lattice over the p-adic integers into p^k-scaled unimodular
    blocks.

    Returns a list of (scale, block, basis) where block is a 1x1 or 2x2
    Fraction matrix equal to p^scale times a p-unimodular matrix and basis
    holds the corresponding p-integral basis vectors (ambient coordinates).
    2x2 blocks occur only for p = 2.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        basis[i], basis[j] = basis[j], basis[i]

    def add_to(i, j, f):
        # basis vector b_i += f * b_j, with the symmetric Gram update
        for c in range(n):
            a[i][c] += f * a[j][c]
        for r in range(n):
            a[r][i] += f * a[r][j]
        basis[i] = [x + f * y for x, y in zip(basis[i], basis[j])]

    blocks = []
    k = 0
    while k < n:
        best = None
        for i in range(k, n):
            for j in range(i, n):
                if a[i][j] != 0:
                    v = _val(a[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        assert best is not None, "nondegenerate lattice ran out of pivots"
        v, i, j = best
        diag = next((t for t in range(k, n)
                     if a[t][t] != 0 and _val(a[t][t], p) == v), None)
        if diag is None and p != 2:
            # a[i][i] + 2 a[i][j] + a[j][j] has valuation exactly v
            add_to(i, j, Fraction(1))
            diag = i
        if diag is not None:
            swap(k, diag)
            d = a[k][k]
            for t in range(k + 1, n):
                if a[t][k] != 0:
                    add_to(t, k, -a[t][k] / d)
            blocks.append((v, [[d]], [tuple(basis[k])]))
            k += 1
        else:
            # p = 2 with minimal valuation only off the diagonal; here
            # j > i >= k, so the swaps leave the target entries in place
            swap(k, i)
            swap(k + 1, j)
            b = [[a[k][k], a[k][k + 1]], [a[k + 1][k], a[k + 1][k + 1]]]
            binv = la.rational_inverse(b)
            for t in range(k + 2, n):
                c0 = a[t][k]
                c1 = a[t][k + 1]
                f0 = -(c0 * binv[0][0] + c1 * binv[1][0])
                f1 = -(c0 * binv[0][1] + c1 * binv[1][1])
                if f0 != 0:
                    add_to(t, k, f0)
                if f1 != 0:
                    add_to(t, k + 1, f1)
            blocks.append((v, [[b[0][0], b[0][1]], [b[1][0], b[1][1]]],
                           [tuple(basis[k]), tuple(basis[k + 1])]))
            k += 2
    return blocks


@dataclass(frozen=True)
class JordanDecomposition:
    """Odd-p local invariants: per scale, the rank and the Legendre class
    of the unimodular block determinant."""

    prime: int
    blocks: tuple  # ((scale, rank, det_class), ...) sorted by scale

    @property
    def rank(self):
        return sum(r for _, r, _ in self.blocks)

    def det_valuation(self):
        return sum(k * r for k, r, _ in self.blocks)


def jordan_decomposition(lat, p, precision=None):
    """Jordan decomposition of a lattice at an odd prime.

    ``precision`` (working exponent of p) must be at least v_p(det) + 2;
    the default is v_p(det) + 4.  Internally the arithmetic is exact over
    p-integral rationals, which is sharper than any finite precision.
    """
    if p == 2:
        raise DomainError("p = 2 is not supported by the odd-p theory")
    if p < 3 or not _is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    vdet = _val(lat.det, p)
    if precision is None:
        precision = vdet + 4
    if precision < vdet + 2:
        raise DomainError(
            f"precision {precision} is insufficient (need >= {vdet + 2})")
    scales = {}
    for v, block, _ in _block_split(lat.gram, p):
        assert len(block) == 1
        rank, unit = scales.get(v, (0, 1))
        scales[v] = (rank + 1, unit * _unit_mod_p(block[0][0], p) % p)
    blocks = tuple((v, rank, _legendre(unit, p))
                   for v, (rank, unit) in sorted(scales.items()))
    out = JordanDecomposition(prime=p, blocks=blocks)
    assert out.rank == lat.rank
    assert out.det_valuation() == vdet
    return out


def is_selfdual_at_p(lat, p):
    """True iff the lattice is unimodular over the p-adic integers."""
    return lat.det % p != 0


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _require_hyperbolic_pair(lat, what):
    if hyperbolic_summand_count(lat) < 2:
        warnings.warn(
            f"{what}: two orthogonal hyperbolic-plane summands are not "
            "certified by constructor lineage; trusting the caller",
            UnverifiedHypothesisWarning,
            stacklevel=3,
        )


def pointed_equivalent_at_p(lat, v, w, p):
    """Decide whether two primitive vectors lie in one orbit of the p-adic
    isometry group of a lattice with two hyperbolic-plane summands.

    Under that hypothesis (and evenness when p = 2) the orbit is determined
    by the self-pairing alone, so this reduces to comparing v^2 with w^2.
    """
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    v = as_vector(v, lat.rank)
    w = as_vector(w, lat.rank)
    if not is_primitive(lat, v) or not is_primitive(lat, w):
        raise DomainError("both vectors must be primitive")
    if p == 2 and not is_even(lat):
        raise DomainError("the p = 2 case requires an even lattice")
    _require_hyperbolic_pair(lat, "pointed_equivalent_at_p")
    return inner_product(lat, v, v) == inner_product(lat, w, w)


@dataclass(frozen=True, eq=False)
class PointedInvariants:
    """Complete isomorphism invariants of a pointed lattice whose ambient
    lattice has two hyperbolic-plane summands.

    Equality compares the signature, point norm, complement determinant and
    odd-p Jordan data directly, and the 2-primary discriminant forms of the
    complement up to brute-force isomorphism.
    """

    signature: tuple
    point_norm: int
    complement_det: int
    odd_local: tuple  # ((p, JordanDecomposition), ...) sorted by p
    two_part: object  # FiniteQuadraticForm of the complement at 2

    def __eq__(self, other):
        if not isinstance(other, PointedInvariants):
            return NotImplemented
        return (self.signature == other.signature
                and self.point_norm == other.point_norm
                and self.complement_det == other.complement_det
                and self.odd_local == other.odd_local
                and forms_isomorphic(self.two_part, other.two_part))

    def __hash__(self):
        return hash((self.signature, self.point_norm, self.complement_det))


def pointed_invariants(lat, v):
    """The invariant tuple classifying (lattice, vector) up to isomorphism
    for lattices with two hyperbolic-plane summands."""
    v = as_vector(v, lat.rank)
    if not is_primitive(lat, v):
        raise DomainError("the distinguished vector must be primitive")
    _require_hyperbolic_pair(lat, "pointed_invariants")
    comp, _ = orthogonal_complement(lat, v)
    dets = abs(comp.det)
    odd = []
    for p in _odd_prime_divisors(dets):
        odd.append((p, jordan_decomposition(comp, p)))
    return PointedInvariants(
        signature=signature(lat),
        point_norm=inner_product(lat, v, v),
        complement_det=comp.det,
        odd_local=tuple(odd),
        two_part=disc_local_part(discriminant_group(comp), 2),
    )


def _odd_prime_divisors(n):
    out = []
    n = abs(n)
    while n % 2 == 0:
        n //= 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class ArtinResult:
    """Artin invariant of a supersingular Tate lattice, with a witness
    splitting into a p-unimodular part and a part that is p times a
    p-unimodular lattice."""

    prime: int
    sigma: int
    superspecial: bool
    unscaled_basis: tuple   # basis of the self-dual part (T1)
    scaled_basis: tuple     # basis whose Gram is p * (self-dual) (p T0)
    unscaled_gram: tuple
    scaled_gram: tuple


def artin_invariant(lat, p):
    """Half the p-rank of the discriminant of a lattice whose p-adic
    discriminant is elementary abelian of even rank.

    The lattice must split p-adically as (self-dual) + p*(self-dual); sigma
    is half the rank of the scaled part, and sigma = 1 is flagged
    superspecial.
    """
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    groups = {}
    for v, block, basis in _block_split(lat.gram, p):
        if v not in (0, 1):
            raise StructureError(
                f"lattice has a p^{v}-scaled block at p = {p}; the "
                "discriminant is not elementary p-abelian")
        blk, vecs = groups.setdefault(v, ([], []))
        blk.append(block)
        vecs.append(basis)
    scaled_blocks, scaled_bases = groups.get(1, ([], []))
    unscaled_blocks, unscaled_bases = groups.get(0, ([], []))
    rank1 = sum(len(b) for b in scaled_blocks)
    if rank1 % 2 != 0:
        raise StructureError(
            "p-divisible part of the discriminant has odd rank")
    sigma = rank1 // 2

    def assemble(blocks_list, bases_list, divide):
        vecs = [v for basis in bases_list for v in basis]
        g = [[None] * len(vecs) for _ in range(len(vecs))]
        for i, x in enumerate(vecs):
            for j, y in enumerate(vecs):
                val = la.vec_mat_vec(x, lat.gram, y)
                g[i][j] = Fraction(val) / divide
        return tuple(vecs), tuple(tuple(row) for row in g)

    t1_basis, t1_gram = assemble(unscaled_blocks, unscaled_bases, 1)
    t0_basis, t0_gram = assemble(scaled_blocks, scaled_bases, p)
    for g in (t1_gram, t0_gram):
        if g:
            dv = _val(_fraction_det(g), p)
            assert dv == 0, "witness block is not p-unimodular"
    return ArtinResult(
        prime=p,
        sigma=sigma,
        superspecial=(sigma == 1),
        unscaled_basis=t1_basis,
        scaled_basis=t0_basis,
        unscaled_gram=t1_gram,
        scaled_gram=t0_gram,
    )


def _fraction_det(g):
    n = len(g)
    m = [[Fraction(x) for x in row] for row in g]
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out
