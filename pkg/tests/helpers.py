"""Shared oracles and random generators for the test suite.

The oracles here are deliberately independent of the package internals:
the permutation-sum evaluator follows the defining normalized sum over all
orderings, and the box enumerator scans a provably sufficient coordinate
box.
"""

import itertools
from fractions import Fraction
from math import factorial, gcd, isqrt

import k3lattice._intlinalg as la


def pair_value(gram, x, y):
    return sum(Fraction(xi) * sum(Fraction(g) * Fraction(yj)
                                  for g, yj in zip(row, y))
               for xi, row in zip(x, gram))


def perm_symmetrized_power(gram, n, args):
    """(1/(n! 2^n)) * sum over all (2n)! orderings of paired products."""
    k = 2 * n
    pair = [[pair_value(gram, args[i], args[j]) for j in range(k)]
            for i in range(k)]
    total = Fraction(0)
    for sigma in itertools.permutations(range(k)):
        term = Fraction(1)
        for i in range(n):
            term *= pair[sigma[2 * i]][sigma[2 * i + 1]]
        total += term
    return total / (factorial(n) * 2 ** n)


def sufficient_box(gram, m):
    """A coordinate bound B such that every x with x^T gram x = m has
    |x_i| <= B, for positive definite gram: |x_i| <= sqrt(m (gram^-1)_ii)."""
    ginv = la.rational_inverse(gram)
    n = len(gram)
    return 1 + max(isqrt(int(abs(m) * ginv[i][i]) + 1) for i in range(n))


def box_vectors(gram, m, box):
    """All x in the given coordinate box with x^T gram x = m, sorted."""
    n = len(gram)
    out = []
    for x in itertools.product(range(-box, box + 1), repeat=n):
        v = sum(x[i] * gram[i][j] * x[j]
                for i in range(n) for j in range(n))
        if v == m:
            out.append(x)
    return sorted(out)


def random_unimodular(n, rng, steps=10, size=2):
    """Product of random elementary column operations; det is +-1."""
    m = la.identity(n)
    for _ in range(steps):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([x for x in range(-size, size + 1) if x != 0])
        for r in range(n):
            m[r][j] += c * m[r][i]
    if rng.random() < 0.5 and n > 1:
        perm = list(range(n))
        rng.shuffle(perm)
        m = [[m[r][perm[c]] for c in range(n)] for r in range(n)]
    return m


def conjugate_gram(gram, g):
    """g^T gram g."""
    return la.mat_mul(la.transpose(g),
                      la.mat_mul([list(r) for r in gram], g))


def random_even_gram(rng, rank, with_hyperbolic=False, spread=3):
    """A random nondegenerate even Gram matrix of the given rank, built
    from even blocks and a random unimodular change of basis."""
    while True:
        blocks = []
        left = rank
        if with_hyperbolic:
            blocks.append([[0, 1], [1, 0]])
            left -= 2
        while left > 0:
            if left >= 2 and rng.random() < 0.4:
                a, b, c = (rng.randint(-spread, spread) for _ in range(3))
                blocks.append([[2 * a, b], [b, 2 * c]])
                left -= 2
            else:
                blocks.append([[2 * rng.randint(-spread, spread)]])
                left -= 1
        g = [[0] * rank for _ in range(rank)]
        ofs = 0
        for blk in blocks:
            r = len(blk)
            for i in range(r):
                for j in range(r):
                    g[ofs + i][ofs + j] = blk[i][j]
            ofs += r
        if la.det(g) == 0:
            continue
        u = random_unimodular(rank, rng, steps=6, size=1)
        return conjugate_gram(g, u)


def transvection_matrix(gram, e, a):
    """Matrix of x -> x + <x,e> a - <x,a> e - (a^2/2) <x,e> e for an
    isotropic e and a with <a, e> = 0, on an even lattice."""
    n = len(gram)
    ge = la.mat_vec([list(r) for r in gram], list(e))
    ga = la.mat_vec([list(r) for r in gram], list(a))
    asq = sum(a[i] * gram[i][j] * a[j] for i in range(n) for j in range(n))
    esq = sum(e[i] * gram[i][j] * e[j] for i in range(n) for j in range(n))
    assert asq % 2 == 0 and esq == 0
    assert sum(x * y for x, y in zip(ge, a)) == 0, "a must be orthogonal to e"
    q = asq // 2
    t = la.identity(n)
    for r in range(n):
        for c in range(n):
            t[r][c] += a[r] * ge[c] - e[r] * ga[c] - q * e[r] * ge[c]
    return t


def congruence_isometry_instance(rng, extra_rank=2):
    """A random even lattice with a hyperbolic block, a modulus m killing
    its discriminant, and a random isometry congruent to 1 mod m.

    Built from scaled transvections along the hyperbolic block, then
    conjugated by a random unimodular matrix; returns (gram, g, m).
    """
    from k3lattice.disc_form import discriminant_group
    from k3lattice.lattice_core import QuadLattice

    rank = 2 + extra_rank
    while True:
        g0 = [[0] * rank for _ in range(rank)]
        g0[0][1] = g0[1][0] = 1
        for i in range(extra_rank):
            g0[2 + i][2 + i] = 2 * rng.choice([x for x in range(-3, 4)
                                               if x != 0])
        if la.det(g0) == 0:
            continue
        form = discriminant_group(QuadLattice(g0))
        m = 1
        for d in form.invariant_factors:
            m = m * d // gcd(m, d)
        iso = la.identity(rank)
        for _ in range(rng.randint(1, 3)):
            e = [0] * rank
            e[rng.choice([0, 1])] = 1
            a = [0] * rank
            a[rng.randrange(2, rank)] = m * rng.choice([-1, 1])
            if rng.random() < 0.5:
                a[rng.choice([0, 1])] = m * rng.randint(-1, 1)
            # keep <a, e> = 0: a may use e's own index but not its partner
            partner = 1 - e.index(1)
            a[partner] = 0
            iso = la.mat_mul(iso, transvection_matrix(g0, e, a))
        u = random_unimodular(rank, rng, steps=5, size=1)
        uinv = [[int(x) for x in row] for row in la.rational_inverse(u)]
        gram = conjugate_gram(g0, u)
        gmat = la.mat_mul(uinv, la.mat_mul(iso, u))
        return gram, gmat, m


def pointed_isometry_search(gram, v, w, bound=2):
    """Exhaustive search for an isometry of the lattice sending v to w,
    with all image coordinates bounded.  Small ranks only."""
    n = len(gram)
    cols = []
    candidates = [x for x in itertools.product(range(-bound, bound + 1),
                                               repeat=n)]

    def pairing(x, y):
        return sum(x[i] * gram[i][j] * y[j]
                   for i in range(n) for j in range(n))

    def place(i):
        if i == n:
            img = [sum(v[j] * cols[j][t] for j in range(n)) for t in range(n)]
            return img == list(w)
        for cand in candidates:
            if pairing(cand, cand) != gram[i][i]:
                continue
            if any(pairing(cand, cols[j]) != gram[i][j] for j in range(i)):
                continue
            cols.append(cand)
            if place(i + 1):
                return True
            cols.pop()
        return False

    if place(0):
        return [[cols[j][i] for j in range(n)] for i in range(n)]
    return None


def isometry_with_gram_instance(rng, rank=5):
    """A random symmetric nondegenerate gram with a known nontrivial
    isometry, via conjugation of block swaps and transvections."""
    # two copies of one even block admit the swap isometry
    while True:
        half = rank // 2
        blk = random_even_gram(rng, half)
        g0 = [[0] * (2 * half) for _ in range(2 * half)]
        for i in range(half):
            for j in range(half):
                g0[i][j] = blk[i][j]
                g0[half + i][half + j] = blk[i][j]
        if la.det(g0) == 0:
            continue
        swap = [[0] * (2 * half) for _ in range(2 * half)]
        for i in range(half):
            swap[i][half + i] = 1
            swap[half + i][i] = 1
        u = random_unimodular(2 * half, rng, steps=5, size=1)
        uinv = [[int(x) for x in row] for row in la.rational_inverse(u)]
        gram = conjugate_gram(g0, u)
        iso = la.mat_mul(uinv, la.mat_mul(swap, u))
        return gram, iso
