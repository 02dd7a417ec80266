"""Independent reference computations used by the tests.

Nothing here touches the tensor engine: values come from floating-point
evaluation, plain loops over multiplication tables, or direct formulas.
"""

from __future__ import annotations

import cmath
import itertools
from fractions import Fraction

from hopfinv.scalars import CycScalar


def to_complex(x) -> complex:
    if isinstance(x, complex):
        return x
    if isinstance(x, (int, Fraction)):
        return complex(float(x))
    z = cmath.exp(2j * cmath.pi / x.conductor)
    return sum(float(c) * z**k for k, c in enumerate(x.coeffs))


def close(x, y, tol: float = 1e-9) -> bool:
    return abs(to_complex(x) - to_complex(y)) < tol


def word_value(table, inverse, assignment, word) -> int:
    g = None
    for letter in word:
        h = assignment[abs(letter) - 1]
        if letter < 0:
            h = inverse[h]
        g = h if g is None else table[g][h]
    return g


def brute_homs(table, relators, rank: int) -> int:
    """Count assignments of generators to group elements killing every relator."""
    n = len(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    inverse = [next(j for j in range(n) if table[i][j] == e) for i in range(n)]
    count = 0
    for assignment in itertools.product(range(n), repeat=rank):
        if all(not w or word_value(table, inverse, assignment, w) == e for w in relators):
            count += 1
    return count


def squares_to_identity(table) -> int:
    n = len(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    return sum(1 for g in range(n) if table[g][g] == e)


def power(table, g: int, n: int, e: int) -> int:
    acc = e
    for _ in range(n):
        acc = table[acc][g]
    return acc


def classical_fs(table, chi, n: int):
    """(1/|G|) sum_g chi(g^n) for a character given by its values on group elements."""
    size = len(table)
    e = next(i for i in range(size) if all(table[i][j] == j for j in range(size)))
    total = sum((chi[power(table, g, n, e)] for g in range(size)), 0)
    return total * Fraction(1, size)


def conjugation_average(table, x: int) -> dict[int, Fraction]:
    """(1/|G|) sum_h h x h^-1 as a coefficient dict."""
    n = len(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    inverse = [next(j for j in range(n) if table[i][j] == e) for i in range(n)]
    out: dict[int, Fraction] = {}
    for h in range(n):
        y = table[table[h][x]][inverse[h]]
        out[y] = out.get(y, 0) + Fraction(1, n)
    return out


def orbit_count(perms, points) -> int:
    """Number of orbits of a permutation group (given by all its elements) on a set of tuples."""
    seen = set()
    orbits = 0
    for pt in points:
        if pt in seen:
            continue
        orbits += 1
        for p in perms:
            seen.add(tuple(p[x] for x in pt))
    return orbits


def dense_braiding(D, R) -> list[list]:
    """The matrix of v (x) w -> sum r2 w (x) r1 v on D (x) D, built with dense loops."""
    d = D.dim
    mat = [[0] * (d * d) for _ in range(d * d)]
    for p in range(d):
        for q in range(d):
            for (r1, r2), c in R.coeffs.items():
                left = D.multiply(D.basis_vector(r1), D.basis_vector(p))
                right = D.multiply(D.basis_vector(r2), D.basis_vector(q))
                for u in range(d):
                    for v in range(d):
                        if left[u] and right[v]:
                            mat[v * d + u][p * d + q] += c * left[u] * right[v]
    return mat


def cyc(conductor: int, *coeffs) -> CycScalar:
    from hopfinv.scalars import totient

    vals = list(coeffs) + [0] * (totient(conductor) - len(coeffs))
    return CycScalar(conductor, vals)
