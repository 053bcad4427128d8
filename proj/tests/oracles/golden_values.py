"""Independent oracles for frozen expected values used by the C++ tests.

Run with `python3 tests/oracles/golden_values.py`. Nothing here shares code
with the library; values printed are copied into the test sources.
"""
import itertools
from functools import lru_cache

import sympy as sp


def cyclotomic_by_division(n):
    x = sp.symbols("x")
    num = sp.Poly(x**n - 1, x)
    for d in sp.divisors(n):
        if d < n:
            q, r = sp.div(num, cyclotomic_by_division(d), x)
            assert r.is_zero
            num = q
    return num


def partitions(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def can_group(fine, coarse):
    # brute force: try every assignment of fine parts to coarse slots
    for assign in itertools.product(range(len(coarse)), repeat=len(fine)):
        sums = [0] * len(coarse)
        for part, slot in zip(fine, assign):
            sums[slot] += part
        if sums == list(coarse):
            return True
    return False


def commutant_dim(blocks, d):
    m = sp.Matrix(d, d, lambda i, j: sp.Symbol(f"m{i}_{j}"))
    eqs = []
    for c in blocks:
        eqs.extend(list(m * c - c * m))
    unknowns = list(m)
    a, _ = sp.linear_eq_to_matrix(eqs, unknowns)
    return d * d - a.rank(), a.nullspace()


def kummer_counts(points):
    labels = range(16)
    out = {}
    for p in range(points // 2 + 1):
        s = points - 2 * p
        cnt = 0
        for combo in itertools.combinations_with_replacement(labels, s):
            acc = 0
            for t in combo:
                acc ^= t
            if acc == 0:
                cnt += 1
        out[p] = cnt
    return out


if __name__ == "__main__":
    for n in (1, 2, 3, 4, 5, 6, 12):
        print("Phi", n, cyclotomic_by_division(n).all_coeffs())
    print("p(k) k=1..12:", [len(list(partitions(k))) for k in range(1, 13)])
    for k in (4, 5):
        ps = list(partitions(k))
        rel = sum(1 for f in ps for c in ps if can_group(f, c))
        print(f"subdivision relation count k={k}:", rel)
    print("can_group((2,2),(3,1))", can_group((2, 2), (3, 1)))

    # standard complex structure on Q^4: e1->e3, e2->e4, e3->-e1, e4->-e2
    j_std = sp.zeros(4, 4)
    j_std[2, 0] = 1
    j_std[3, 1] = 1
    j_std[0, 2] = -1
    j_std[1, 3] = -1
    assert j_std * j_std == -sp.eye(4)
    print("endo_dim standard J:", commutant_dim([j_std], 4)[0])

    # J over Q(alpha), alpha^2 = 2, J = [[0, -A^-1], [A, 0]], A = [[1, alpha], [0, 1]]
    al = sp.sqrt(2)
    a = sp.Matrix([[1, al], [0, 1]])
    j = sp.zeros(4, 4)
    j[0:2, 2:4] = -a.inv()
    j[2:4, 0:2] = a
    assert sp.simplify(j * j + sp.eye(4)) == sp.zeros(4, 4)
    j0 = j.applyfunc(lambda e: sp.expand(e).coeff(al, 0))
    j1 = j.applyfunc(lambda e: sp.expand(e).coeff(al, 1))
    assert sp.simplify(j0 + al * j1 - j) == sp.zeros(4, 4)
    dim, basis = commutant_dim([j0, j1], 4)
    print("endo_dim quadratic J:", dim)
    for v in basis:
        print("  ", list(v))

    for pts in range(2, 9):
        print("kummer n+1 =", pts, kummer_counts(pts))
