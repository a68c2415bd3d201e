from fractions import Fraction
import random

import mpmath
import pytest

import structla


def det(rows):
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = -d
        d *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return d


def mpf(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def rel(a, b):
    return abs(Fraction(a) - Fraction(b)) / abs(Fraction(b))


def test_round_nearest_ties_to_even():
    assert structla.round_nearest("9/8", 3) == 1
    assert structla.round_nearest("11/8", 3) == Fraction(3, 2)
    assert structla.round_nearest(0.1, 53) == Fraction(0.1)


def test_hilbert_det_matches_gaussian_elimination():
    x, y = structla.hilbert(8)
    exact = det([[Fraction(1, xi + yj) for yj in y] for xi in x])
    assert structla.cauchy_det(x, y) == exact
    assert rel(structla.cauchy_det(x, y, 53), exact) < 2 ** -45


def test_cauchy_lu_reconstructs_permuted_matrix():
    x, y = [Fraction(1, 3), 2, 5], [Fraction(1, 2), 1, 7]
    f = structla.cauchy_lu(x, y, 200)
    n = 3
    for i in range(n):
        for j in range(n):
            s = sum(f["L"][i][k] * f["D"][k] * f["U"][k][j] for k in range(n))
            want = Fraction(1) / (Fraction(x[f["row_perm"][i]]) + Fraction(y[f["col_perm"][j]]))
            assert rel(s, want) < 2 ** -180


def test_hilbert_singular_values_against_mpmath():
    x, y = structla.hilbert(8)
    res = structla.cauchy_svd(x, y, 106, tol=Fraction(1, 2 ** 100))
    mpmath.mp.prec = 400
    h = mpmath.matrix([[mpmath.mpf(1) / (xi + yj) for yj in y] for xi in x])
    ref = sorted(mpmath.svd_r(h, compute_uv=False), reverse=True)
    for got, want in zip(res["sigma"], ref):
        assert abs(mpf(got) - want) / want < mpmath.mpf(2) ** -90


def test_vandermonde_svd_against_mpmath():
    nodes = [Fraction(1, 2), Fraction(-3, 4), 2]
    res = structla.vandermonde_svd(nodes, 80)
    mpmath.mp.prec = 300
    v = mpmath.matrix([[mpf(t) ** j for j in range(3)] for t in nodes])
    ref = sorted(mpmath.svd_r(v, compute_uv=False), reverse=True)
    for got, want in zip(res["sigma"], ref):
        assert abs(mpf(got) - want) / want < mpmath.mpf(2) ** -60


def test_schur_matches_bialternant():
    rng = random.Random(7)
    lam = [3, 1]
    x = [Fraction(rng.randint(0, 9), rng.randint(1, 5)) for _ in range(3)]
    while len(set(x)) < 3:
        x = [Fraction(rng.randint(0, 9), rng.randint(1, 5)) for _ in range(3)]
    n = len(x)
    parts = lam + [0] * (n - len(lam))
    num = det([[xi ** (parts[j] + n - 1 - j) for j in range(n)] for xi in x])
    den = det([[xi ** (n - 1 - j) for j in range(n)] for xi in x])
    assert structla.schur(lam, x) == num / den
    value, entries, bound = structla.schur("(3,1)", x, 64)
    assert entries <= bound
    assert rel(value, num / den) < 2 ** -50


def test_gv_det():
    x, mu = [2, 3, 5], [0, 2, 3]
    exact = det([[Fraction(xi) ** m for m in mu] for xi in x])
    assert structla.gv_det(x, mu) == exact
    assert rel(structla.gv_det(x, mu, 40), exact) < 2 ** -30


def test_acyclic_minor():
    entries = {(0, 0): 3, (0, 1): Fraction(11, 2), (1, 1): Fraction(5, 4), (1, 2): 13, (2, 2): -7}
    assert structla.is_acyclic(3, 3, entries.keys())
    assert not structla.is_acyclic(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    exact = det([[entries.get((i, j), 0) for j in (1, 2)] for i in (0, 1)])
    assert structla.acyclic_minor(3, 3, entries, [0, 1], [1, 2]) == exact
    assert rel(structla.acyclic_minor(3, 3, entries, [0, 1], [1, 2], 24), exact) < 2 ** -20


def test_eval_expr_and_programs():
    v, cost = structla.eval_expr("(x0 - x1)^1 * (x0 + x1)^1", ["1.000001", 1], 53)
    exact = structla.eval_expr("(x0 - x1)^1 * (x0 + x1)^1", [Fraction(structla.round_nearest("1.000001", 53)), 1])
    assert rel(v, exact) < 2 ** -50
    assert cost > 0
    prog = "t0 = x0 mul x1\nt1 = t0 mul x2\noutput t1\n"
    assert structla.eval_program(prog, [2, 3, 4]) == 24
    assert structla.admissible_bound(prog, Fraction(1, 4)) == Fraction(9, 16)
    w = structla.adversary("t0 = x0 add x1\noutput t0\n", Fraction(1, 4), budget=500, seed=1)
    assert w["rel_error"] > 0
    assert w["evaluations"] <= 500


def test_errors_are_typed():
    with pytest.raises(structla.PoleError):
        structla.cauchy_det([1, 2], [-1, 4], 53)
    with pytest.raises(structla.ParseError):
        structla.eval_expr("(x0 - x0)", [1])
    assert issubclass(structla.PoleError, structla.DomainError)
    assert issubclass(structla.DomainError, ValueError)
