"""Accurate evaluation of structured matrix quantities.

Inputs may be ints, Fractions, decimal strings ("0.1" means exactly 1/10) or
rational strings ("3/7"). Floats are taken at their exact binary value.
Results come back as exact ``Fraction`` values of the computed p-bit numbers.
"""

from fractions import Fraction

from . import _structla
from ._structla import (
    ConvergenceError,
    DivisionByZero,
    DomainError,
    Error,
    ParseError,
    PoleError,
    PreconditionError,
    SingularError,
)

__all__ = [
    "ConvergenceError", "DivisionByZero", "DomainError", "Error", "ParseError",
    "PoleError", "PreconditionError", "SingularError",
    "round_nearest", "cauchy_det", "cauchy_lu", "cauchy_inverse", "cauchy_svd",
    "hilbert", "vandermonde_svd", "schur", "gv_det", "is_acyclic",
    "acyclic_minor", "acyclic_lu", "eval_expr", "eval_program",
    "admissible_bound", "adversary",
]


def _s(v):
    if isinstance(v, float):
        v = Fraction(v)
    return str(v)


def _ss(vs):
    return [_s(v) for v in vs]


def _f(s):
    return Fraction(s)


def _fm(rows):
    return [[Fraction(v) for v in row] for row in rows]


def _ldu(d):
    return {"row_perm": d["row_perm"], "col_perm": d["col_perm"],
            "L": _fm(d["L"]), "D": [_f(v) for v in d["D"]], "U": _fm(d["U"])}


def _svd(d):
    return {"sigma": [_f(v) for v in d["sigma"]], "U": _fm(d["U"]),
            "V": _fm(d["V"]), "sweeps": d["sweeps"]}


def _tol(tol):
    return "" if tol is None else _s(tol)


def hilbert(n):
    """Nodes (x, y) with 1/(x_i + y_j) = 1/(i + j + 1)."""
    return list(range(1, n + 1)), list(range(n))


def round_nearest(value, prec):
    return _f(_structla.round_nearest(_s(value), prec))


def cauchy_det(x, y, prec=None):
    """det[1/(x_i + y_j)]; exact when prec is None."""
    if prec is None:
        return _f(_structla.cauchy_det_exact(_ss(x), _ss(y)))
    return _f(_structla.cauchy_det(_ss(x), _ss(y), prec))


def cauchy_lu(x, y, prec, pivot="complete"):
    return _ldu(_structla.cauchy_lu(_ss(x), _ss(y), pivot, prec))


def cauchy_inverse(x, y, prec):
    return _fm(_structla.cauchy_inverse(_ss(x), _ss(y), prec))


def cauchy_svd(x, y, prec, tol=None):
    """SVD of the Cauchy matrix; tol defaults to 2^(6 - prec)."""
    return _svd(_structla.cauchy_svd(_ss(x), _ss(y), prec, _tol(tol)))


def vandermonde_svd(x, prec, tol=None):
    return _svd(_structla.vandermonde_svd(_ss(x), prec, _tol(tol)))


def schur(lam, x, prec=None):
    """Schur function s_lambda(x). lam is a partition like "(3,1)" or [3, 1].

    With prec, returns (value, memo_entries, memo_bound).
    """
    if not isinstance(lam, str):
        lam = "(" + ",".join(str(p) for p in lam) + ")"
    if prec is None:
        return _f(_structla.schur_exact(lam, _ss(x)))
    v, entries, bound = _structla.schur(lam, _ss(x), prec)
    return _f(v), entries, bound


def gv_det(x, mu, prec=None):
    """det[x_i^mu_j] for increasing nonnegative exponents mu."""
    if prec is None:
        return _f(_structla.gv_det_exact(_ss(x), list(mu)))
    return _f(_structla.gv_det(_ss(x), list(mu), prec))


def is_acyclic(n, m, support):
    return _structla.is_acyclic(n, m, [tuple(p) for p in support])


def _entries(entries):
    if isinstance(entries, dict):
        entries = [(i, j, v) for (i, j), v in entries.items()]
    return [(i, j, _s(v)) for i, j, v in entries]


def acyclic_minor(n, m, entries, rows, cols, prec=None):
    """Minor of a sparse matrix with acyclic support.

    entries is {(i, j): value} or a list of (i, j, value).
    """
    if prec is None:
        return _f(_structla.acyclic_minor_exact(n, m, _entries(entries), list(rows), list(cols)))
    return _f(_structla.acyclic_minor(n, m, _entries(entries), list(rows), list(cols), prec))


def acyclic_lu(n, m, entries, prec):
    return _ldu(_structla.acyclic_lu(n, m, _entries(entries), prec))


def eval_expr(expr, x, prec=None):
    """Factored rational expression like "(x0 - x1)^2 * (x2)^-1".

    With prec, inputs are rounded to prec bits and the result is
    (value, bit_ops).
    """
    if prec is None:
        return _f(_structla.eval_expr_exact(expr, _ss(x)))
    v, cost = _structla.eval_expr(expr, _ss(x), prec)
    return _f(v), cost


def eval_program(prog, x):
    return _f(_structla.eval_program(prog, _ss(x)))


def admissible_bound(prog, eps):
    return _f(_structla.admissible_bound(prog, _s(eps)))


def adversary(prog, eps, budget=10000, seed=0):
    d = _structla.adversary(prog, _s(eps), budget, seed)
    return {"x": [_f(v) for v in d["x"]], "deltas": [_f(v) for v in d["deltas"]],
            "rel_error": _f(d["rel_error"]), "evaluations": d["evaluations"]}
