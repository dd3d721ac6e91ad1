"""Exact rational linear algebra and strict feasibility.

Everything here works over :class:`fractions.Fraction` (or plain ``int``).
Nothing is ever rounded: the simplex keeps its tableau as rows of Python
integers, each row rescaled by a positive factor after every pivot, so
ratios and signs are read off exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SENSES",
    "Constraint",
    "FeasibilityResult",
    "SingularMatrixError",
    "as_fraction",
    "format_rational",
    "parse_rational",
    "solve_linear_system",
    "determinant",
    "rank",
    "integer_determinants",
    "strict_feasibility",
]

SENSES = ("<", "<=", ">", ">=", "=")


class SingularMatrixError(ValueError):
    """Raised when a square system has no unique solution."""


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: an exact pipeline should never see one.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(value) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when it is an integer."""
    q = as_fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`. Decimal strings are rejected."""
    s = text.strip()
    if not s or any(ch in s for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


@dataclass(frozen=True)
class Constraint:
    """A single linear condition ``coefficients . x  <sense>  bound``."""

    coefficients: tuple[Fraction, ...]
    sense: str
    bound: Fraction

    def __init__(self, coefficients: Iterable, sense: str, bound) -> None:
        if sense not in SENSES:
            raise ValueError(f"unknown sense {sense!r}")
        object.__setattr__(self, "coefficients", tuple(as_fraction(c) for c in coefficients))
        object.__setattr__(self, "sense", sense)
        object.__setattr__(self, "bound", as_fraction(bound))

    @property
    def is_strict(self) -> bool:
        return self.sense in ("<", ">")

    def evaluate(self, x: Sequence) -> Fraction:
        return sum((c * v for c, v in zip(self.coefficients, x)), Fraction(0))

    def holds(self, x: Sequence) -> bool:
        lhs = self.evaluate(x)
        return {
            "<": lhs < self.bound,
            "<=": lhs <= self.bound,
            ">": lhs > self.bound,
            ">=": lhs >= self.bound,
            "=": lhs == self.bound,
        }[self.sense]

    def closure(self) -> "Constraint":
        """The same condition with a strict sense relaxed to a weak one."""
        sense = {"<": "<=", ">": ">="}.get(self.sense, self.sense)
        return Constraint(self.coefficients, sense, self.bound)


# ---------------------------------------------------------------------------
# dense linear algebra


def _matrix(rows) -> list[list[Fraction]]:
    return [[as_fraction(v) for v in row] for row in rows]


def solve_linear_system(A, b) -> tuple[Fraction, ...]:
    """Solve the square system ``A x = b`` exactly.

    Raises
    ------
    SingularMatrixError
        If ``A`` is singular.
    """
    M = _matrix(A)
    n = len(M)
    if any(len(row) != n for row in M) or len(b) != n:
        raise ValueError("solve_linear_system needs a square system")
    aug = [row + [as_fraction(v)] for row, v in zip(M, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        pivot_row = [v / p for v in aug[col]]
        aug[col] = pivot_row
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], pivot_row)]
    return tuple(row[n] for row in aug)


def _bareiss(M: list[list[int]]) -> int:
    n = len(M)
    M = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1] if n else 1


def determinant(A) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers, so the elimination itself only
    ever divides exactly.
    """
    M = _matrix(A)
    if any(len(row) != len(M) for row in M):
        raise ValueError("determinant needs a square matrix")
    scale = 1
    int_rows = []
    for row in M:
        den = lcm(*(v.denominator for v in row)) if row else 1
        scale *= den
        int_rows.append([int(v * den) for v in row])
    return Fraction(_bareiss(int_rows), scale)


def _rank_int(rows: list[list[int]]) -> int:
    M = [r for r in rows if any(r)]
    if not M:
        return 0
    r = 0
    for col in range(len(M[0])):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        prow = M[r]
        a = prow[col]
        for i in range(r + 1, len(M)):
            f = M[i][col]
            if f:
                row = [a * x - f * y for x, y in zip(M[i], prow)]
                g = gcd(*row)
                M[i] = [v // g for v in row] if g > 1 else row
        r += 1
        if r == len(M):
            break
    return r


def rank(A) -> int:
    """Exact rank of a (possibly rectangular) rational matrix."""
    rows = [list(row) for row in A]
    if all(type(v) is int for row in rows for v in row):
        return _rank_int(rows)
    M = _matrix(rows)
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        for i in range(r + 1, len(M)):
            if M[i][col] != 0:
                f = M[i][col] / p
                M[i] = [v - f * w for v, w in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def integer_determinants(mats) -> list[int]:
    """Determinants of a stack of integer matrices, vectorized.

    Bareiss elimination on ``int64`` arrays. Every intermediate entry is a
    minor of the input, so the Hadamard bound of each matrix controls the
    size of everything computed; if that bound could overflow, the
    matrices are handed to the pure Python routine instead.
    """
    arr = np.asarray(mats, dtype=object)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError("expected an array of shape (N, k, k)")
    N, k, _ = arr.shape
    if N == 0:
        return []
    if k == 0:
        return [1] * N
    row_norms = np.sqrt(np.sum(arr.astype(float) ** 2, axis=2))
    hadamard = float(np.max(np.prod(row_norms, axis=1)))
    if hadamard ** 2 >= 2.0 ** 62:
        return [_bareiss([[int(v) for v in row] for row in m]) for m in arr]
    M = arr.astype(np.int64)
    sign = np.ones(N, dtype=np.int64)
    prev = np.ones(N, dtype=np.int64)
    alive = np.ones(N, dtype=bool)
    idx = np.arange(N)
    for i in range(k):
        nz = M[:, i:, i] != 0
        has = nz.any(axis=1)
        alive &= has
        piv = np.argmax(nz, axis=1) + i
        swap = has & (piv != i)
        if swap.any():
            s = idx[swap]
            top = M[s, i].copy()
            M[s, i] = M[s, piv[swap]]
            M[s, piv[swap]] = top
            sign[swap] *= -1
        p = np.where(has, M[:, i, i], 1)
        if i + 1 < k:
            sub = M[:, i + 1:, i + 1:] * p[:, None, None] - M[:, i + 1:, i:i + 1] * M[:, i:i + 1, i + 1:]
            M[:, i + 1:, i + 1:] = sub // prev[:, None, None]
        prev = p
    dets = np.where(alive, sign * M[:, k - 1, k - 1], 0)
    return [int(v) for v in dets]


# ---------------------------------------------------------------------------
# strict feasibility by an exact two-phase simplex


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of :func:`strict_feasibility`.

    ``margin`` is the optimal slack ``t*`` by which every strict constraint
    can be satisfied simultaneously (capped at 1). ``witness`` satisfies
    every constraint exactly when ``feasible`` is true.
    """

    feasible: bool
    witness: tuple[Fraction, ...] | None
    margin: Fraction | None


class _Tableau:
    """Row-normalized integer simplex tableau.

    Each row stores an equation ``sum_j a_j z_j = b`` with integer entries
    and ``b`` last. Scaling a row by a positive number does not change it,
    so after each pivot rows are divided by their gcd. The basic variable of
    a row always has a positive coefficient in that row.
    """

    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols

    @staticmethod
    def _normalize(row: list[int]) -> list[int]:
        g = gcd(*row)
        if g > 1:
            return [v // g for v in row]
        return row

    def pivot(self, r: int, c: int, objective: list[int] | None = None) -> list[int] | None:
        prow = self.rows[r]
        if prow[c] < 0:
            prow = [-v for v in prow]
        prow = self._normalize(prow)
        self.rows[r] = prow
        a = prow[c]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    self.rows[i] = self._normalize([a * x - f * y for x, y in zip(row, prow)])
        self.basis[r] = c
        if objective is not None:
            objective = self._combine_objective(objective, prow, c)
        return objective

    @staticmethod
    def _combine_objective(obj: list[int], prow: list[int], c: int) -> list[int]:
        # obj layout: coefficients..., rhs, scale
        f = obj[c]
        if not f:
            return obj
        a = prow[c]
        body = [a * x - f * y for x, y in zip(obj[:-1], prow)]
        out = body + [a * obj[-1]]
        return _Tableau._normalize(out)

    def value(self, var: int) -> Fraction:
        for row, b in zip(self.rows, self.basis):
            if b == var:
                return Fraction(row[-1], row[var])
        return Fraction(0)

    def maximize(self, objective: list[int], allowed: set[int]) -> tuple[str, list[int]]:
        """Run Bland's rule from the current feasible basis.

        ``objective`` holds the row ``scale*Z + sum d_j z_j = v`` as
        ``[d_0..d_{n-1}, v, scale]``; basic columns must already be zero.
        """
        order = sorted(allowed)
        while True:
            entering = next((j for j in order if objective[j] < 0), None)
            if entering is None:
                return "optimal", objective
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    if best is None:
                        best = i
                        continue
                    brow = self.rows[best]
                    lhs = row[-1] * brow[entering]
                    rhs = brow[-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return "unbounded", objective
            objective = self.pivot(best, entering, objective)

    def priced(self, costs: dict[int, int]) -> list[int]:
        """Objective row for ``max sum costs[j] z_j`` with basics eliminated."""
        obj = [0] * (self.ncols + 2)
        for j, cj in costs.items():
            obj[j] = -cj
        obj[-1] = 1
        for r, b in enumerate(self.basis):
            obj = self._combine_objective(obj, self.rows[r], b)
        return obj


def _integer_row(coeffs: Sequence[Fraction], bound: Fraction) -> tuple[list[int], int]:
    den = lcm(*(c.denominator for c in coeffs), bound.denominator)
    return [int(c * den) for c in coeffs], int(bound * den)


def strict_feasibility(constraints: Sequence[Constraint], dim: int) -> FeasibilityResult:
    """Decide whether a system of strict and weak linear conditions has a solution.

    The variables ``x`` are free. A margin variable ``0 <= t <= 1`` is added
    to every strict condition (``a.x < b`` becomes ``a.x + t <= b``) and
    ``t`` is maximized; the system is solvable exactly when ``t* > 0``.

    Parameters
    ----------
    constraints : sequence of Constraint
        Conditions on ``x`` in ``Q^dim``.
    dim : int
        Number of variables.

    Returns
    -------
    FeasibilityResult
        With a witness point and the optimal margin when feasible.

    Examples
    --------
    >>> from fractions import Fraction
    >>> r = strict_feasibility([Constraint([1], ">", 0), Constraint([1], "<", 1)], 1)
    >>> r.feasible, 0 < r.witness[0] < 1
    (True, True)
    >>> strict_feasibility([Constraint([1], ">", 0), Constraint([1], "<=", 0)], 1).feasible
    False
    """
    le_rows: list[tuple[list[Fraction], int, Fraction]] = []
    for con in constraints:
        if len(con.coefficients) != dim:
            raise ValueError("constraint dimension mismatch")
        a, b = list(con.coefficients), con.bound
        if con.sense in ("<", "<="):
            le_rows.append((a, 1 if con.sense == "<" else 0, b))
        elif con.sense in (">", ">="):
            le_rows.append(([-v for v in a], 1 if con.sense == ">" else 0, -b))
        else:
            le_rows.append((a, 0, b))
            le_rows.append(([-v for v in a], 0, -b))
    # t <= 1 keeps the margin bounded
    le_rows.append(([Fraction(0)] * dim, 1, Fraction(1)))

    m = len(le_rows)
    t_col = 2 * dim
    slack0 = t_col + 1
    art0 = slack0 + m
    n_art = sum(1 for a, tc, b in le_rows if b < 0)
    ncols = art0 + n_art

    rows: list[list[int]] = []
    basis: list[int] = []
    next_art = art0
    for i, (a, tc, b) in enumerate(le_rows):
        ints, bi = _integer_row(a + [Fraction(tc)], b)
        coeffs, tcoef = ints[:dim], ints[dim]
        row = [0] * (ncols + 1)
        for k, v in enumerate(coeffs):
            row[k] = v
            row[dim + k] = -v
        row[t_col] = tcoef
        row[slack0 + i] = 1
        row[-1] = bi
        if bi < 0:
            row = [-v for v in row]
            row[next_art] = 1
            basis.append(next_art)
            next_art += 1
        else:
            basis.append(slack0 + i)
        rows.append(_Tableau._normalize(row))

    tab = _Tableau(rows, basis, ncols)
    structural = set(range(art0))

    if n_art:
        obj = tab.priced({j: -1 for j in range(art0, ncols)})
        _, obj = tab.maximize(obj, structural | set(range(art0, ncols)))
        if obj[-2] < 0:
            return FeasibilityResult(False, None, None)
        # drive zero-level artificials out of the basis
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= art0:
                row = tab.rows[r]
                c = next((j for j in range(art0) if row[j] != 0), None)
                if c is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, c)
            r += 1
        for row in tab.rows:
            for j in range(art0, ncols):
                row[j] = 0

    obj = tab.priced({t_col: 1})
    status, obj = tab.maximize(obj, structural)
    if status == "unbounded":  # cannot happen with t <= 1, kept for safety
        margin = Fraction(1)
    else:
        margin = Fraction(obj[-2], obj[-1])
    if margin <= 0:
        return FeasibilityResult(False, None, margin)
    witness = tuple(tab.value(k) - tab.value(dim + k) for k in range(dim))
    return FeasibilityResult(True, witness, margin)
