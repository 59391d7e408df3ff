"""Exact dense rational matrices: rank, canonical kernel basis, rank mod p.

Rows are cleared of denominators one at a time and then eliminated over the
integers without division except by row contents (fraction-free), so entry
growth stays polynomial.  When ``python-flint`` is importable the rank and
echelon computations are delegated to FLINT's fraction-free routines; the
pure-Python path is kept as a reference engine and can be forced with
``SYZ_CERT_LINALG=python`` or :func:`set_engine`.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import BadPrime

try:  # pragma: no cover - exercised implicitly
    import flint as _flint
except ImportError:  # pragma: no cover
    _flint = None

DEFAULT_PRIME = 1_000_003

Number = Union[int, Fraction]

_engine = os.environ.get("SYZ_CERT_LINALG", "flint" if _flint is not None else "python")


def set_engine(name: str) -> str:
    """Select ``"flint"`` or ``"python"``; returns the previous engine."""
    global _engine
    if name not in ("flint", "python"):
        raise ValueError(f"unknown linear algebra engine {name!r}")
    if name == "flint" and _flint is None:
        raise RuntimeError("python-flint is not installed")
    previous, _engine = _engine, name
    return previous


def get_engine() -> str:
    return _engine


def _norm(v) -> Number:
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, int):
        return v
    return Fraction(v)


class RationalMatrix:
    """A rows x cols matrix of rationals, stored densely row-major.

    Entries are plain ``int`` where integral and ``Fraction`` otherwise.
    Instances are treated as immutable.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Sequence[Sequence[Number]], cols: Optional[int] = None):
        data = [[_norm(v) for v in row] for row in entries]
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_sparse(cls, rows: Sequence[Dict[int, Number]], cols: int) -> "RationalMatrix":
        dense = []
        for r in rows:
            row = [0] * cols
            for j, v in r.items():
                row[j] = v
            dense.append(row)
        return cls(dense, cols)

    def __getitem__(self, ij: Tuple[int, int]) -> Number:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> List[Number]:
        return list(self._data[i])

    def tolist(self) -> List[List[Number]]:
        return [list(r) for r in self._data]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(c) for c in zip(*self._data)] if self.rows else [], self.rows)

    def apply(self, v: Sequence[Number]) -> List[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum((Fraction(a) * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self._data]

    def denominators(self):
        for row in self._data:
            for v in row:
                if isinstance(v, Fraction):
                    yield v.denominator

    def integer_rows(self) -> List[List[int]]:
        """Rows scaled by the lcm of their denominators."""
        out = []
        for row in self._data:
            lcm = 1
            for v in row:
                if isinstance(v, Fraction):
                    q = v.denominator
                    lcm = lcm * q // gcd(lcm, q)
            if lcm == 1:
                out.append(list(row))
            else:
                out.append([int(v * lcm) for v in row])
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# pure-Python fraction-free elimination


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _echelon_python(int_rows: List[List[int]], cols: int, reduce_above: bool):
    """Fraction-free echelon form of an integer matrix.

    Returns ``{pivot_col: row_dict}``.  With ``reduce_above`` the pivot
    columns are cleared in every other pivot row as well (integer RREF up to
    row scaling).
    """
    pivots: Dict[int, Dict[int, int]] = {}
    for dense in int_rows:
        row = {j: v for j, v in enumerate(dense) if v}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                break
            a, p = row[lead], prow[lead]
            g = gcd(a, p)
            sa, sp = p // g, a // g
            new = {j: v * sa for j, v in row.items()}
            for j, v in prow.items():
                w = new.get(j, 0) - sp * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new)
        if row:
            pivots[min(row)] = row
    if reduce_above:
        for c in sorted(pivots, reverse=True):
            prow = pivots[c]
            p = prow[c]
            for c2, other in list(pivots.items()):
                if c2 == c or c not in other:
                    continue
                a = other[c]
                g = gcd(a, p)
                sa, sp = p // g, a // g
                new = {j: v * sa for j, v in other.items()}
                for j, v in prow.items():
                    w = new.get(j, 0) - sp * v
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
                pivots[c2] = _primitive(new)
    return pivots


def _rank_python(M: RationalMatrix) -> int:
    return len(_echelon_python(M.integer_rows(), M.cols, reduce_above=False))


def _rref_python(M: RationalMatrix) -> Tuple[List[int], List[List[Fraction]]]:
    piv = _echelon_python(M.integer_rows(), M.cols, reduce_above=True)
    cols = sorted(piv)
    rows = []
    for c in cols:
        r = piv[c]
        p = r[c]
        dense = [Fraction(0)] * M.cols
        for j, v in r.items():
            dense[j] = Fraction(v, p)
        rows.append(dense)
    return cols, rows


# ---------------------------------------------------------------------------
# FLINT-backed engine


def _flint_int(M: RationalMatrix):
    flat = [v for row in M.integer_rows() for v in row]
    return _flint.fmpz_mat(M.rows, M.cols, flat)


def _rank_flint(M: RationalMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return _flint_int(M).rank()


def _rref_flint(M: RationalMatrix) -> Tuple[List[int], List[List[Fraction]]]:
    if M.rows == 0 or M.cols == 0:
        return [], []
    R, _den, r = _flint_int(M).rref()
    cols, rows = [], []
    for i in range(r):
        entries = [int(R[i, j]) for j in range(M.cols)]
        lead = next(j for j, v in enumerate(entries) if v)
        p = entries[lead]
        cols.append(lead)
        rows.append([Fraction(v, p) for v in entries])
    return cols, rows


# ---------------------------------------------------------------------------
# public operations


def rank(M: RationalMatrix) -> int:
    """Exact rank over the rationals."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return _rank_flint(M) if _engine == "flint" else _rank_python(M)


def rref(M: RationalMatrix) -> Tuple[List[int], List[List[Fraction]]]:
    """Reduced row echelon form as ``(pivot_columns, nonzero_rows)``."""
    if M.rows == 0 or M.cols == 0:
        return [], []
    return _rref_flint(M) if _engine == "flint" else _rref_python(M)


def kernel_basis(M: RationalMatrix) -> List[List[Fraction]]:
    """Canonical basis of the right kernel ``{v : M v = 0}``.

    One vector per non-pivot column ``j`` of the reduced echelon form, with
    entry 1 at ``j``, 0 at the other free columns, and minus the echelon
    entries at the pivot columns.  Recomputation gives identical vectors.
    """
    pcols, rows = rref(M)
    pivot_set = set(pcols)
    basis = []
    for j in range(M.cols):
        if j in pivot_set:
            continue
        v = [Fraction(0)] * M.cols
        v[j] = Fraction(1)
        for pc, r in zip(pcols, rows):
            if r[j]:
                v[pc] = -r[j]
        basis.append(v)
    return basis


def nullity(M: RationalMatrix) -> int:
    return M.cols - rank(M)


def solvable(M: RationalMatrix, b: Sequence[Number]) -> bool:
    """Whether ``M v = b`` has a rational solution."""
    if len(b) != M.rows:
        raise ValueError("right-hand side length does not match row count")
    aug = RationalMatrix([list(r) + [bv] for r, bv in zip(M.tolist(), b)], M.cols + 1)
    return rank(aug) == rank(M)


def rank_modp(M: RationalMatrix, p: int = DEFAULT_PRIME) -> int:
    """Rank of ``M`` reduced modulo the prime ``p``; never exceeds :func:`rank`."""
    if p < 2:
        raise BadPrime(f"{p} is not a prime")
    for q in M.denominators():
        if q % p == 0:
            raise BadPrime(f"prime {p} divides an entry denominator {q}")
    if M.rows == 0 or M.cols == 0:
        return 0
    if p >= 3_037_000_499:
        raise BadPrime("prime too large for int64 elimination")
    A = np.empty((M.rows, M.cols), dtype=np.int64)
    for i in range(M.rows):
        for j in range(M.cols):
            v = M[i, j]
            if isinstance(v, Fraction):
                A[i, j] = (v.numerator % p) * pow(v.denominator, -1, p) % p
            else:
                A[i, j] = v % p
    return _rank_mod_array(A, p)


def _rank_mod_array(A: np.ndarray, p: int) -> int:
    A = A.copy()
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + r + 1
            A[idx] = (A[idx] - np.outer(below[mask], A[r]) % p) % p
        r += 1
    return r


def rank_modp_sparse(rows: Sequence[Dict[int, int]], cols: int, p: int = DEFAULT_PRIME) -> int:
    """:func:`rank_modp` for integer rows given as ``{column: value}`` maps."""
    if not rows or not cols:
        return 0
    A = np.zeros((len(rows), cols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in r.items():
            A[i, j] = v % p
    return _rank_mod_array(A, p)
