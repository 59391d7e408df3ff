"""Hilbert function of the Milnor algebra S/J_f and the total Tjurina number."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from . import linalg
from .errors import NonStabilized
from .poly import HomPoly, monomial_basis, monomial_index

DEFAULT_CAP_MULT = 5


@dataclass(frozen=True)
class HilbertProfile:
    degree: int
    values: Tuple[Tuple[int, int], ...]
    stabilized_at: int
    tau: int

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "values": [list(v) for v in self.values],
            "stabilized_at": self.stabilized_at,
            "tau": self.tau,
        }


def jacobian_rows(f: HomPoly, k: int) -> Tuple[List[Dict[int, int]], int]:
    """Integer rows spanning (J_f)_k: every monomial multiple of f_x, f_y, f_z.

    Each partial derivative is scaled by the lcm of its denominators, which
    leaves the row space unchanged.
    """
    d = f.degree
    idx = monomial_index(k)
    rows: List[Dict[int, int]] = []
    if k < d - 1:
        return rows, len(idx)
    parts = []
    for g in f.gradient():
        if g.is_zero():
            continue
        lcm = g.denominator_lcm()
        parts.append([(m, int(c * lcm)) for m, c in g.items()])
    for mu in monomial_basis(k - d + 1):
        for part in parts:
            rows.append({idx[mu.times(m)]: c for m, c in part})
    return rows, len(idx)


@lru_cache(maxsize=4096)
def hilbert_jacobian_quotient(f: HomPoly, k: int) -> int:
    """dim (S/J_f)_k, computed as C(k+2,2) minus the rank of (J_f)_k."""
    if f.degree < 1:
        raise ValueError("need a polynomial of positive degree")
    if k < 0:
        return 0
    rows, cols = jacobian_rows(f, k)
    if not rows:
        return cols
    M = linalg.RationalMatrix.from_sparse(rows, cols)
    return cols - linalg.rank(M)


def hilbert_series_prefix(f: HomPoly, upto: int) -> List[Tuple[int, int]]:
    return [(k, hilbert_jacobian_quotient(f, k)) for k in range(upto + 1)]


def total_tjurina(f: HomPoly, cap_mult: int = DEFAULT_CAP_MULT) -> HilbertProfile:
    """Scan dim (S/J_f)_k from k = 3d-6 until three consecutive values agree.

    Raises :class:`NonStabilized` if no such run occurs by ``k = cap_mult*d``.
    """
    d = f.degree
    if d < 2:
        raise ValueError("total Tjurina number needs degree >= 2")
    start = max(3 * d - 6, 0)
    cap = cap_mult * d
    values: List[Tuple[int, int]] = []
    for k in range(start, cap + 1):
        values.append((k, hilbert_jacobian_quotient(f, k)))
        if len(values) >= 3 and values[-1][1] == values[-2][1] == values[-3][1]:
            return HilbertProfile(d, tuple(values), values[-3][0], values[-1][1])
    raise NonStabilized(
        f"Hilbert function of S/J_f did not stabilize for k in [{start}, {cap}]; "
        f"last values {[v for _, v in values[-4:]]}"
    )


def reducedness_probe(f: HomPoly, cap_mult: int = DEFAULT_CAP_MULT) -> bool:
    """Heuristic guard for reducedness.

    True when the Hilbert tail stabilizes within the cap and the stable value
    is below (d-1)^2.  Cones over d concurrent lines also reach (d-1)^2 and
    are rejected here; callers that accept cones must test for them first.
    """
    try:
        prof = total_tjurina(f, cap_mult)
    except NonStabilized:
        return False
    return prof.tau < (f.degree - 1) ** 2
