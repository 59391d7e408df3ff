"""Line arrangements in the projective plane and their intersection census."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .errors import ArrangementFormatError, DuplicateLine
from .poly import HomPoly, product

Rational = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class ProjPoint:
    """Point of P^2 with its first nonzero coordinate scaled to 1."""

    coords: Tuple[Fraction, Fraction, Fraction]

    @classmethod
    def normalize(cls, coords: Sequence[Rational]) -> "ProjPoint":
        c = [Fraction(v) for v in coords]
        lead = next((v for v in c if v), None)
        if lead is None:
            raise ValueError("(0:0:0) is not a projective point")
        return cls(tuple(v / lead for v in c))

    def __str__(self) -> str:
        return "(" + ":".join(str(v) for v in self.coords) + ")"


def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> Tuple[Fraction, Fraction, Fraction]:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _fmt_line(L) -> str:
    return " ".join(str(v) for v in L)


@dataclass(frozen=True)
class LineArrangement:
    """Lines p*x + q*y + r*z = 0, stored as coefficient triples."""

    lines: Tuple[Tuple[Fraction, Fraction, Fraction], ...]

    def __post_init__(self):
        if not self.lines:
            raise ValueError("an arrangement needs at least one line")
        for L in self.lines:
            if len(L) != 3 or not any(L):
                raise ValueError(f"{L} is not a line")
        for (i, L1), (j, L2) in combinations(enumerate(self.lines), 2):
            if not any(cross(L1, L2)):
                raise DuplicateLine(
                    f"lines {i} and {j} are proportional: {_fmt_line(L1)} and {_fmt_line(L2)}"
                )

    @classmethod
    def from_forms(cls, forms: Iterable[Sequence[Rational]]) -> "LineArrangement":
        return cls(tuple(tuple(Fraction(v) for v in L) for L in forms))

    @property
    def degree(self) -> int:
        return len(self.lines)

    def linear_forms(self) -> List[HomPoly]:
        return [HomPoly.linear(*L) for L in self.lines]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in L) for L in self.lines) + "\n"


def parse_arrangement(text: str) -> LineArrangement:
    """Read the ``p q r`` per line format; ``#`` starts a comment."""
    forms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3:
            raise ArrangementFormatError(f"line {lineno}: expected 3 rationals, got {len(parts)} fields")
        try:
            forms.append(tuple(Fraction(p) for p in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise ArrangementFormatError(f"line {lineno}: {exc}") from None
    if not forms:
        raise ArrangementFormatError("no lines in arrangement file")
    try:
        return LineArrangement(tuple(forms))
    except DuplicateLine:
        raise
    except ValueError as exc:
        raise ArrangementFormatError(str(exc)) from None


def read_arrangement(path: Union[str, Path]) -> LineArrangement:
    return parse_arrangement(Path(path).read_text())


@dataclass(frozen=True)
class IntersectionCensus:
    num_lines: int
    points: Tuple[Tuple[ProjPoint, int], ...]
    nj: Dict[int, int] = field(hash=False)

    def multiplicities(self) -> List[int]:
        return [m for _, m in self.points]

    def points_with_multiplicity(self, m: int) -> List[ProjPoint]:
        return [p for p, k in self.points if k == m]

    def as_dict(self) -> dict:
        return {
            "num_lines": self.num_lines,
            "nj": {str(j): n for j, n in sorted(self.nj.items())},
            "points": [[str(p), m] for p, m in self.points],
        }


def intersection_census(A: LineArrangement) -> IntersectionCensus:
    """All pairwise intersection points with the number of lines through each."""
    through: Dict[ProjPoint, set] = {}
    for (i, L1), (j, L2) in combinations(enumerate(A.lines), 2):
        p = ProjPoint.normalize(cross(L1, L2))
        through.setdefault(p, set()).update((i, j))
    points = tuple(sorted(((p, len(s)) for p, s in through.items()), key=lambda t: (-t[1], t[0])))
    nj = dict(sorted(Counter(m for _, m in points).items()))
    return IntersectionCensus(A.degree, points, nj)


def pair_count_holds(c: IntersectionCensus) -> bool:
    return sum(n * comb(j, 2) for j, n in c.nj.items()) == comb(c.num_lines, 2)


def tjurina_from_multiplicities(c: IntersectionCensus) -> int:
    return sum((m - 1) ** 2 for _, m in c.points)


def tjurina_from_nj(c: IntersectionCensus, d: int) -> int:
    return (d - 1) ** 2 - sum((j - 1) * n for j, n in c.nj.items()) + d - 1


def c2_log_tangent(c: IntersectionCensus, d: int) -> int:
    return sum((j - 1) * n for j, n in c.nj.items()) - d + 1


def euler_complement(A: LineArrangement) -> int:
    """Euler number of P^2 minus the arrangement."""
    c = intersection_census(A)
    return 3 - (2 * A.degree - sum(m - 1 for _, m in c.points))


def defining_poly(A: LineArrangement) -> HomPoly:
    return product(A.linear_forms())


def points_on_line(c: IntersectionCensus, line: Sequence[Rational]) -> List[Tuple[ProjPoint, int]]:
    p, q, r = (Fraction(v) for v in line)
    return [(pt, m) for pt, m in c.points if p * pt.coords[0] + q * pt.coords[1] + r * pt.coords[2] == 0]


def random_arrangement(d: int, rng: random.Random, bound: int = 3) -> LineArrangement:
    """``d`` pairwise non-proportional lines with integer coefficients in [-bound, bound]."""
    forms: List[Tuple[Fraction, Fraction, Fraction]] = []
    while len(forms) < d:
        L = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(3))
        if not any(L):
            continue
        if any(not any(cross(L, M)) for M in forms):
            continue
        forms.append(L)
    return LineArrangement(tuple(forms))
