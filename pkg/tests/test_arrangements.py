import random
from fractions import Fraction

import pytest

from syzcert import families as fam
from syzcert.arrangements import (
    LineArrangement,
    ProjPoint,
    c2_log_tangent,
    defining_poly,
    euler_complement,
    intersection_census,
    pair_count_holds,
    parse_arrangement,
    random_arrangement,
    tjurina_from_multiplicities,
    tjurina_from_nj,
)
from syzcert.errors import ArrangementFormatError, DuplicateLine
from syzcert.milnor import total_tjurina
from syzcert.poly import X, Y, Z, gij, parse_poly


def arr(*forms):
    return LineArrangement.from_forms(forms)


TRIANGLE = arr((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_projpoint_normalization():
    assert ProjPoint.normalize((2, 4, 6)) == ProjPoint.normalize((1, 2, 3))
    assert ProjPoint.normalize((0, -3, 6)).coords == (0, 1, -2)
    with pytest.raises(ValueError):
        ProjPoint.normalize((0, 0, 0))


def test_duplicate_lines_rejected():
    with pytest.raises(DuplicateLine):
        arr((1, 2, 3), (2, 4, 6))


def test_census_free_arrangement_d5():
    A, _ = fam.thm12_arrangement(5, 2)
    c = intersection_census(A)
    assert c.nj == {2: 4, 3: 2}
    assert pair_count_holds(c)
    assert tjurina_from_multiplicities(c) == 12  # 4 + 4 + 4*1
    assert tjurina_from_nj(c, 5) == 12  # 16 - 8 + 4
    assert c2_log_tangent(c, 5) == 4


def test_census_pencil():
    c = intersection_census(arr((1, 0, 0), (0, 1, 0), (1, 1, 0)))
    assert c.nj == {3: 1}
    assert c.points[0][0] == ProjPoint.normalize((0, 0, 1))


def test_census_nearly_free_arrangement_d6():
    A, _ = fam.thm34_arrangement(3, 3)
    c = intersection_census(A)
    # brute-force pairwise intersections
    assert c.nj == {2: 6, 3: 3}
    assert ProjPoint.normalize((2, 1, 1)) in c.points_with_multiplicity(3)
    assert tjurina_from_nj(c, 6) == 18


def test_smallest_nearly_free_arrangement():
    A, _ = fam.thm34_arrangement(2, 2)
    c = intersection_census(A)
    assert c.nj == {2: 6}
    assert tjurina_from_multiplicities(c) == 6
    assert tjurina_from_nj(c, 4) == 6


def test_single_node_and_triangle():
    c = intersection_census(arr((1, 0, 0), (0, 1, 0)))
    assert tjurina_from_multiplicities(c) == 1
    c = intersection_census(TRIANGLE)
    assert c.nj == {2: 3}
    assert c2_log_tangent(c, 3) == 1
    assert euler_complement(TRIANGLE) == 0


def test_c2_free_arrangement_d4():
    A, _ = fam.thm12_arrangement(4, 1)
    c = intersection_census(A)
    assert c2_log_tangent(c, 4) == 2


def test_euler_complement():
    A, _ = fam.thm12_arrangement(5, 2)
    assert euler_complement(A) == 1 == (1 - 2) * (1 - 2)
    assert euler_complement(arr((1, 0, 0))) == 1


def test_defining_poly():
    assert defining_poly(TRIANGLE) == X * Y * Z
    assert defining_poly(fam.thm34_arrangement(2, 2)[0]) == parse_poly("x*(y-z)*(x-y)*(x-2*z)")
    for d, d1 in [(5, 2), (7, 3), (4, 1)]:
        assert defining_poly(fam.thm12_arrangement(d, d1)[0]) == fam.thm12_poly(d, d1)


def test_parse_arrangement_format():
    A = parse_arrangement("# triangle\n1 0 0\n0 1 0  # y\n\n0 0 1/2\n")
    assert A.degree == 3
    assert A.lines[2] == (0, 0, Fraction(1, 2))
    with pytest.raises(ArrangementFormatError):
        parse_arrangement("1 0\n")
    with pytest.raises(ArrangementFormatError):
        parse_arrangement("1 a 0\n")
    with pytest.raises(ArrangementFormatError):
        parse_arrangement("# nothing\n")
    with pytest.raises(ArrangementFormatError):
        parse_arrangement("0 0 0\n")
    with pytest.raises(DuplicateLine):
        parse_arrangement("1 0 0\n-1 0 0\n")


def test_round_trip_text():
    A, _ = fam.thm34_arrangement(3, 4)
    assert parse_arrangement(A.to_text()) == A


def test_random_arrangement_is_valid_and_seeded():
    a = random_arrangement(6, random.Random(1))
    b = random_arrangement(6, random.Random(1))
    assert a == b and a.degree == 6
    assert all(-3 <= v <= 3 for L in a.lines for v in L)


def test_random_arrangement_identities():
    rng = random.Random(99)
    for _ in range(60):
        d = rng.randint(1, 8)
        A = random_arrangement(d, rng)
        c = intersection_census(A)
        assert pair_count_holds(c)
        tau = tjurina_from_multiplicities(c)
        assert tau == tjurina_from_nj(c, d)
        assert c2_log_tangent(c, d) == (d - 1) ** 2 - tau


@pytest.mark.parametrize("seed", range(6))
def test_graded_tau_matches_combinatorics(seed):
    rng = random.Random(seed)
    A = random_arrangement(rng.randint(3, 8), rng)
    assert total_tjurina(defining_poly(A)).tau == tjurina_from_multiplicities(intersection_census(A))
