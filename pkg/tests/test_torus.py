"""Tests for point/line/coset/plane distance computations and symmetry canonicalization."""

import math
import random
from fractions import Fraction

import pytest

from lonely_runner.torus import (
    canonicalize_symmetry,
    d_coset_line,
    d_line_oracle,
    d_plane,
    d_point,
    oracle_sweep,
    plane_proper,
)

F = Fraction

PLANE_0123 = ((0, 1, 2, 3), (1, 0, 0, 0))
PLANE_014 = ((0, 1, 4), (1, 0, 0))
PLANE_U8 = ((1, 2, 3, 2, 0, 0, 0), (0, 0, 0, 2, 1, 2, 3))


def test_d_point_literals():
    assert d_point((F(1, 2), F(1, 2), F(1, 2))) == 0
    assert d_point((0, 0)) == F(1, 2)
    assert d_point((F(1, 4), F(1, 2))) == F(1, 4)


def test_d_line_oracle_literals():
    assert d_line_oracle((1, 2, 3)) == F(1, 4)
    assert d_line_oracle((8, 7, 15, 23)) == F(5, 19)
    assert d_line_oracle((1, 1)) == 0


def test_d_line_oracle_improper():
    with pytest.raises(ValueError, match="improper subtorus"):
        d_line_oracle((1, 0, 2))


def test_d_line_oracle_consecutive_speeds():
    for n in range(1, 7):
        w = tuple(range(1, n + 1))
        assert d_line_oracle(w) == F(1, 2) - F(1, n + 1)


def test_d_line_oracle_signed_permutation_invariance():
    rng = random.Random(53)
    for _ in range(30):
        n = rng.randint(2, 5)
        w = tuple(rng.choice([-1, 1]) * rng.randint(1, 25) for _ in range(n))
        d = d_line_oracle(w)
        perm = list(range(n))
        rng.shuffle(perm)
        w2 = tuple(rng.choice([-1, 1]) * w[perm[k]] for k in range(n))
        assert d_line_oracle(w2) == d


def test_d_line_oracle_is_lower_bound_of_dense_sample():
    rng = random.Random(59)
    for _ in range(20):
        n = rng.randint(2, 4)
        w = tuple(rng.randint(1, 12) for _ in range(n))
        if any(c == 0 for c in w):
            continue
        d = d_line_oracle(w)
        achieved = False
        for den in range(1, 40):
            for num in range(den):
                val = d_point(tuple((F(num, den) * c) % 1 for c in w))
                assert val >= d
                if val == d:
                    achieved = True
        assert achieved


def test_two_speed_parity_formula():
    for a in range(1, 12):
        for b in range(1, 12):
            if math.gcd(a, b) != 1:
                continue
            d = d_line_oracle((a, b))
            if a % 2 == 1 and b % 2 == 1:
                assert d == 0
            else:
                assert d == F(1, 2 * (a + b))


def test_d_coset_line_literals():
    m, am = d_coset_line((0, 0, 0, 0), (1, 1, 2, 3))
    assert m == F(1, 4)
    assert am == [("point", F(1, 4)), ("point", F(3, 4))]
    m, am = d_coset_line((0, F(1, 4), F(2, 4), F(3, 4)), (1, 0, 0, 0))
    assert m == F(1, 4)
    assert am == [("interval", F(1, 4), F(3, 4))]
    # a zero-direction coordinate at base 0 pins the envelope at 1/2
    m, am = d_coset_line((0, 0), (1, 0))
    assert m == F(1, 2)
    assert am == [("interval", F(0), F(1))]


def test_d_plane_goldens():
    assert d_plane(*PLANE_0123) == F(1, 4)
    assert d_plane(*PLANE_014) == F(1, 10)
    assert d_plane(*PLANE_U8) == F(3, 10)


def test_d_plane_improper():
    with pytest.raises(ValueError, match="improper subtorus"):
        d_plane((1, 2, 0), (2, 3, 0))


def test_d_plane_projects_redundant_coordinate():
    assert d_plane((0, 1, 2, 3, 3), (1, 0, 0, 0, 0)) == F(1, 4)
    assert d_plane((1, 1, 2), (0, 0, 1)) == 0


def test_d_plane_bounded_by_lines():
    rng = random.Random(61)
    for u, v in (PLANE_0123, PLANE_014):
        d = d_plane(u, v)
        for _ in range(15):
            A = rng.randint(-8, 8)
            B = rng.randint(-8, 8)
            w = tuple(A * a + B * b for a, b in zip(u, v))
            if any(c == 0 for c in w):
                continue
            assert d <= d_line_oracle(w)


def test_canonicalize_idempotent_and_orbit():
    c1 = canonicalize_symmetry(*PLANE_0123)
    assert canonicalize_symmetry(*c1) == c1
    # swapping two coordinates or negating one keeps the canonical form
    swapped = ((3, 1, 2, 0), (0, 0, 0, 1))
    assert canonicalize_symmetry(*swapped) == c1
    negated = ((0, -1, 2, 3), (1, 0, 0, 0))
    assert canonicalize_symmetry(*negated) == c1


def test_canonicalize_golden_equivalence():
    assert canonicalize_symmetry((1, 1, 4), (-1, 1, 4)) == canonicalize_symmetry(
        *PLANE_014
    )


def test_plane_proper():
    assert plane_proper(*PLANE_0123)
    assert not plane_proper((1, 0, 0), (2, 0, 1))


def test_oracle_sweep_matches_single_lines():
    sweep = oracle_sweep(*PLANE_0123, 3)
    assert sweep[(1, 0)] is None  # the generator (0,1,2,3) has a zero coordinate
    for (A, B), val in sweep.items():
        w = tuple(A * a + B * b for a, b in zip(*PLANE_0123))
        if any(c == 0 for c in w):
            assert val is None
        else:
            assert val == d_line_oracle(w)
    assert (0, 0) not in sweep
    assert (0, -1) not in sweep
    assert (0, 1) in sweep
