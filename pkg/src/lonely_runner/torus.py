"""Distance-to-half-center computations for points, lines, coset lines, and planes in the n-torus."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations, product

from . import _kernels
from .exact import Vec, gcd_ext, minors2, saturate_plane
from .pwl import build_restriction, dist_to_half
from .slices import slice_structure


def d_point(x: tuple[Fraction | int, ...]) -> Fraction:
    """L-infinity circle distance from the point x to (1/2, ..., 1/2)."""
    if not x:
        raise ValueError("empty point")
    return max(dist_to_half(c) for c in x)


def d_line_oracle(w: Vec) -> Fraction:
    """Exact distance of the line through w to the half-center, by bounded enumeration."""
    if not w or any(c == 0 for c in w):
        raise ValueError("improper subtorus")
    speeds = _kernels.dedup_speeds(w)
    if len(speeds) == 1:
        return Fraction(0)
    num, den = _kernels.d_line_raw(speeds)
    return Fraction(num, den)


def d_coset_line(
    base: tuple[Fraction | int, ...], direction: Vec
) -> tuple[Fraction, list[tuple]]:
    """Minimum of d_point along base + t*direction, with the exhaustive argmin pieces."""
    f = build_restriction(base, direction)
    return f.minimum, f.argmin_pieces()


def plane_proper(u: Vec, v: Vec) -> bool:
    """True unless some coordinate vanishes on the whole plane."""
    return all((a, b) != (0, 0) for a, b in zip(u, v))


def project_redundant(u: Vec, v: Vec) -> tuple[Vec, Vec]:
    """Delete coordinates on which the plane satisfies x_i = +-x_j identically."""
    changed = True
    while changed:
        changed = False
        n = len(u)
        for i in range(n):
            for j in range(i + 1, n):
                if (u[i], v[i]) in ((u[j], v[j]), (-u[j], -v[j])):
                    u = u[:j] + u[j + 1 :]
                    v = v[:j] + v[j + 1 :]
                    changed = True
                    break
            if changed:
                break
    return u, v


def d_plane(u: Vec, v: Vec) -> Fraction:
    """Exact distance of the saturated plane span(u, v) to the half-center."""
    u, v = saturate_plane(u, v)
    if not plane_proper(u, v):
        raise ValueError("improper subtorus")
    u, v = project_redundant(u, v)
    n = len(u)
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            for eps in (1, -1):
                s = slice_structure(u, v, i, j, eps)
                for f in s.restrictions:
                    m = f.minimum
                    if best is None or m < best:
                        best = m
    return best


def _hnf_2rows(r1: list[int], r2: list[int]) -> tuple[Vec, Vec]:
    """Row Hermite normal form of a rank-2 integer 2 x n matrix."""
    n = len(r1)
    piv = next(k for k in range(n) if r1[k] or r2[k])
    g, x, y = gcd_ext(r1[piv], r2[piv])
    a = [x * r1[k] + y * r2[k] for k in range(n)]
    b = [
        (-r2[piv] // g) * r1[k] + (r1[piv] // g) * r2[k] for k in range(n)
    ]
    piv2 = next(k for k in range(n) if b[k])
    if b[piv2] < 0:
        b = [-c for c in b]
    t = a[piv2] // b[piv2]
    a = [a[k] - t * b[k] for k in range(n)]
    return tuple(a), tuple(b)


def canonicalize_symmetry(u: Vec, v: Vec) -> tuple[Vec, Vec]:
    """Canonical representative of the plane's orbit under signed coordinate permutations."""
    u, v = saturate_plane(u, v)
    n = len(u)
    best = None
    for perm in permutations(range(n)):
        pu = [u[perm[k]] for k in range(n)]
        pv = [v[perm[k]] for k in range(n)]
        for signs in product((1, -1), repeat=n):
            su = [signs[k] * pu[k] for k in range(n)]
            sv = [signs[k] * pv[k] for k in range(n)]
            key = _hnf_2rows(su, sv)
            if best is None or key < best:
                best = key
    return best


_SWEEP_CACHE: dict = {}


def oracle_sweep(
    u: Vec, v: Vec, bound: int
) -> dict[tuple[int, int], Fraction | None]:
    """Map (A, B) over the coprime parameter box to D of the line through A*u + B*v.

    A in [0, bound], |B| <= bound, gcd(A, B) = 1, excluding (0, 0) and (0, -1);
    None marks an improper line. Results are cached per (u, v, bound, backend).
    """
    key = (u, v, bound, _kernels.backend())
    if key in _SWEEP_CACHE:
        return _SWEEP_CACHE[key]
    rows = _kernels.sweep_raw(u, v, bound)
    out: dict[tuple[int, int], Fraction | None] = {}
    for A, B, num, den in rows:
        out[(A, B)] = None if den == 0 else Fraction(num, den)
    _SWEEP_CACHE[key] = out
    return out
