"""Exact integer-lattice primitives: extended gcd, kernels, saturation, basis completion."""

from __future__ import annotations

import math
from fractions import Fraction

Vec = tuple[int, ...]


def gcd_ext(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0; (0, 0) maps to (0, 0, 0)."""
    if a == 0 and b == 0:
        return 0, 0, 0
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def primitive_kernel(alpha: int, beta: int) -> tuple[int, int]:
    """Return the primitive integer solution (A0, B0) of alpha*A0 + beta*B0 = 0, first nonzero entry positive."""
    if alpha == 0 and beta == 0:
        raise ValueError("degenerate constraint")
    g = math.gcd(alpha, beta)
    a0, b0 = beta // g, -alpha // g
    if a0 < 0 or (a0 == 0 and b0 < 0):
        a0, b0 = -a0, -b0
    return a0, b0


def vec_content(u: Vec) -> int:
    """Return the gcd of the entries of u (0 for the zero vector)."""
    return math.gcd(*u) if u else 0


def minors2(u: Vec, v: Vec) -> list[int]:
    """Return all 2x2 minors u[i]*v[j] - u[j]*v[i] for i < j."""
    n = len(u)
    return [u[i] * v[j] - u[j] * v[i] for i in range(n) for j in range(i + 1, n)]


def saturate_plane(u: Vec, v: Vec) -> tuple[Vec, Vec]:
    """Return a basis of the saturation of the rank-2 lattice spanned by integer vectors u, v."""
    if len(u) != len(v):
        raise ValueError("not a plane")
    mins = minors2(u, v)
    if all(m == 0 for m in mins):
        raise ValueError("not a plane")
    cu = vec_content(u)
    if cu == 0:
        # u = 0 contradicts a nonzero minor, but guard anyway
        raise ValueError("not a plane")
    u1 = tuple(c // cu for c in u)
    m = math.gcd(*minors2(u1, v))
    if m == 1:
        return u1, tuple(v)
    for t in range(m):
        shifted = [v[k] + t * u1[k] for k in range(len(v))]
        if all(c % m == 0 for c in shifted):
            v1 = tuple(c // m for c in shifted)
            assert math.gcd(*minors2(u1, v1)) == 1
            return u1, v1
    raise RuntimeError("saturation shift search failed")


def complete_to_basis(w: Vec, basis: tuple[Vec, Vec]) -> Vec:
    """Extend the primitive lattice vector w to a basis (w, v2) of the saturated plane spanned by basis."""
    u, v = basis
    if len(w) != len(u):
        raise ValueError("not primitive")
    pair = None
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            det = u[i] * v[j] - u[j] * v[i]
            if det != 0:
                pair = (i, j, det)
                break
        if pair:
            break
    if pair is None:
        raise ValueError("not primitive")
    i, j, det = pair
    a = Fraction(w[i] * v[j] - w[j] * v[i], det)
    b = Fraction(u[i] * w[j] - u[j] * w[i], det)
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError("not primitive")
    a, b = int(a), int(b)
    if any(w[k] != a * u[k] + b * v[k] for k in range(n)):
        raise ValueError("not primitive")
    g, x, y = gcd_ext(a, b)
    if g != 1:
        raise ValueError("not primitive")
    v2 = tuple(-y * u[k] + x * v[k] for k in range(n))
    for c in v2:
        if c != 0:
            if c < 0:
                v2 = tuple(-t for t in v2)
            break
    return v2
