"""Intersections of a 2-dimensional subtorus with the diagonal subspaces x_i = eps*x_j."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import Vec, complete_to_basis, primitive_kernel, saturate_plane
from .pwl import CirclePWL, build_restriction


@dataclass(frozen=True)
class SliceStructure:
    """One diagonal slice of a plane: identity component, component count, adapted coordinates."""

    i: int
    j: int
    eps: int
    u_prime: Vec
    v_prime: Vec
    K: int
    z: tuple[int, int, int, int]
    restrictions: tuple[CirclePWL, ...]

    def q_form(self, A: int, B: int) -> int:
        """Transverse coordinate of A*u + B*v in the adapted basis."""
        return self.z[1] * A + self.z[3] * B

    def a_form(self, A: int, B: int) -> int:
        """Longitudinal coordinate of A*u + B*v in the adapted basis."""
        return self.z[0] * A + self.z[2] * B


@dataclass(frozen=True)
class SlicePoints:
    """Intersection of a parameterized line with one slice: q points per component."""

    q: int
    a: int
    K: int
    offsets: tuple[Fraction, ...]

    def component_x(self, ell: int) -> list[Fraction]:
        """x-coordinates (adapted first coordinate) of the points on component ell."""
        return [Fraction(self.offsets[ell] + r, self.q) % 1 for r in range(self.q)]


def _solve_coords(w: Vec, u: Vec, v: Vec) -> tuple[int, int]:
    """Integer coordinates (a, b) with w = a*u + b*v; raises if not integral."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            det = u[i] * v[j] - u[j] * v[i]
            if det != 0:
                na = w[i] * v[j] - w[j] * v[i]
                nb = u[i] * w[j] - u[j] * w[i]
                if na % det or nb % det:
                    raise ValueError("coordinates are not integral")
                a, b = na // det, nb // det
                if any(w[k] != a * u[k] + b * v[k] for k in range(n)):
                    raise ValueError("vector outside the plane")
                return a, b
    raise ValueError("not a plane")


def slice_structure(u: Vec, v: Vec, i: int, j: int, eps: int) -> SliceStructure:
    """Structure of span(u, v) intersected with {x_i = eps * x_j}; indices 0-based, i < j."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if not 0 <= i < j < len(u):
        raise ValueError("need 0 <= i < j < n")
    u, v = saturate_plane(u, v)
    alpha = u[i] - eps * u[j]
    beta = v[i] - eps * v[j]
    if alpha == 0 and beta == 0:
        raise ValueError("degenerate slice; project first")
    a0, b0 = primitive_kernel(alpha, beta)
    u_prime = tuple(a0 * u[k] + b0 * v[k] for k in range(len(u)))
    v_prime = complete_to_basis(u_prime, (u, v))
    K = abs(v_prime[i] - eps * v_prime[j])
    assert K >= 1
    z1, z2 = _solve_coords(u, u_prime, v_prime)
    z3, z4 = _solve_coords(v, u_prime, v_prime)
    if abs(z1 * z4 - z2 * z3) != 1:
        raise RuntimeError("adapted basis change is not unimodular")
    restrictions = tuple(
        build_restriction(
            tuple(Fraction(ell * c, K) for c in v_prime), u_prime
        )
        for ell in range(K)
    )
    return SliceStructure(i, j, eps, u_prime, v_prime, K, (z1, z2, z3, z4), restrictions)


def slice_points(s: SliceStructure, A: int, B: int) -> SlicePoints:
    """Intersection data of the line through A*u + B*v with the slice; gcd(A, B) = 1 required."""
    if math.gcd(A, B) != 1:
        raise ValueError("parameters must be coprime")
    qf = s.q_form(A, B)
    if qf == 0:
        raise ValueError("line lies in the slice identity component")
    delta = 1 if qf > 0 else -1
    q = abs(qf)
    a = (delta * s.a_form(A, B)) % s.K
    offsets = tuple(Fraction(a * ell, s.K) % 1 for ell in range(s.K))
    return SlicePoints(q, a, s.K, offsets)


def component_points(
    s: SliceStructure, sp: SlicePoints, ell: int
) -> list[tuple[Fraction, ...]]:
    """Ambient torus points of the line's intersection with component ell of the slice."""
    n = len(s.u_prime)
    out = []
    for x in sp.component_x(ell):
        pt = tuple(
            (x * s.u_prime[k] + Fraction(ell, s.K) * s.v_prime[k]) % 1
            for k in range(n)
        )
        out.append(pt)
    return out
