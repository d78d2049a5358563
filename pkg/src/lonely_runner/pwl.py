"""Exact piecewise-linear functions on the circle: envelopes, minima, approximation residues, coset tables."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction

HALF = Fraction(1, 2)


def dist_to_half(y: Fraction | int) -> Fraction:
    """Circle distance from y to 1/2, i.e. |frac(y) - 1/2|."""
    return abs(Fraction(y) % 1 - HALF)


@dataclass(frozen=True)
class CirclePWL:
    """Continuous piecewise-linear function on R/Z given by sorted breakpoints and values."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.breakpoints:
            raise ValueError("empty function")
        if len(self.breakpoints) != len(self.values):
            raise ValueError("breakpoint/value length mismatch")
        if any(not (0 <= t < 1) for t in self.breakpoints):
            raise ValueError("breakpoints must lie in [0,1)")
        if any(
            self.breakpoints[i] >= self.breakpoints[i + 1]
            for i in range(len(self.breakpoints) - 1)
        ):
            raise ValueError("breakpoints must be strictly increasing")

    def evaluate(self, t: Fraction | int) -> Fraction:
        t = Fraction(t) % 1
        bps, vals = self.breakpoints, self.values
        n = len(bps)
        if n == 1:
            return vals[0]
        i = bisect.bisect_right(bps, t) - 1
        if i < 0:
            # t before the first breakpoint: wraparound segment from the last one
            i = n - 1
            t0, v0 = bps[i] - 1, vals[i]
        else:
            t0, v0 = bps[i], vals[i]
        j = (i + 1) % n
        t1 = bps[j] if bps[j] > t0 else bps[j] + 1
        v1 = vals[j]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    @property
    def minimum(self) -> Fraction:
        return min(self.values)

    def _segment_flat_at_min(self) -> list[bool]:
        m = self.minimum
        n = len(self.breakpoints)
        if n == 1:
            return [True]
        return [
            self.values[i] == m and self.values[(i + 1) % n] == m for i in range(n)
        ]

    def flat_pieces_at_min(self) -> list[tuple[Fraction, Fraction]]:
        """Maximal closed intervals (a, b), b <= a+1, on which f equals its minimum."""
        n = len(self.breakpoints)
        flat = self._segment_flat_at_min()
        if all(flat):
            return [(Fraction(0), Fraction(1))]
        runs = []
        i = 0
        while i < n:
            if flat[i] and not flat[i - 1]:
                j = i
                while flat[j % n]:
                    j += 1
                runs.append((i, j))
            i += 1
        out = []
        for i, j in runs:
            a = self.breakpoints[i]
            b = self.breakpoints[j % n]
            if b <= a:
                b += 1
            out.append((a, b))
        return out

    def argmin_pieces(self) -> list[tuple]:
        """Exhaustive argmin as ('point', t) and ('interval', a, b) entries, sorted by start."""
        m = self.minimum
        flats = self.flat_pieces_at_min()
        flat = self._segment_flat_at_min()
        n = len(self.breakpoints)
        pieces: list[tuple] = [("interval", a, b) for a, b in flats]
        for i in range(n):
            if self.values[i] == m and not flat[i] and not flat[i - 1]:
                pieces.append(("point", self.breakpoints[i]))
        pieces.sort(key=lambda p: p[1])
        return pieces

    def isolated_argmins(self) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """Entries (t, lambda_minus, lambda_plus, rho) for each isolated minimum point."""
        m = self.minimum
        n = len(self.breakpoints)
        if n == 1:
            return []
        flat = self._segment_flat_at_min()
        out = []
        for i in range(n):
            if self.values[i] != m or flat[i] or flat[i - 1]:
                continue
            t = self.breakpoints[i]
            t_prev = self.breakpoints[i - 1] - (1 if i == 0 else 0)
            j = (i + 1) % n
            t_next = self.breakpoints[j] + (1 if j == 0 else 0)
            lam_minus = (self.values[i - 1] - m) / (t - t_prev)
            lam_plus = (self.values[j] - m) / (t_next - t)
            rho = min(t - t_prev, t_next - t)
            out.append((t, lam_minus, lam_plus, rho))
        return out

    def delta0(self) -> Fraction | None:
        """Value gap above the minimum outside the argmin linear neighborhoods; None if empty."""
        m = self.minimum
        iso = self.isolated_argmins()
        n = len(self.breakpoints)
        hoods = []
        for idx, (t, _, _, _) in enumerate(iso):
            i = self.breakpoints.index(t)
            t_prev = self.breakpoints[i - 1] - (1 if i == 0 else 0)
            j = (i + 1) % n
            t_next = self.breakpoints[j] + (1 if j == 0 else 0)
            hoods.append((t_prev % 1, (t_next - t_prev) % 1 or Fraction(1)))
        best = None
        for k in range(n):
            tk = self.breakpoints[k]
            inside = False
            for start, width in hoods:
                off = (tk - start) % 1
                if 0 < off < width:
                    inside = True
                    break
            if not inside:
                vk = self.values[k]
                if best is None or vk < best:
                    best = vk
        return None if best is None else best - m

    def reflect(self) -> "CirclePWL":
        """The function t -> f(-t)."""
        if len(self.breakpoints) == 1:
            return CirclePWL((Fraction(0),), self.values)
        pts = sorted(((-t) % 1, v) for t, v in zip(self.breakpoints, self.values))
        return CirclePWL(tuple(p[0] for p in pts), tuple(p[1] for p in pts))


def make_pwl(points: list[tuple[Fraction, Fraction]]) -> CirclePWL:
    """Build a CirclePWL from (t, value) samples, deduplicating and removing collinear points."""
    seen = {}
    for t, v in points:
        t = Fraction(t) % 1
        if t in seen and seen[t] != v:
            raise ValueError("conflicting samples at one breakpoint")
        seen[t] = Fraction(v)
    pts = sorted(seen.items())
    if len({v for _, v in pts}) == 1:
        return CirclePWL((Fraction(0),), (pts[0][1],))
    changed = True
    while changed and len(pts) > 2:
        changed = False
        n = len(pts)
        for i in range(n):
            t0, v0 = pts[i - 1]
            t1, v1 = pts[i]
            t2, v2 = pts[(i + 1) % n]
            if i == 0:
                t0 -= 1
            if (i + 1) % n == 0:
                t2 += 1
            if (v1 - v0) * (t2 - t1) == (v2 - v1) * (t1 - t0):
                del pts[i]
                changed = True
                break
    return CirclePWL(tuple(t for t, _ in pts), tuple(v for _, v in pts))


def build_restriction(
    base: tuple[Fraction | int, ...], direction: tuple[int, ...]
) -> CirclePWL:
    """Upper envelope of t -> |{base_k + t*dir_k} - 1/2| over all coordinates."""
    if len(base) != len(direction):
        raise ValueError("base/direction length mismatch")
    if all(d == 0 for d in direction):
        raise ValueError("degenerate direction")
    base = tuple(Fraction(b) % 1 for b in base)

    def coord(k: int, t: Fraction) -> Fraction:
        return dist_to_half(base[k] + t * direction[k])

    kinks = set()
    for k, d in enumerate(direction):
        if d == 0:
            continue
        period = Fraction(1, abs(d))
        for h in (Fraction(0), HALF):
            t0 = ((h - base[k]) / d) % period
            for i in range(abs(d)):
                kinks.add(t0 + i * period)
    bps = sorted(kinks)
    nk = len(bps)
    n = len(base)
    cross = set()
    for idx in range(nk):
        t1 = bps[idx]
        t2 = bps[(idx + 1) % nk] + (1 if idx == nk - 1 else 0)
        if t1 == t2:
            continue
        vals1 = [coord(k, t1) for k in range(n)]
        vals2 = [coord(k, t2) for k in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                sa = (vals2[a] - vals1[a]) / (t2 - t1)
                sb = (vals2[b] - vals1[b]) / (t2 - t1)
                if sa == sb:
                    continue
                ts = t1 + (vals1[b] - vals1[a]) / (sa - sb)
                if t1 < ts < t2:
                    cross.add(ts % 1)
    all_bps = sorted(kinks | cross)
    samples = [(t, max(coord(k, t) for k in range(n))) for t in all_bps]
    return make_pwl(samples)


@dataclass(frozen=True)
class ApproxResult:
    """Nearest coset distances below/above a target, with their residue numerators."""

    approx_minus: Fraction
    approx_plus: Fraction
    r_minus: int
    r_plus: int
    modulus: int


def approx(tau: Fraction, b: Fraction, q: int) -> ApproxResult:
    """Distances from tau to the nearest points of (b + Z)/q on both sides, via residues."""
    if q < 1:
        raise ValueError("q must be positive")
    tau = Fraction(tau) % 1
    b = Fraction(b) % 1
    w, x = tau.numerator, tau.denominator
    y, z = b.numerator, b.denominator
    g = math.gcd(x, z)
    mod = x * z // g
    rm = ((w * z * q - x * y) // g) % mod
    rp = (-((w * z * q - x * y) // g)) % mod
    return ApproxResult(
        Fraction(rm, mod * q), Fraction(rp, mod * q), rm, rp, mod
    )


def coset_min_direct(f: CirclePWL, b: Fraction, q: int) -> Fraction:
    """Exact minimum of f over the q points (b + r)/q, r = 0..q-1."""
    if q < 1:
        raise ValueError("q must be positive")
    b = Fraction(b)
    return min(f.evaluate(Fraction(b + r, q)) for r in range(q))


@dataclass(frozen=True)
class GammaTable:
    """Coset-minimum table: min of f over (b+Z)/q equals min + gamma[q % modulus]/q for q >= q0."""

    modulus: int
    gamma: tuple[Fraction, ...]
    q0: int


def gamma_table(f: CirclePWL, b: Fraction, check_window: int = 4) -> GammaTable:
    """Build the coset-minimum table of f against the family (b + Z)/q, certified on a window."""
    m = f.minimum
    b = Fraction(b) % 1
    flats = f.flat_pieces_at_min()
    if flats:
        length = max(bb - aa for aa, bb in flats)
        table = GammaTable(1, (Fraction(0),), math.ceil(1 / length))
    else:
        iso = f.isolated_argmins()
        mod = math.lcm(b.denominator, *[t.denominator for t, _, _, _ in iso])
        gammas = []
        for res_q in range(mod):
            q_rep = res_q if res_q >= 1 else mod
            best = None
            for t, lam_minus, lam_plus, _ in iso:
                a = approx(t, b, q_rep)
                cand = min(lam_minus * a.r_minus, lam_plus * a.r_plus)
                cand = Fraction(cand, a.modulus)
                if best is None or cand < best:
                    best = cand
            gammas.append(best)
        rho_min = min(rho for _, _, _, rho in iso)
        lam_max = max(max(lm, lp) for _, lm, lp, _ in iso)
        q0 = math.ceil(1 / rho_min)
        d0 = f.delta0()
        if d0 is not None:
            q0 = max(q0, math.floor(lam_max / d0) + 1)
        table = GammaTable(mod, tuple(gammas), q0)
    for q in range(table.q0, table.q0 + check_window * table.modulus + 1):
        direct = coset_min_direct(f, b, q)
        formula = m + table.gamma[q % table.modulus] / q
        if direct != formula:
            raise RuntimeError("gamma table self-check failed")
    return table
