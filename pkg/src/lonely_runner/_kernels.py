"""Brute-force line-minimum kernels with numba, numpy, and pure-python backends."""

from __future__ import annotations

import math
import os

import numpy as np

# keeps every int64 product inside the compiled kernels overflow-safe
MAX_ABS = 500_000_000

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*a, **k):  # pragma: no cover
        def wrap(f):
            return f

        return wrap


def backend() -> str:
    """Return the active kernel backend from LONELY_RUNNER_KERNEL (auto, numba, numpy, python)."""
    mode = os.environ.get("LONELY_RUNNER_KERNEL", "auto")
    if mode not in ("auto", "numba", "numpy", "python"):
        raise ValueError(f"unknown kernel backend {mode!r}")
    if mode == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    if mode == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is unavailable")
    return mode


def dedup_speeds(w) -> list[int]:
    """Absolute values of w with duplicates removed, first occurrence kept."""
    out: list[int] = []
    for c in w:
        a = abs(c)
        if a not in out:
            out.append(a)
    return out


def _pair_moduli(w: list[int]) -> list[int]:
    mods = set()
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            mods.add(abs(w[i] - w[j]))
            mods.add(w[i] + w[j])
    mods.discard(0)
    return sorted(mods)


def _d_line_python(w: list[int]) -> tuple[int, int]:
    """Unreduced (num, den) of the line minimum; w positive, deduplicated, len >= 2."""
    best_n, best_d = 1, 2
    for d in _pair_moduli(w):
        if best_n == 0:
            break
        if d < 2:
            continue
        if d % 2 == 1 and best_d >= 2 * d * best_n:
            continue
        for k in range(1, d // 2 + 1):
            num = 0
            full = True
            for wm in w:
                v = 2 * ((k * wm) % d) - d
                if v < 0:
                    v = -v
                if v > num:
                    num = v
                    if num * best_d >= 2 * d * best_n:
                        full = False
                        break
            if full:
                best_n, best_d = num, 2 * d
                if best_n == 0:
                    break
    return best_n, best_d


def _d_line_numpy(w: list[int]) -> tuple[int, int]:
    """Same contract as _d_line_python, vectorized over the inner sample index."""
    arr = np.asarray(w, dtype=np.int64)
    best_n, best_d = 1, 2
    for d in _pair_moduli(w):
        if best_n == 0:
            break
        if d < 2:
            continue
        if d % 2 == 1 and best_d >= 2 * d * best_n:
            continue
        ks = np.arange(1, d // 2 + 1, dtype=np.int64)
        r = (ks[:, None] * arr[None, :]) % d
        nums = np.abs(2 * r - d).max(axis=1)
        cand = int(nums.min())
        if cand * best_d < 2 * d * best_n:
            best_n, best_d = cand, 2 * d
    return best_n, best_d


@njit(cache=True)
def _d_line_nb(w):  # pragma: no cover - exercised through dispatch
    nd = w.shape[0]
    ds = np.empty(nd * (nd - 1), dtype=np.int64)
    c = 0
    for i in range(nd):
        for j in range(i + 1, nd):
            x = w[i] - w[j]
            ds[c] = x if x > 0 else -x
            c += 1
            ds[c] = w[i] + w[j]
            c += 1
    dss = np.sort(ds[:c])
    best_n = np.int64(1)
    best_d = np.int64(2)
    prev = np.int64(0)
    for idx in range(c):
        d = dss[idx]
        if d == prev or d < 2:
            continue
        prev = d
        if best_n == 0:
            break
        if (d & 1) == 1 and best_d >= 2 * d * best_n:
            continue
        for k in range(1, d // 2 + 1):
            num = np.int64(0)
            full = True
            for m in range(nd):
                v = 2 * ((k * w[m]) % d) - d
                if v < 0:
                    v = -v
                if v > num:
                    num = v
                    if num * best_d >= 2 * d * best_n:
                        full = False
                        break
            if full:
                best_n = num
                best_d = 2 * d
                if best_n == 0:
                    break
    return best_n, best_d


@njit(cache=True)
def _sweep_nb(u, v, bound):  # pragma: no cover - exercised through dispatch
    n = u.shape[0]
    out = np.empty(((bound + 1) * (2 * bound + 1), 4), dtype=np.int64)
    cnt = 0
    w = np.empty(n, dtype=np.int64)
    wd = np.empty(n, dtype=np.int64)
    for A in range(bound + 1):
        for B in range(-bound, bound + 1):
            if A == 0 and B <= 0:
                continue
            a = A
            b = B if B >= 0 else -B
            while b != 0:
                a, b = b, a % b
            if a != 1:
                continue
            proper = True
            for m in range(n):
                w[m] = A * u[m] + B * v[m]
                if w[m] == 0:
                    proper = False
            if not proper:
                out[cnt, 0] = A
                out[cnt, 1] = B
                out[cnt, 2] = 0
                out[cnt, 3] = 0
                cnt += 1
                continue
            nd = 0
            for m in range(n):
                c = w[m] if w[m] > 0 else -w[m]
                dup = False
                for t in range(nd):
                    if wd[t] == c:
                        dup = True
                        break
                if not dup:
                    wd[nd] = c
                    nd += 1
            if nd == 1:
                num = np.int64(0)
                den = np.int64(1)
            else:
                num, den = _d_line_nb(wd[:nd])
            out[cnt, 0] = A
            out[cnt, 1] = B
            out[cnt, 2] = num
            out[cnt, 3] = den
            cnt += 1
    return out[:cnt]


def d_line_raw(w: list[int]) -> tuple[int, int]:
    """Dispatch the per-line kernel; w positive deduplicated speeds, len >= 2."""
    mode = backend()
    if mode != "python" and max(w) > MAX_ABS:
        mode = "python"
    if mode == "numba":
        n, d = _d_line_nb(np.asarray(w, dtype=np.int64))
        return int(n), int(d)
    if mode == "numpy":
        return _d_line_numpy(w)
    return _d_line_python(w)


def sweep_raw(u: tuple[int, ...], v: tuple[int, ...], bound: int) -> list[tuple[int, int, int, int]]:
    """Rows (A, B, num, den) over the parameter box; den = 0 marks an improper line."""
    mode = backend()
    scale = bound * max(abs(a) + abs(b) for a, b in zip(u, v))
    if mode != "python" and scale > MAX_ABS:
        mode = "python"
    if mode == "numba":
        rows = _sweep_nb(
            np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64), bound
        )
        return [tuple(int(x) for x in row) for row in rows]
    core = _d_line_numpy if mode == "numpy" else _d_line_python
    out = []
    for A in range(bound + 1):
        for B in range(-bound, bound + 1):
            if A == 0 and B <= 0:
                continue
            if math.gcd(A, B) != 1:
                continue
            w = [A * a + B * b for a, b in zip(u, v)]
            if any(c == 0 for c in w):
                out.append((A, B, 0, 0))
                continue
            wd = dedup_speeds(w)
            if len(wd) == 1:
                out.append((A, B, 0, 1))
            else:
                num, den = core(wd)
                out.append((A, B, num, den))
    return out
