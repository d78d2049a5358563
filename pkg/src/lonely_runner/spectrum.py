"""Order-1 relative spectrum pipeline: residue classes, sectors, half-lines, certification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import Vec, gcd_ext, primitive_kernel, saturate_plane
from .pwl import CirclePWL, coset_min_direct, gamma_table
from .slices import slice_structure
from .torus import oracle_sweep, plane_proper, project_redundant

WITNESS_RANGE = 11  # progression indices 0..10 are checked for witnesses


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _norm_form(e: int, f: int) -> tuple[int, int]:
    """Sign-normalize a linear form so its first nonzero coefficient is positive."""
    if e < 0 or (e == 0 and f < 0):
        return -e, -f
    return e, f


@dataclass(frozen=True)
class Component:
    """Connected component of a diagonal slice with its transverse linear forms."""

    idx: int
    i: int
    j: int
    eps: int
    ell: int
    K: int
    E: int
    F: int
    A1: int
    A3: int
    f: CirclePWL
    minimum: Fraction
    flat_lengths: tuple[Fraction, ...]

    def q_of(self, A: int, B: int) -> int:
        return self.E * A + self.F * B

    def a_of(self, A: int, B: int) -> int:
        return self.A1 * A + self.A3 * B

    @property
    def key(self) -> tuple[int, int, int, int]:
        return self.i, self.j, self.eps, self.ell


@dataclass
class ClassSetup:
    """Per-subtorus slice data shared by every spectrum route."""

    u: Vec
    v: Vec
    d_value: Fraction
    comps: tuple[Component, ...]
    critical: tuple[Component, ...]
    m2: Fraction | None
    flats: tuple[Component, ...]
    tau_symmetry: bool = False
    _tables: dict = field(default_factory=dict, repr=False)
    _mirror: dict = field(default_factory=dict, repr=False)
    _m_prime: int | None = field(default=None, repr=False)

    def table(self, comp: Component, a: int):
        """Certified gamma table for one component at parameter residue a."""
        a = a % comp.K
        if self.tau_symmetry:
            # the mirrored component K - ell has an identical table
            twin = self._mirror.get(comp.idx, comp.idx)
            if twin < comp.idx:
                comp = self.comps[twin]
        key = (comp.idx, a)
        if key not in self._tables:
            b = Fraction(a * comp.ell, comp.K) % 1
            self._tables[key] = gamma_table(comp.f, b)
        return self._tables[key]

    @property
    def m_prime(self) -> int:
        """Common residue modulus: lcm of critical K values and gamma-table moduli."""
        if self._m_prime is None:
            mods = [1]
            for c in self.critical:
                mods.append(c.K)
                for a in range(c.K):
                    mods.append(self.table(c, a).modulus)
            self._m_prime = math.lcm(*mods)
        return self._m_prime


def class_setup(u: Vec, v: Vec, tau_symmetry: bool = False) -> ClassSetup:
    """Saturate, project, and collect every slice component with its linear forms."""
    u, v = saturate_plane(u, v)
    if not plane_proper(u, v):
        raise ValueError("improper subtorus")
    u, v = project_redundant(u, v)
    comps: list[Component] = []
    mirror: dict[int, int] = {}
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            for eps in (1, -1):
                s = slice_structure(u, v, i, j, eps)
                z1, z2, z3, z4 = s.z
                first = len(comps)
                for ell in range(s.K):
                    f = s.restrictions[ell]
                    flat = tuple(b - a for a, b in f.flat_pieces_at_min())
                    comps.append(
                        Component(
                            len(comps), i, j, eps, ell, s.K, z2, z4, z1, z3, f, f.minimum, flat
                        )
                    )
                for ell in range(s.K):
                    mirror[first + ell] = first + ((s.K - ell) % s.K)
    d = min(c.minimum for c in comps)
    critical = tuple(c for c in comps if c.minimum == d)
    rest = [c.minimum for c in comps if c.minimum > d]
    m2 = min(rest) if rest else None
    flats = tuple(c for c in critical if c.flat_lengths)
    setup = ClassSetup(u, v, d, tuple(comps), critical, m2, flats, tau_symmetry)
    setup._mirror.update(mirror)
    return setup


@dataclass(frozen=True)
class HalfLine:
    """Lattice half-line base + t*direction with the residues still needing analysis."""

    base: tuple[int, int]
    direction: tuple[int, int]
    modulus: int
    miss_residues: tuple[int, ...]


@dataclass(frozen=True)
class LineClassRecord:
    """Outcome of one residue class along a half-line."""

    base: tuple[int, int]
    direction: tuple[int, int]
    modulus: int
    residue: int
    outcome: str  # noncoprime | hit | constant | base | family
    value: Fraction | None = None
    gamma: Fraction | None = None
    slope: Fraction | None = None
    const: Fraction | None = None
    alpha: Fraction | None = None
    beta: Fraction | None = None
    s0: int = 0
    winner: tuple | None = None


@dataclass(frozen=True)
class SectorRecord:
    """Winning offset form on one merged sector of a residue class."""

    aleph: int
    beth: int
    start_ray: tuple[int, int]
    end_ray: tuple[int, int]
    kappa: int
    gamma: Fraction | None = None
    form: tuple[int, int] | None = None
    c0: int | None = None
    alpha: Fraction | None = None
    beta: Fraction | None = None
    winner: tuple | None = None


@dataclass(frozen=True)
class Progression:
    """Values d + 1/(alpha*s + beta) for s = 0, 1, 2, ... with oracle-checked witnesses."""

    alpha: Fraction
    beta: Fraction
    witnesses: tuple = ()
    unwitnessed: tuple = ()


@dataclass(frozen=True)
class SpectrumDescription:
    """Certified structure of the order-1 relative spectrum of one subtorus."""

    d_value: Fraction
    progressions: tuple[Progression, ...]
    base_value_attained: bool
    exceptional_values: tuple
    certified_bound: int


def halfline_analysis(
    setup: ClassSetup, base: tuple[int, int], direction: tuple[int, int]
) -> list[LineClassRecord]:
    """Classify every residue class along base + t*direction, t >= 0."""
    bA, bB = base
    dA, dB = direction
    det = abs(bA * dB - bB * dA)
    if det == 0:
        # line through the origin: at most one primitive parameter pair
        return []
    d = setup.d_value
    # non-critical constant-q components are floored by m2, so only critical
    # ones need exact coset values; their K already divides m_prime
    const_comps = [c for c in setup.critical if c.q_of(dA, dB) == 0]
    growing = [c for c in setup.critical if c.q_of(dA, dB) != 0]
    mt = math.lcm(setup.m_prime, det)
    records = []
    for res in range(mt):
        A0, B0 = bA + res * dA, bB + res * dB
        if math.gcd(A0, B0) != 1:
            records.append(LineClassRecord(base, direction, mt, res, "noncoprime"))
            continue
        consts = []
        for c in const_comps:
            qc = c.q_of(A0, B0)
            assert qc != 0, "constant form vanishing off the origin line"
            delta = _sign(qc)
            a = (delta * c.a_of(A0, B0)) % c.K
            b = Fraction(a * c.ell, c.K) % 1
            consts.append(coset_min_direct(c.f, b, abs(qc)))
        if consts and min(consts) == d:
            records.append(LineClassRecord(base, direction, mt, res, "hit", value=d))
            continue
        cands = []
        for c in growing:
            qd = c.q_of(dA, dB)
            dinf = _sign(qd)
            ch = Fraction(dinf * c.q_of(A0, B0))
            ph = Fraction(dinf * qd * mt)
            a = (dinf * c.a_of(A0, B0)) % c.K
            tab = setup.table(c, a)
            gam = tab.gamma[int(ch) % tab.modulus]
            cands.append((c, gam, ph, ch, tab.q0))
        if not cands:
            v = min(consts) if consts else None
            records.append(LineClassRecord(base, direction, mt, res, "constant", value=v))
            continue
        zero = [t for t in cands if t[1] == 0]
        if zero:
            c, gam, ph, ch, q0 = min(zero, key=lambda t: (t[4] - t[3]) / t[2])
            s0 = max(0, math.ceil((q0 - ch) / ph))
            records.append(
                LineClassRecord(
                    base, direction, mt, res, "base", value=d, s0=s0, winner=c.key
                )
            )
            continue
        cw, gw, pw, c0w, q0w = max(cands, key=lambda t: (t[2] / t[1], t[3] / t[1]))
        s0 = 0
        for c, gam, ph, ch, q0 in cands:
            s0 = max(s0, math.ceil((q0 - ch) / ph))
            if c is cw:
                continue
            coeff = gw * ph - gam * pw
            if coeff < 0:
                s0 = max(s0, math.ceil((gam * c0w - gw * ch) / coeff))
        floors = [v - d for v in consts]
        if setup.m2 is not None:
            floors.append(setup.m2 - d)
        for fl in floors:
            s0 = max(s0, math.ceil((gw / fl - c0w) / pw))
        records.append(
            LineClassRecord(
                base,
                direction,
                mt,
                res,
                "family",
                gamma=gw,
                slope=pw,
                const=c0w,
                alpha=pw / gw,
                beta=c0w / gw,
                s0=s0,
                winner=cw.key,
            )
        )
    return records


def _clockwise_key(ray: tuple[int, int]):
    a, b = ray
    if a == 0 and b > 0:
        return (0, Fraction(0))
    if a == 0:
        return (2, Fraction(0))
    return (1, Fraction(-b, a))


def sector_decomposition(setup: ClassSetup, aleph: int, beth: int) -> list[SectorRecord]:
    """Merged sector records for one residue class (aleph, beth) mod m_prime."""
    mp = setup.m_prime
    assert math.gcd(math.gcd(aleph, beth), mp) == 1
    gam: dict[tuple[int, int], Fraction] = {}
    for c in setup.critical:
        for delta in (1, -1):
            a = (delta * c.a_of(aleph, beth)) % c.K
            tab = setup.table(c, a)
            q_res = (delta * c.q_of(aleph, beth)) % tab.modulus
            gam[(c.idx, delta)] = tab.gamma[q_res]
    rays = {(0, 1), (0, -1)}
    for c in setup.critical:
        r = primitive_kernel(c.E, c.F)
        if r[0] > 0:
            rays.add(r)
    for c1, c2 in combinations(setup.critical, 2):
        for d1 in (1, -1):
            for d2 in (1, -1):
                g1 = gam[(c1.idx, d1)]
                g2 = gam[(c2.idx, d2)]
                if g1 == 0 or g2 == 0:
                    continue
                pe = g2 * d1 * c1.E - g1 * d2 * c2.E
                pf = g2 * d1 * c1.F - g1 * d2 * c2.F
                if pe == 0 and pf == 0:
                    continue
                den = math.lcm(pe.denominator, pf.denominator)
                r = primitive_kernel(int(pe * den), int(pf * den))
                if r[0] > 0:
                    rays.add(r)
    ordered = sorted(rays, key=_clockwise_key)
    recs = []
    for r1, r2 in zip(ordered, ordered[1:]):
        da, db = r1[0] + r2[0], r1[1] + r2[1]
        best = None
        for c in setup.critical:
            qm = c.q_of(da, db)
            assert qm != 0, "kernel ray crosses a sector interior"
            delta = _sign(qm)
            g = gam[(c.idx, delta)]
            key = (g / (delta * qm), g, delta * c.E, delta * c.F)
            if best is None or key < best[0]:
                best = (key, c, delta, g)
        _, cw, dw, gw = best
        if gw == 0:
            recs.append(SectorRecord(aleph, beth, r1, r2, 0, winner=cw.key))
            continue
        c0 = (dw * cw.q_of(aleph, beth)) % mp
        if c0 == 0:
            c0 = mp
        recs.append(
            SectorRecord(
                aleph,
                beth,
                r1,
                r2,
                1,
                gamma=gw,
                form=(dw * cw.E, dw * cw.F),
                c0=c0,
                alpha=Fraction(mp) / gw,
                beta=Fraction(c0) / gw,
                winner=cw.key,
            )
        )
    merged = [recs[0]]
    for r in recs[1:]:
        p = merged[-1]
        if (p.kappa, p.gamma, p.form) == (r.kappa, r.gamma, r.form):
            merged[-1] = SectorRecord(
                p.aleph, p.beth, p.start_ray, r.end_ray, p.kappa,
                gamma=p.gamma, form=p.form, c0=p.c0, alpha=p.alpha, beta=p.beta,
                winner=p.winner,
            )
        else:
            merged.append(r)
    if len({r.kappa for r in merged}) != 1:
        raise RuntimeError("kappa dichotomy violated within a residue class")
    return merged


def interior_rays(records: list[SectorRecord]) -> list[tuple[int, int]]:
    """Boundary rays between merged sectors, excluding the vertical half-plane edges."""
    return [r.start_ray for r in records if r.start_ray[0] != 0]


def normalize_beta(alpha: Fraction, beta: Fraction, d: Fraction) -> Fraction:
    """Smallest offset congruent to beta mod alpha whose value stays below 1/2."""
    bar = 2 / (1 - 2 * d)
    r = beta % alpha
    if r == 0:
        r = alpha
    if r <= bar:
        r += alpha * (math.floor((bar - r) / alpha) + 1)
    return r


def _absorb(fams: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Drop families whose value sets are contained in a coarser listed family."""
    out = []
    for f2 in fams:
        keep = True
        for f1 in fams:
            if f1 == f2:
                continue
            q = f2[0] / f1[0]
            r = (f2[1] - f1[1]) / f1[0]
            if q.denominator == 1 and q >= 1 and r.denominator == 1 and r >= 0:
                keep = False
                break
        if keep:
            out.append(f2)
    return out


def _value_index(sweep: dict) -> dict:
    index: dict = {}
    for pair, val in sweep.items():
        if val is not None:
            index.setdefault(val, []).append(pair)
    return index


def _witnesses(d: Fraction, alpha: Fraction, beta: Fraction, index: dict):
    wit = []
    unwit = []
    for s in range(WITNESS_RANGE):
        val = d + 1 / (alpha * s + beta)
        pairs = index.get(val)
        if pairs:
            A, B = min(pairs)
            wit.append((s, A, B))
        else:
            unwit.append((s, "no witness within certification bound"))
    return tuple(wit), tuple(unwit)


def realize_progressions(setup: ClassSetup, record, sweep: dict | None = None) -> list[Progression]:
    """Beta-normalized progression for one family record, with optional sweep witnesses."""
    if isinstance(record, SectorRecord):
        if record.kappa == 0:
            return []
        assert math.gcd(math.gcd(record.aleph, record.beth), setup.m_prime) == 1
        alpha, beta = record.alpha, record.beta
    else:
        if record.outcome != "family":
            return []
        alpha, beta = record.alpha, record.beta
    beta_n = normalize_beta(alpha, beta, setup.d_value)
    wit: tuple = ()
    unwit: tuple = ()
    if sweep is not None:
        wit, unwit = _witnesses(setup.d_value, alpha, beta_n, _value_index(sweep))
    return [Progression(alpha, beta_n, wit, unwit)]


class SpectrumAnalysis:
    """Route dispatcher: flat shortcut with strip lines, bounded flat locus, or sectors."""

    def __init__(self, u: Vec, v: Vec, tau_symmetry: bool = False):
        self.setup = class_setup(u, v, tau_symmetry)
        s = self.setup
        self.flat_lines: list = []
        self.sector_records: dict = {}
        self.flat_form: tuple[int, int] | None = None
        self.q_star: int | None = None
        if s.flats:
            forms = {_norm_form(c.E, c.F) for c in s.flats}
            if len(forms) > 1:
                # two independent flat directions pin the exceptional region in a box
                self.route = "finite"
                return
            self.route = "lines"
            E, F = forms.pop()
            self.flat_form = (E, F)
            self.q_star = min(math.ceil(1 / max(c.flat_lengths)) for c in s.flats)
            g, x, y = gcd_ext(E, F)
            assert g == 1
            dirv = primitive_kernel(E, F)
            for c in range(1, self.q_star):
                base = (x * c, y * c)
                for dd in (dirv, (-dirv[0], -dirv[1])):
                    recs = halfline_analysis(s, base, dd)
                    self.flat_lines.append((c, base, dd, recs))
        else:
            self.route = "sector"
            mp = s.m_prime
            for aleph in range(mp):
                for beth in range(mp):
                    if math.gcd(math.gcd(aleph, beth), mp) != 1:
                        continue
                    self.sector_records[(aleph, beth)] = sector_decomposition(s, aleph, beth)

    def raw_families(self) -> list[tuple[Fraction, Fraction]]:
        """Unnormalized (alpha, beta) pairs from every family record."""
        raw = []
        if self.route == "lines":
            for _, _, _, recs in self.flat_lines:
                raw.extend((r.alpha, r.beta) for r in recs if r.outcome == "family")
        elif self.route == "sector":
            for recs in self.sector_records.values():
                raw.extend((r.alpha, r.beta) for r in recs if r.kappa == 1)
        return raw

    def description(self, certify_bound: int = 200) -> SpectrumDescription:
        s = self.setup
        d = s.d_value
        fams = sorted({(a, normalize_beta(a, b, d)) for a, b in self.raw_families()})
        fams = _absorb(fams)
        sweep = oracle_sweep(s.u, s.v, certify_bound)
        index = _value_index(sweep)
        progs = []
        for a, b in fams:
            wit, unwit = _witnesses(d, a, b, index)
            progs.append(Progression(a, b, wit, unwit))
        base_att = d in index
        if not base_att:
            if self.route == "sector":
                base_att = any(
                    r.kappa == 0 for recs in self.sector_records.values() for r in recs
                )
            else:
                base_att = bool(s.flats)
        exceptional = []
        for val in sorted(index):
            if val == d:
                continue
            x = 1 / (val - d)
            if any((x - b) / a >= 0 and ((x - b) / a).denominator == 1 for a, b in fams):
                continue
            exceptional.append((val, min(index[val])))
        return SpectrumDescription(d, tuple(progs), base_att, tuple(exceptional), certify_bound)

    def predict(self, A: int, B: int) -> Fraction | None:
        """Formula value of D at (A, B) when above every validity threshold, else None."""
        s = self.setup
        d = s.d_value
        if A < 0 or math.gcd(A, B) != 1:
            return None
        if any(A * a + B * b == 0 for a, b in zip(s.u, s.v)):
            return None
        if self.route == "finite":
            for c in s.flats:
                q = c.q_of(A, B)
                if q != 0 and abs(q) >= math.ceil(1 / max(c.flat_lengths)):
                    return d
            return None
        if self.route == "lines":
            E, F = self.flat_form
            qf = E * A + F * B
            if abs(qf) >= self.q_star:
                return d
            if qf == 0:
                return None
            pA, pB = (A, B) if qf > 0 else (-A, -B)
            cval = abs(qf)
            for c0, base, dd, recs in self.flat_lines:
                if c0 != cval or not recs:
                    continue
                da, db = dd
                t, rem = divmod(pA - base[0], da) if da else divmod(pB - base[1], db)
                if rem != 0 or t < 0:
                    continue
                if (base[0] + t * da, base[1] + t * db) != (pA, pB):
                    continue
                mt = recs[0].modulus
                rec = recs[t % mt]
                sidx = t // mt
                if rec.outcome == "hit":
                    return d
                if rec.outcome == "base" and sidx >= rec.s0:
                    return d
                if rec.outcome == "family" and sidx >= rec.s0:
                    return d + rec.gamma / (rec.slope * sidx + rec.const)
                return None
            return None
        if A == 0:
            return None
        for c in s.critical:
            q = c.q_of(A, B)
            if q == 0:
                return None
            delta = _sign(q)
            a = (delta * c.a_of(A, B)) % c.K
            if abs(q) < s.table(c, a).q0:
                return None
        mp = s.m_prime
        recs = self.sector_records.get((A % mp, B % mp))
        if recs is None:
            return None
        for r in recs:
            r1, r2 = r.start_ray, r.end_ray
            if r1[0] * B - r1[1] * A <= 0 and A * r2[1] - B * r2[0] <= 0:
                if r.kappa == 0:
                    return d
                qw = r.form[0] * A + r.form[1] * B
                off = r.gamma / qw
                if s.m2 is not None and off > s.m2 - d:
                    return None
                return d + off
        return None


def analyze(u: Vec, v: Vec, tau_symmetry: bool = False) -> SpectrumAnalysis:
    """Full spectrum analysis object for span(u, v)."""
    return SpectrumAnalysis(u, v, tau_symmetry)


def flat_shortcut(u: Vec, v: Vec) -> list[HalfLine] | None:
    """Half-lines still needing analysis when flats exist; [] if bounded; None without flats."""
    ana = SpectrumAnalysis(u, v)
    if ana.route == "sector":
        return None
    if ana.route == "finite":
        return []
    out = []
    for _, base, dd, recs in ana.flat_lines:
        if not recs:
            continue
        mt = recs[0].modulus
        miss = tuple(
            r.residue for r in recs if r.outcome in ("family", "base", "constant")
        )
        out.append(HalfLine(base, dd, mt, miss))
    return out


def relative_spectrum(
    u: Vec, v: Vec, certify_bound: int = 200, tau_symmetry: bool = False
) -> SpectrumDescription:
    """Certified description of the order-1 relative spectrum of span(u, v)."""
    return SpectrumAnalysis(u, v, tau_symmetry).description(certify_bound)


@dataclass(frozen=True)
class CertifyReport:
    """Classification of every in-box oracle value against a spectrum description."""

    bound: int
    total: int
    improper: int
    base_count: int
    progression_counts: tuple[int, ...]
    exceptional: tuple


def classify_pairs(u: Vec, v: Vec, description: SpectrumDescription, bound: int):
    """Yield (A, B, value, label) for every in-box pair; label names the matching description part."""
    u, v = saturate_plane(u, v)
    u, v = project_redundant(u, v)
    sweep = oracle_sweep(u, v, bound)
    d = description.d_value
    fams = [(p.alpha, p.beta) for p in description.progressions]
    for pair in sorted(sweep):
        val = sweep[pair]
        if val is None:
            yield pair[0], pair[1], val, "improper"
            continue
        if val == d:
            yield pair[0], pair[1], val, "base"
            continue
        x = 1 / (val - d)
        for a, b in fams:
            t = (x - b) / a
            if t.denominator == 1 and t >= 0:
                yield pair[0], pair[1], val, f"progression({a},{b})"
                break
        else:
            yield pair[0], pair[1], val, "exceptional"


def certify(u: Vec, v: Vec, description: SpectrumDescription, bound: int) -> CertifyReport:
    """Sweep the parameter box and classify each exact D value against the description."""
    fams = [(p.alpha, p.beta) for p in description.progressions]
    index = {f"progression({a},{b})": k for k, (a, b) in enumerate(fams)}
    counts = [0] * len(fams)
    base = improper = total = 0
    exceptional: dict = {}
    for A, B, val, label in classify_pairs(u, v, description, bound):
        total += 1
        if label == "improper":
            improper += 1
        elif label == "base":
            base += 1
        elif label == "exceptional":
            exceptional.setdefault(val, (A, B))
        else:
            counts[index[label]] += 1
    return CertifyReport(
        bound, total, improper, base, tuple(counts), tuple(sorted(exceptional.items()))
    )
