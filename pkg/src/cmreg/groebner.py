"""Gröbner bases for submodules of shifted free modules.

Module elements are stored as dicts ``{(position, exponent): coefficient}``.
The module order is term-over-position, refined by generator weights so that
graded elements compare by degree first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from .poly import (
    MINUS_INF,
    MULTIGRADED,
    AlgebraError,
    Polynomial,
    RingSpec,
    mono_divides,
    mono_lcm,
)

__all__ = [
    "InfiniteDimensionalPiece",
    "FreeModule",
    "ModuleElement",
    "ModulePresentation",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "syzygy_basis",
    "syzygies",
    "minimal_generators",
    "graded_piece_basis",
    "krull_dimension",
    "annihilator",
    "ideal_quotient",
    "ideal_intersection",
    "ideal_quotient_annihilator",
    "radical_membership",
    "ideal_gb",
    "ideal_contains",
]


class InfiniteDimensionalPiece(AlgebraError):
    """A coarse graded piece over k[y] with m >= 1 is not finite-dimensional."""


# ---------------------------------------------------------------- free modules

@dataclass(frozen=True)
class FreeModule:
    """A free module with twists: generator j spans R(a_j), sitting in degree -a_j.

    Shifts are fine tuples in the MULTIGRADED regime and integers otherwise.
    """

    ring: RingSpec
    shifts: tuple

    def __post_init__(self):
        fine = self.ring.multigraded
        norm = []
        for a in self.shifts:
            if fine:
                a = tuple(int(v) for v in a)
                if len(a) != self.ring.n:
                    raise AlgebraError(f"fine shift {a} has wrong length")
            else:
                a = int(a)
            norm.append(a)
        object.__setattr__(self, "shifts", tuple(norm))

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def gen_degree(self, j):
        a = self.shifts[j]
        return tuple(-v for v in a) if self.ring.multigraded else -a

    def gen_coarse(self, j) -> int:
        a = self.shifts[j]
        return -sum(a[self.ring.m:]) if self.ring.multigraded else -a

    def gen_total(self, j) -> int:
        a = self.shifts[j]
        return -sum(a) if self.ring.multigraded else -a

    def term_degree(self, pos, exp):
        """Degree of the term exp * e_pos: fine tuple or coarse integer."""
        if self.ring.multigraded:
            g = self.gen_degree(pos)
            return tuple(a + b for a, b in zip(exp, g))
        return self.ring.coarse(exp) + self.gen_degree(pos)

    def coarse_shifts(self) -> list:
        if self.ring.multigraded:
            return [sum(a[self.ring.m:]) for a in self.shifts]
        return list(self.shifts)

    @cached_property
    def key(self):
        ring = self.ring
        wc = [self.gen_coarse(j) for j in range(self.rank)]
        wt = [self.gen_total(j) for j in range(self.rank)]
        m = ring.m
        if ring.order == "grevlex":
            rk = ring.key

            def key(term):
                pos, exp = term
                k = rk(exp)
                return (wc[pos] + k[0], wt[pos] + k[1]) + k[2:] + (-pos,)
        else:
            rk = ring.key

            def key(term):
                pos, exp = term
                return (rk(exp), -pos)
        del m
        return key

    def with_order(self, order):
        return FreeModule(self.ring.with_order(order), self.shifts)

    def direct_sum(self, other: "FreeModule") -> "FreeModule":
        return FreeModule(self.ring, self.shifts + other.shifts)


# ---------------------------------------------------------------- vectors

def vec_add_scaled(F, h, v, c, mono=None):
    """h += c * mono * v, in place."""
    if mono is None:
        for t, a in v.items():
            s = F.add(h.get(t, F.zero), F.mul(c, a))
            if s == 0:
                h.pop(t, None)
            else:
                h[t] = s
        return h
    for (pos, exp), a in v.items():
        t = (pos, tuple(x + y for x, y in zip(exp, mono)))
        s = F.add(h.get(t, F.zero), F.mul(c, a))
        if s == 0:
            h.pop(t, None)
        else:
            h[t] = s
    return h


def vec_scale(F, v, c, mono=None):
    if c == 0:
        return {}
    if mono is None:
        return {t: F.mul(c, a) for t, a in v.items()}
    return {(p, tuple(x + y for x, y in zip(e, mono))): F.mul(c, a) for (p, e), a in v.items()}


def vec_from_polys(polys) -> dict:
    out = {}
    for pos, f in enumerate(polys):
        for e, c in f.terms.items():
            out[(pos, e)] = c
    return out


def vec_to_polys(ring, v, rank) -> list:
    parts = [dict() for _ in range(rank)]
    for (pos, e), c in v.items():
        parts[pos][e] = c
    return [Polynomial._raw(ring, p) for p in parts]


def poly_vec(f: Polynomial) -> dict:
    return {(0, e): c for e, c in f.terms.items()}


def vec_poly(ring, v) -> Polynomial:
    return Polynomial._raw(ring, {e: c for (_, e), c in v.items()})


def vec_degree(Fm: FreeModule, v):
    """Common degree of the terms of v, or None when v is zero or not graded."""
    degs = {Fm.term_degree(p, e) for (p, e) in v}
    return degs.pop() if len(degs) == 1 else None


class ModuleElement:
    """An element of a free module, exposed as a tuple of polynomials."""

    __slots__ = ("module", "vec")

    def __init__(self, module: FreeModule, coords):
        self.module = module
        if isinstance(coords, dict):
            self.vec = {k: v for k, v in coords.items() if v != 0}
        else:
            coords = list(coords)
            if len(coords) != module.rank:
                raise AlgebraError("coordinate count does not match rank")
            self.vec = vec_from_polys(coords)

    def coords(self) -> list:
        return vec_to_polys(self.module.ring, self.vec, self.module.rank)

    def is_zero(self):
        return not self.vec

    def degree(self):
        return vec_degree(self.module, self.vec)

    def __add__(self, other):
        h = dict(self.vec)
        vec_add_scaled(self.module.ring.field, h, other.vec, self.module.ring.field.one)
        return ModuleElement(self.module, h)

    def __sub__(self, other):
        F = self.module.ring.field
        h = dict(self.vec)
        vec_add_scaled(F, h, other.vec, F.neg(F.one))
        return ModuleElement(self.module, h)

    def scale(self, c, mono=None):
        F = self.module.ring.field
        return ModuleElement(self.module, vec_scale(F, self.vec, F(c), mono))

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.vec == other.vec

    def __hash__(self):
        return hash(frozenset(self.vec.items()))

    def render(self):
        return "(" + ", ".join(f.render() for f in self.coords()) + ")"

    __repr__ = render


# ---------------------------------------------------------------- core GB machinery

def _lead(v, key):
    return max(v, key=key)


class _Reducer:
    """Division by a list of module elements with known leading terms."""

    def __init__(self, Fm: FreeModule, elems=()):
        self.Fm = Fm
        self.F = Fm.ring.field
        self.key = Fm.key
        self.vecs = []
        self.leads = []
        self.lcinv = []
        self.by_pos: dict = {}
        for v in elems:
            self.append(v)

    def append(self, v):
        lt = _lead(v, self.key)
        idx = len(self.vecs)
        self.vecs.append(v)
        self.leads.append(lt)
        self.lcinv.append(self.F.inv(v[lt]))
        self.by_pos.setdefault(lt[0], []).append(idx)
        return idx

    def find_divisor(self, term):
        pos, exp = term
        for idx in self.by_pos.get(pos, ()):
            le = self.leads[idx][1]
            if all(a <= b for a, b in zip(le, exp)):
                return idx
        return None

    def divide(self, v, rep=None, reps=None, quotients=None, full=True):
        """Reduce v.  Returns the remainder; updates rep/quotients in place.

        ``rep`` is reduced alongside using ``reps`` (tracking representations);
        ``quotients`` collects {(idx, mono): coef} with v = sum q*g + remainder.
        """
        F = self.F
        key = self.key
        h = dict(v)
        rem = {}
        while h:
            lt = max(h, key=key)
            c = h[lt]
            idx = self.find_divisor(lt)
            if idx is None:
                if not full:
                    rem.update(h)
                    break
                rem[lt] = c
                del h[lt]
                continue
            le = self.leads[idx][1]
            mono = tuple(a - b for a, b in zip(lt[1], le))
            q = F.mul(c, self.lcinv[idx])
            vec_add_scaled(F, h, self.vecs[idx], F.neg(q), mono)
            if rep is not None:
                vec_add_scaled(F, rep, reps[idx], F.neg(q), mono)
            if quotients is not None:
                t = (idx, mono)
                s = F.add(quotients.get(t, F.zero), q)
                if s == 0:
                    quotients.pop(t, None)
                else:
                    quotients[t] = s
        return rem


def _spair(F, key, f, g, lf, lg):
    """(multiplier_f, coef_f, multiplier_g, coef_g) with S = cf*mf*f - cg*mg*g."""
    lcm = mono_lcm(lf[1], lg[1])
    mf = tuple(a - b for a, b in zip(lcm, lf[1]))
    mg = tuple(a - b for a, b in zip(lcm, lg[1]))
    return mf, F.inv(f[lf]), mg, F.inv(g[lg])


def _run_buchberger(Fm: FreeModule, gens, track=False):
    """Return (basis vectors, reps) where reps express each basis vector in the gens."""
    F = Fm.ring.field
    key = Fm.key
    ideal_case = Fm.rank == 1
    red = _Reducer(Fm)
    reps = []
    ngens = len(gens)
    pairs = set()
    done = set()

    def pair_weight(i, j):
        lcm = mono_lcm(red.leads[i][1], red.leads[j][1])
        pos = red.leads[i][0]
        return (Fm.gen_total(pos) + sum(lcm), key((pos, lcm)), i, j)

    def add(v, rep):
        idx = red.append(v)
        reps.append(rep)
        for i in range(idx):
            if red.leads[i][0] == red.leads[idx][0]:
                pairs.add((i, idx))

    for gi, g in enumerate(gens):
        if not g:
            continue
        rep = {(gi, (0,) * Fm.ring.n): F.one} if track else None
        add(dict(g), rep)

    while pairs:
        i, j = min(pairs, key=lambda p: pair_weight(*p))
        pairs.discard((i, j))
        done.add((i, j))
        li, lj = red.leads[i], red.leads[j]
        if ideal_case and all(min(a, b) == 0 for a, b in zip(li[1], lj[1])):
            continue
        lcm = mono_lcm(li[1], lj[1])
        skip = False
        for k in range(len(red.vecs)):
            if k in (i, j) or red.leads[k][0] != li[0]:
                continue
            if mono_divides(red.leads[k][1], lcm):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a in done and b in done:
                    skip = True
                    break
        if skip:
            continue
        mf, cf, mg, cg = _spair(F, key, red.vecs[i], red.vecs[j], li, lj)
        s = vec_scale(F, red.vecs[i], cf, mf)
        vec_add_scaled(F, s, red.vecs[j], F.neg(cg), mg)
        srep = None
        if track:
            srep = vec_scale(F, reps[i], cf, mf)
            vec_add_scaled(F, srep, reps[j], F.neg(cg), mg)
        r = red.divide(s, srep, reps if track else None)
        if r:
            add(r, srep)

    # minimalize
    keep = []
    for i, (pos, exp) in enumerate(red.leads):
        redundant = False
        for j, (p2, e2) in enumerate(red.leads):
            if j == i or p2 != pos or not mono_divides(e2, exp):
                continue
            if e2 != exp or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    keep.sort(key=lambda i: key(red.leads[i]))
    vecs = [red.vecs[i] for i in keep]
    kreps = [reps[i] for i in keep] if track else None
    # interreduce and make monic
    out, out_reps = [], []
    for n, v in enumerate(vecs):
        others = _Reducer(Fm, vecs[:n] + vecs[n + 1:])
        lt = _lead(v, key)
        c = v[lt]
        tail = dict(v)
        del tail[lt]
        rep = None
        if track:
            rep = dict(kreps[n])
            oreps = kreps[:n] + kreps[n + 1:]
        r = others.divide(tail, rep, oreps if track else None)
        r[lt] = c
        inv = F.inv(c)
        out.append(vec_scale(F, r, inv))
        if track:
            out_reps.append(vec_scale(F, rep, inv))
    return out, (out_reps if track else None)


# ---------------------------------------------------------------- public API

@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis, sorted by increasing leading term."""

    module: FreeModule
    elements: list
    order: str = "TOP"
    reps: list | None = None
    ngens: int = 0

    @cached_property
    def reducer(self):
        return _Reducer(self.module, self.elements)

    @property
    def leads(self):
        return self.reducer.leads

    def reduce(self, v: dict) -> dict:
        return self.reducer.divide(v)

    def contains(self, v: dict) -> bool:
        return not self.reducer.divide(v)

    def is_unit(self) -> bool:
        """True when the basis generates the whole free module."""
        zero = (0,) * self.module.ring.n
        found = {p for (p, e) in self.leads if e == zero}
        return len(found) == self.module.rank

    def __len__(self):
        return len(self.elements)

    def as_elements(self):
        return [ModuleElement(self.module, v) for v in self.elements]


def _as_vecs(gens):
    out = []
    for g in gens:
        if isinstance(g, ModuleElement):
            out.append(dict(g.vec))
        elif isinstance(g, Polynomial):
            out.append(poly_vec(g))
        else:
            out.append(dict(g))
    return out


def buchberger(gens, Fm: FreeModule, *, check_graded=True, track=False) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule of ``Fm`` spanned by ``gens``."""
    vecs = _as_vecs(gens)
    if check_graded:
        for v in vecs:
            if v and vec_degree(Fm, v) is None:
                raise AlgebraError("ungraded generator rejected")
    elems, reps = _run_buchberger(Fm, vecs, track)
    return GroebnerBasis(Fm, elems, "TOP", reps, len(vecs))


def normal_form(v, G: GroebnerBasis):
    vec = _as_vecs([v])[0]
    for (p, e) in vec:
        if p >= G.module.rank or len(e) != G.module.ring.n:
            raise AlgebraError("rank mismatch")
    r = G.reduce(vec)
    if isinstance(v, ModuleElement):
        return ModuleElement(G.module, r)
    if isinstance(v, Polynomial):
        return vec_poly(v.ring, r)
    return r


def syzygy_module_spec(Fm: FreeModule, vecs) -> FreeModule:
    """Free module whose j-th generator has the degree of vecs[j]."""
    ring = Fm.ring
    shifts = []
    for v in vecs:
        d = vec_degree(Fm, v)
        if d is None:
            lt = _lead(v, Fm.key)
            d = Fm.term_degree(*lt)
        shifts.append(tuple(-a for a in d) if ring.multigraded else -d)
    return FreeModule(ring, tuple(shifts))


def _schreyer(G: GroebnerBasis):
    Fm = G.module
    F = Fm.ring.field
    key = Fm.key
    red = G.reducer
    S = syzygy_module_spec(Fm, G.elements)
    out = []
    for i, j in combinations(range(len(G.elements)), 2):
        li, lj = red.leads[i], red.leads[j]
        if li[0] != lj[0]:
            continue
        mf, cf, mg, cg = _spair(F, key, G.elements[i], G.elements[j], li, lj)
        s = vec_scale(F, G.elements[i], cf, mf)
        vec_add_scaled(F, s, G.elements[j], F.neg(cg), mg)
        q = {}
        r = red.divide(s, quotients=q)
        if r:
            raise AlgebraError("input is not a Gröbner basis")
        syz = {(i, mf): cf}
        vec_add_scaled(F, syz, {(j, mg): F.neg(cg)}, F.one)
        vec_add_scaled(F, syz, q, F.neg(F.one))
        if syz:
            out.append(syz)
    return S, out


def syzygy_basis(G: GroebnerBasis, minimal=True):
    """Generators of the syzygy module of G's elements (Schreyer's theorem).

    Returns (free module with Schreyer shifts, list of ModuleElements).  With
    ``minimal`` the Schreyer generators are pruned to a minimal set.
    """
    S, out = _schreyer(G)
    if minimal and out:
        out = minimal_generators(out, S)
    return S, [ModuleElement(S, v) for v in out]


def minimal_generators(vecs, Fm: FreeModule) -> list:
    """A minimal homogeneous generating set extracted from ``vecs``.

    Processes by increasing total degree and keeps an element only when it is
    not already in the span of the kept ones.
    """
    vecs = [v for v in _as_vecs(vecs) if v]

    def tdeg(v):
        p, e = next(iter(v))
        return Fm.gen_total(p) + sum(e)

    vecs.sort(key=lambda v: (tdeg(v), Fm.key(_lead(v, Fm.key))))
    kept = []
    G = None
    for v in vecs:
        if G is not None and G.contains(v):
            continue
        kept.append(v)
        G = buchberger(kept, Fm, check_graded=False)
    return kept


def syzygies(gens, Fm: FreeModule, minimal=True):
    """Syzygies of an arbitrary generator list.

    Returns (free module with one generator per input, list of syzygy dicts).
    Uses a tracked Gröbner basis plus Schreyer syzygies of the basis.
    """
    F = Fm.ring.field
    vecs = _as_vecs(gens)
    S = syzygy_module_spec(Fm, [v if v else {(0, Fm.ring.one()): F.one} for v in vecs])
    nz = [i for i, v in enumerate(vecs) if v]
    out = [{(i, Fm.ring.one()): F.one} for i, v in enumerate(vecs) if not v]
    if nz:
        G = buchberger([vecs[i] for i in nz], Fm, check_graded=False, track=True)
        T = G.reps  # basis element k = sum T[k] (in terms of nz-gens)
        _, sy = _schreyer(G)

        def through_T(s):
            res = {}
            for (k, mono), c in s.items():
                vec_add_scaled(F, res, T[k], c, mono)
            return {(nz[p], e): c for (p, e), c in res.items()}

        for s in sy:
            w = through_T(s)
            if w:
                out.append(w)
        red = G.reducer
        for local, gi in enumerate(nz):
            q = {}
            r = red.divide(vecs[gi], quotients=q)
            assert not r
            w = {(gi, Fm.ring.one()): F.one}
            vec_add_scaled(F, w, through_T(q), F.neg(F.one))
            if w:
                out.append(w)
    if minimal and out:
        out = minimal_generators(out, S)
    return S, out


# ---------------------------------------------------------------- presentations

class ModulePresentation:
    """The module F / (span of columns)."""

    def __init__(self, module: FreeModule, columns=(), check=True):
        self.module = module
        self.columns = [v for v in _as_vecs(columns) if v]
        if check:
            for v in self.columns:
                for (p, e) in v:
                    if p >= module.rank:
                        raise AlgebraError("column has too many coordinates")
                if vec_degree(module, v) is None:
                    raise AlgebraError("presentation column is not graded")
                if module.ring.multigraded:
                    if len({p for (p, _) in v}) != len(v):
                        raise AlgebraError("MULTIGRADED entries must be single terms")

    @property
    def ring(self):
        return self.module.ring

    @cached_property
    def gb(self) -> GroebnerBasis:
        return buchberger(self.columns, self.module, check_graded=False)

    def column_degrees(self):
        return [vec_degree(self.module, v) for v in self.columns]

    def is_zero(self) -> bool:
        return self.gb.is_unit()

    @classmethod
    def free(cls, ring, shifts=None):
        if shifts is None:
            shifts = [ring.one() if ring.multigraded else 0]
        return cls(FreeModule(ring, tuple(shifts)), [])

    @classmethod
    def cyclic(cls, ring, ideal_gens, shift=None):
        if shift is None:
            shift = ring.one() if ring.multigraded else 0
        Fm = FreeModule(ring, (shift,))
        return cls(Fm, [poly_vec(f) for f in ideal_gens if f])

    def matrix(self):
        """Columns as lists of polynomials."""
        return [vec_to_polys(self.ring, v, self.module.rank) for v in self.columns]

    def with_order(self, order):
        Fm = self.module.with_order(order)
        return ModulePresentation(Fm, self.columns, check=False)

    def __repr__(self):
        return f"coker(shifts={list(self.module.shifts)}, columns={len(self.columns)})"


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 0:
            yield (total,)
        return
    for a in range(total, -1, -1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def graded_piece_basis(M: ModulePresentation, u) -> list:
    """Standard monomials (position, exponent) spanning the piece M_u."""
    ring = M.ring
    Fm = M.module
    red = M.gb.reducer
    out = []
    if isinstance(u, tuple):
        if not ring.multigraded:
            raise AlgebraError("fine pieces need the MULTIGRADED regime")
        for j in range(Fm.rank):
            g = Fm.gen_degree(j)
            e = tuple(a - b for a, b in zip(u, g))
            if min(e, default=0) < 0:
                continue
            if red.find_divisor((j, e)) is None:
                out.append((j, e))
        return out
    n = int(u)
    if ring.m >= 1:
        raise InfiniteDimensionalPiece("coarse pieces over k[y] with m >= 1 are infinite-dimensional")
    for j in range(Fm.rank):
        d = n - Fm.gen_coarse(j)
        for e in _compositions(d, ring.t):
            if red.find_divisor((j, e)) is None:
                out.append((j, e))
    out.sort(key=lambda t: Fm.key(t), reverse=True)
    return out


# ---------------------------------------------------------------- ideals

def _unit_module(ring):
    return FreeModule(ring, (ring.one() if ring.multigraded else 0,))


def ideal_gb(ring, gens, check_graded=False) -> GroebnerBasis:
    return buchberger([poly_vec(f) for f in gens if f], _unit_module(ring), check_graded=check_graded)


def ideal_contains(ring, gens, f: Polynomial) -> bool:
    return ideal_gb(ring, gens).contains(poly_vec(f))


def ideal_quotient(ring, I, J) -> list:
    """Generators of (I : J)."""
    result = None
    for g in J:
        if not g:
            continue
        vecs = [poly_vec(g)] + [poly_vec(f) for f in I if f]
        Fm = _unit_module(ring)
        S, syz = syzygies(vecs, Fm, minimal=False)
        q = [vec_poly(ring, {(0, e): c for (p, e), c in s.items() if p == 0}) for s in syz]
        q = [f for f in q if f]
        result = q if result is None else ideal_intersection(ring, result, q)
    if result is None:
        return [Polynomial.constant(ring, 1)]
    return _reduced_ideal_gens(ring, result)


def ideal_intersection(ring, I, J) -> list:
    if not I or not J:
        return []
    Fm = FreeModule(ring, (ring.one(),) * 2 if ring.multigraded else (0, 0))
    one = ring.one()
    F = ring.field
    vecs = [{(0, one): F.one, (1, one): F.one}]
    vecs += [{(0, e): c for e, c in f.terms.items()} for f in I if f]
    vecs += [{(1, e): c for e, c in f.terms.items()} for f in J if f]
    _, syz = syzygies(vecs, Fm, minimal=False)
    out = [vec_poly(ring, {(0, e): c for (p, e), c in s.items() if p == 0}) for s in syz]
    return _reduced_ideal_gens(ring, [f for f in out if f])


def _reduced_ideal_gens(ring, gens):
    G = ideal_gb(ring, gens)
    return [vec_poly(ring, v) for v in G.elements]


def annihilator(M: ModulePresentation) -> list:
    """Generators of ann(M) as the intersection of the column quotients (N : e_j)."""
    ring = M.ring
    Fm = M.module
    F = ring.field
    result = None
    for j in range(Fm.rank):
        ej = {(j, ring.one()): F.one}
        _, syz = syzygies([ej] + M.columns, Fm, minimal=False)
        q = [vec_poly(ring, {(0, e): c for (p, e), c in s.items() if p == 0}) for s in syz]
        q = [f for f in q if f]
        result = q if result is None else ideal_intersection(ring, result, q)
        if not result:
            return []
    if result is None:  # rank 0: the zero module
        return [Polynomial.constant(ring, 1)]
    return _reduced_ideal_gens(ring, result)


def ideal_quotient_annihilator(M: ModulePresentation) -> list:
    return annihilator(M)


def krull_dimension_of_ideal(ring, gens):
    G = ideal_gb(ring, gens)
    leads = [e for (_, e) in G.leads]
    if any(not any(e) for e in leads):
        return MINUS_INF
    n = ring.n
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in leads]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            S = frozenset(S)
            if all(not sup <= S for sup in supports):
                return size
    return 0


def krull_dimension(M: ModulePresentation):
    """dim R/ann(M) via maximal independent sets modulo the initial ideal."""
    if M.module.rank == 0 or M.is_zero():
        return MINUS_INF
    if not M.columns:
        return M.ring.n
    return krull_dimension_of_ideal(M.ring, annihilator(M))


def radical_membership(f: Polynomial, I, ring=None) -> bool:
    """f in rad(I), via 1 in I + (1 - z f) over the ring with a fresh variable z."""
    ring = ring or f.ring
    if not f:
        return True
    m = ring.m
    big = RingSpec(ring.field, m + 1, ring.t, "grevlex", MULTIGRADED,
                   ring.ynames + ("_z",), ring.xnames)

    def lift(g):
        return Polynomial._raw(big, {e[:m] + (0,) + e[m:]: c for e, c in g.terms.items()})

    z = Polynomial.monomial(big, big.var(m))
    gens = [lift(g) for g in I if g] + [Polynomial.constant(big, 1) - z * lift(f)]
    G = ideal_gb(big, gens)
    return G.is_unit()


def enumerate_monomials(nvars, max_degree):
    for d in range(max_degree + 1):
        yield from _compositions(d, nvars)


def monomials_in_box(upper):
    return product(*(range(u + 1) for u in upper))
