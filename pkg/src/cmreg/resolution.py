"""Minimal graded free resolutions, Betti tables, Ext, grade and depth."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .groebner import (
    FreeModule,
    ModulePresentation,
    buchberger,
    minimal_generators,
    syzygies,
    vec_add_scaled,
    vec_degree,
    vec_to_polys,
)
from .poly import MINUS_INF, AlgebraError, Polynomial

__all__ = [
    "ResolutionChain",
    "BettiTable",
    "prune_presentation",
    "minimal_free_resolution",
    "reg_thm213",
    "ext_module",
    "ext_is_zero",
    "grade",
    "grade_and_depth",
    "projective_dimension",
    "depth",
    "INFINITY",
]

INFINITY = "infinity"


def _entry(v, row):
    """The polynomial coefficient of e_row inside vector v, as {exp: coef}."""
    return {e: c for (p, e), c in v.items() if p == row}


def _unit_entry(v, zero):
    for (p, e), c in v.items():
        if e == zero:
            return p, c
    return None


def prune_presentation(M: ModulePresentation) -> ModulePresentation:
    """Minimal presentation: no scalar entries, minimally generated relations."""
    ring = M.ring
    F = ring.field
    zero = ring.one()
    shifts = list(M.module.shifts)
    cols = [dict(v) for v in M.columns if v]
    while True:
        hit = None
        for ci, v in enumerate(cols):
            u = _unit_entry(v, zero)
            if u is not None:
                hit = (ci, u)
                break
        if hit is None:
            break
        ci, (r, unit) = hit
        v = cols.pop(ci)
        inv = F.inv(unit)
        new = []
        for w in cols:
            ent = _entry(w, r)
            w = dict(w)
            for e, c in ent.items():
                vec_add_scaled(F, w, v, F.neg(F.mul(c, inv)), e)
            # drop row r and renumber
            w = {((p - 1 if p > r else p), e): c for (p, e), c in w.items() if p != r}
            if w:
                new.append(w)
        cols = new
        del shifts[r]
    Fm = FreeModule(ring, tuple(shifts))
    if cols:
        cols = minimal_generators(cols, Fm)
    return ModulePresentation(Fm, cols, check=False)


@dataclass
class ResolutionChain:
    """F_0 <- F_1 <- ... <- F_p with differentials stored as column lists."""

    modules: list
    differentials: list  # differentials[i-1] = columns of d_i : F_i -> F_{i-1}
    presentation: ModulePresentation

    @property
    def length(self):
        return len(self.modules) - 1

    @property
    def ring(self):
        return self.presentation.ring

    def shifts(self, i, coarse=True):
        Fm = self.modules[i]
        return Fm.coarse_shifts() if coarse else list(Fm.shifts)

    def matrix(self, i):
        """d_i as a list of columns, each a list of polynomials."""
        rank = self.modules[i - 1].rank
        return [vec_to_polys(self.ring, v, rank) for v in self.differentials[i - 1]]

    def apply(self, i, v):
        """d_i applied to a vector of F_i."""
        F = self.ring.field
        cols = self.differentials[i - 1]
        out = {}
        for (p, e), c in v.items():
            vec_add_scaled(F, out, cols[p], c, e)
        return out

    def check_complex(self) -> bool:
        for i in range(2, self.length + 1):
            for col in self.differentials[i - 1]:
                if self.apply(i - 1, col):
                    return False
        return True

    def is_minimal(self) -> bool:
        zero = self.ring.one()
        for cols in self.differentials:
            for v in cols:
                if any(e == zero for (_, e) in v):
                    return False
        return True

    def is_graded(self) -> bool:
        for i, cols in enumerate(self.differentials, start=1):
            Fm = self.modules[i - 1]
            for j, v in enumerate(cols):
                d = vec_degree(Fm, v)
                if d is None or d != self.modules[i].gen_degree(j):
                    return False
        return True

    @cached_property
    def betti(self) -> "BettiTable":
        counts = {}
        fine = {}
        for i, Fm in enumerate(self.modules):
            for a, af in zip(Fm.coarse_shifts(), Fm.shifts):
                counts[(i, a)] = counts.get((i, a), 0) + 1
                fine[(i, af)] = fine.get((i, af), 0) + 1
        return BettiTable(counts, fine if self.ring.multigraded else None)


class BettiTable:
    """Multiplicities n_{i,a} of the twist R(a) in F_i (coarse twists)."""

    def __init__(self, counts: dict, fine: dict | None = None):
        self.counts = {k: v for k, v in counts.items() if v}
        self.fine = fine

    @property
    def pd(self):
        if not self.counts:
            return MINUS_INF
        return max(i for i, _ in self.counts)

    def ranks(self):
        if not self.counts:
            return []
        return [sum(v for (i, _), v in self.counts.items() if i == k) for k in range(self.pd + 1)]

    def row_max(self):
        """-min_j a_i^j for each homological index i."""
        out = {}
        for (i, a) in self.counts:
            out[i] = max(out.get(i, -a), -a)
        return [out[i] for i in range(self.pd + 1)]

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.counts == other.counts

    def render(self) -> str:
        if not self.counts:
            return "zero module"
        p = self.pd
        cells = {}
        for (i, a), v in self.counts.items():
            cells[(-a - i, i)] = v
        rows = sorted({r for r, _ in cells})
        width = max(len(str(v)) for v in list(cells.values()) + self.ranks()) + 1
        label = max(len(f"{r}:") for r in rows + [0])
        label = max(label, len("total:"))
        lines = [" " * label + "".join(str(i).rjust(width) for i in range(p + 1))]
        lines.append("total:".rjust(label) + "".join(str(v).rjust(width) for v in self.ranks()))
        for r in rows:
            line = f"{r}:".rjust(label)
            for i in range(p + 1):
                v = cells.get((r, i))
                line += ("." if v is None else str(v)).rjust(width)
            lines.append(line)
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "pd": self.pd if self.counts else "minus_infinity",
            "ranks": self.ranks(),
            "entries": [
                {"i": i, "shift": a, "count": v}
                for (i, a), v in sorted(self.counts.items())
            ],
        }


def minimal_free_resolution(M: ModulePresentation, max_length: int | None = None) -> ResolutionChain:
    """Minimal graded free resolution, truncated at ``max_length``."""
    ring = M.ring
    bound = ring.n + 1
    if max_length is None:
        max_length = bound
    P = prune_presentation(M)
    modules = [P.module]
    diffs = []
    cols = P.columns
    target = P.module
    while cols and len(diffs) < max_length:
        S, syz = syzygies(cols, target, minimal=False)
        diffs.append(cols)
        modules.append(S)
        if len(diffs) > bound:
            raise AlgebraError("resolution did not terminate within the Hilbert syzygy bound")
        cols = minimal_generators(syz, S) if syz else []
        target = S
    return ResolutionChain(modules, diffs, P)


def projective_dimension(M: ModulePresentation):
    if M.is_zero():
        return MINUS_INF
    return minimal_free_resolution(M).length


def reg_thm213(chain: ResolutionChain) -> int:
    """max_i ( -min_j a_i^j - i ) over the coarse twists of a minimal resolution."""
    if not chain.modules or chain.modules[0].rank == 0:
        raise AlgebraError("empty resolution")
    best = None
    for i, Fm in enumerate(chain.modules):
        sh = Fm.coarse_shifts()
        if not sh:
            continue
        val = -min(sh) - i
        best = val if best is None else max(best, val)
    return best


# ---------------------------------------------------------------- Ext

def _hom_module(Fj: FreeModule, B: FreeModule) -> FreeModule:
    ring = Fj.ring
    shifts = []
    for a in Fj.shifts:
        for b in B.shifts:
            if ring.multigraded:
                shifts.append(tuple(y - x for x, y in zip(a, b)))
            else:
                shifts.append(b - a)
    return FreeModule(ring, tuple(shifts))


def _dual_images(chain: ResolutionChain, j: int, B: ModulePresentation):
    """Images of the generators of Hom(F_j, G) under d_{j+1}^* (in Hom(F_{j+1}, G))."""
    F = chain.ring.field
    r = B.module.rank
    nj = chain.modules[j].rank
    out = [dict() for _ in range(nj * r)]
    if j + 1 > chain.length:
        return out
    for c, col in enumerate(chain.differentials[j]):
        for (l, e), coef in col.items():
            for q in range(r):
                src = out[l * r + q]
                t = (c * r + q, e)
                s = F.add(src.get(t, F.zero), coef)
                if s == 0:
                    src.pop(t, None)
                else:
                    src[t] = s
    return out


def _copies(B: ModulePresentation, n: int):
    r = B.module.rank
    return [{(l * r + p, e): c for (p, e), c in col.items()} for l in range(n) for col in B.columns]


class _ExtData:
    def __init__(self, A: ModulePresentation, B: ModulePresentation, i: int, chain=None):
        self.chain = chain or minimal_free_resolution(A)
        ch = self.chain
        self.i = i
        self.B = B
        if i > ch.length:
            self.kernel = []
            self.image = []
            self.H = None
            return
        Hi = _hom_module(ch.modules[i], B.module)
        self.H = Hi
        ni = ch.modules[i].rank
        imgs = _dual_images(ch, i, B)
        if i + 1 <= ch.length:
            Hnext = _hom_module(ch.modules[i + 1], B.module)
            rel = _copies(B, ch.modules[i + 1].rank)
            gens = imgs + rel
            S, syz = syzygies(gens, Hnext, minimal=False)
            k = len(imgs)
            kernel = [{(p, e): c for (p, e), c in s.items() if p < k} for s in syz]
        else:
            F = ch.ring.field
            kernel = [{(p, ch.ring.one()): F.one} for p in range(Hi.rank)]
        image = _copies(B, ni)
        if i >= 1:
            image += [v for v in _dual_images(ch, i - 1, B) if v]
        self.kernel = [v for v in kernel if v]
        self.image = image

    @cached_property
    def image_gb(self):
        return buchberger(self.image, self.H, check_graded=False)

    def is_zero(self) -> bool:
        if not self.kernel:
            return True
        G = self.image_gb
        return all(G.contains(v) for v in self.kernel)

    def presentation(self) -> ModulePresentation:
        ring = self.chain.ring
        if not self.kernel:
            return ModulePresentation(FreeModule(ring, ()), [], check=False)
        G = self.image_gb
        K = minimal_generators([v for v in self.kernel if not G.contains(v)], self.H) \
            if not self.is_zero() else []
        if not K:
            return ModulePresentation(FreeModule(ring, ()), [], check=False)
        S, syz = syzygies(K + self.image, self.H, minimal=False)
        k = len(K)
        rels = []
        for s in syz:
            w = {(p, e): c for (p, e), c in s.items() if p < k}
            if w:
                rels.append(w)
        return ModulePresentation(FreeModule(ring, S.shifts[:k]), rels, check=False)


def ext_module(A: ModulePresentation, B: ModulePresentation, i: int, chain=None) -> ModulePresentation:
    """Presentation of Ext^i_R(A, B) from a free resolution of A mapped into B."""
    if i < 0:
        raise AlgebraError("Ext index must be non-negative")
    return prune_presentation(_ExtData(A, B, i, chain).presentation())


def ext_is_zero(A: ModulePresentation, B: ModulePresentation, i: int, chain=None) -> bool:
    return _ExtData(A, B, i, chain).is_zero()


def grade(ideal_gens, N: ModulePresentation):
    """grade_b(N) = min{ i : Ext^i(R/b, N) != 0 }, or INFINITY when bN = N."""
    ring = N.ring
    A = ModulePresentation.cyclic(ring, [f for f in ideal_gens if f])
    if N.is_zero():
        return INFINITY
    chain = minimal_free_resolution(A)
    for i in range(0, chain.length + 1):
        if not ext_is_zero(A, N, i, chain):
            return i
    return INFINITY


def depth(N: ModulePresentation):
    """Depth with respect to the *maximal ideal via Auslander-Buchsbaum."""
    if N.is_zero():
        return INFINITY
    return N.ring.n - projective_dimension(N)


def grade_and_depth(ideal_gens, N: ModulePresentation):
    return grade(ideal_gens, N), depth(N)


def maximal_ideal_gens(ring):
    return [Polynomial.monomial(ring, ring.var(i)) for i in range(ring.n)]
