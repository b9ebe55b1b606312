"""Čech cohomology of graded modules with respect to monomial ideals.

Two computational routes:

* Fine (monomial) data.  For a fine-graded presentation F/N the piece M_v is
  F_v / N_v where F_v is spanned by the generators e_j with v >= deg e_j and
  N_v by the columns c with v >= deg c; the matrix of N_v does not depend on v.
  Hence every Čech piece depends on u only through the position of each
  coordinate u_i relative to the finitely many generator/column degrees.  We
  enumerate these chambers, which makes supports, end values and cohomological
  dimensions exact.

* Coarse data over k[x1..xt] (m = 0, arbitrary homogeneous entries).  Here
  H^i_{R+}(M) is the homology of the top Čech cohomology of a free resolution,
  H^i(M) = H_{t-i}(H^t(F_.)), where H^t(R(a)) is the module of inverse
  polynomials with the truncating action.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from .groebner import (
    FreeModule,
    InfiniteDimensionalPiece,
    ModulePresentation,
    graded_piece_basis,
    syzygies,
    minimal_generators,
    buchberger,
)
from .linalg import Echelon, rank
from .poly import MINUS_INF, MULTIGRADED, AlgebraError, Polynomial, RingSpec
from .resolution import ext_is_zero, minimal_free_resolution, projective_dimension

__all__ = [
    "CERTIFIED",
    "WINDOW_BOUNDED",
    "StabilizationFailure",
    "PreconditionFailure",
    "CechSpec",
    "MonomialModule",
    "LocalizedPiece",
    "CohomologyPiece",
    "EndReport",
    "localized_piece",
    "cohomology_piece",
    "cech_support",
    "end_of_cohomology",
    "reg_wrt",
    "a_star",
    "cohomological_dimension",
    "reg_polynomial_module",
    "prop211_reg",
    "infer_multigrading",
    "polynomial_module",
    "cd_via_pd",
    "cech_dims_at",
    "cech_dims_gb_route",
    "coarse_dims",
    "relative_cm_rank",
    "positive_cohomology_pieces",
    "CechSupport",
    "CdReport",
]

CERTIFIED = "CERTIFIED"
WINDOW_BOUNDED = "WINDOW_BOUNDED"


class StabilizationFailure(AlgebraError):
    """A localization failed to stabilize; an internal-consistency failure."""


class PreconditionFailure(AlgebraError):
    pass


# ---------------------------------------------------------------- spec of the ideal

@dataclass(frozen=True)
class CechSpec:
    """Monomial generators f_1..f_s; ``labels`` mark 'a0' or 'R+' provenance."""

    ring: RingSpec
    gens: tuple
    labels: tuple = ()

    def __post_init__(self):
        gens = tuple(tuple(g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        if not self.labels:
            m = self.ring.m
            labels = tuple("R+" if any(g[m:]) and not any(g[:m]) else "a0" for g in gens)
            object.__setattr__(self, "labels", labels)

    @property
    def s(self):
        return len(self.gens)

    @classmethod
    def for_ideal(cls, ring, a0_gens=(), positive=True):
        """a0 + R+ (or a0 alone with positive=False); a0 must be monomial."""
        gens, labels = [], []
        for f in a0_gens:
            if not f:
                continue
            if not f.is_term():
                raise AlgebraError("Čech generators must be monomials")
            e = next(iter(f.terms))
            if any(e[ring.m:]):
                raise AlgebraError("a0 generators must lie in the base ring")
            gens.append(e)
            labels.append("a0")
        if positive:
            for i in range(ring.t):
                gens.append(ring.var(ring.m + i))
                labels.append("R+")
        return cls(ring, tuple(gens), tuple(labels))

    @classmethod
    def positive_part(cls, ring):
        return cls.for_ideal(ring, (), True)

    def is_positive_only(self):
        m = self.ring.m
        return all(not any(g[:m]) for g in self.gens) and sorted(self.gens) == sorted(
            self.ring.var(m + i) for i in range(self.ring.t))

    def a0_gens(self):
        return [g for g, lab in zip(self.gens, self.labels) if lab == "a0"]

    def render(self):
        r = self.ring
        parts = [r.render_monomial(g) for g, lab in zip(self.gens, self.labels) if lab == "a0"]
        out = "(" + ", ".join(parts) + ")" if parts else ""
        if "R+" in self.labels:
            out = out + "+R+" if out else "R+"
        return out or "(0)"


# ---------------------------------------------------------------- fine pieces

class _Piece:
    """M_v = F_v / N_v for one chamber signature."""

    __slots__ = ("gens", "qbasis", "qindex", "E")

    def __init__(self, field_, gens, rels):
        self.gens = gens
        E = Echelon(field_)
        for r in rels:
            E.add(r)
        self.E = E
        piv = set(E.pivots)
        self.qbasis = [j for j in gens if j not in piv]
        self.qindex = {j: i for i, j in enumerate(self.qbasis)}

    def nf(self, vec):
        """Quotient coordinates of a vector over generator indices."""
        r = self.E.reduce(vec)
        return {self.qindex[j]: c for j, c in r.items()}

    @property
    def dim(self):
        return len(self.qbasis)


def infer_multigrading(M: ModulePresentation):
    """Fine generator degrees making every column fine-homogeneous, or None."""
    ring = M.ring
    Fm = M.module
    if ring.multigraded:
        return [Fm.gen_degree(j) for j in range(Fm.rank)]
    n = ring.n
    deg = [None] * Fm.rank
    cols = []
    for v in M.columns:
        ent = {}
        for (p, e), c in v.items():
            if p in ent:
                return None
            ent[p] = e
        cols.append(ent)
    for start in range(Fm.rank):
        if deg[start] is not None:
            continue
        d0 = [0] * n
        if n:
            d0[0] = Fm.gen_degree(start)
        deg[start] = tuple(d0)
        changed = True
        while changed:
            changed = False
            for ent in cols:
                known = [p for p in ent if deg[p] is not None]
                if not known:
                    continue
                p0 = known[0]
                target = tuple(a + b for a, b in zip(deg[p0], ent[p0]))
                for p, e in ent.items():
                    want = tuple(a - b for a, b in zip(target, e))
                    if deg[p] is None:
                        deg[p] = want
                        changed = True
                    elif deg[p] != want:
                        return None
    return deg


class MonomialModule:
    """The combinatorial shadow of a fine-graded presentation."""

    def __init__(self, M: ModulePresentation, gen_degrees=None):
        ring = M.ring
        self.M = M
        self.ring = ring
        self.F = ring.field
        if gen_degrees is None:
            gen_degrees = infer_multigrading(M)
            if gen_degrees is None:
                raise AlgebraError("presentation is not fine-graded")
        self.gdeg = [tuple(g) for g in gen_degrees]
        self.cols = []
        for v in M.columns:
            ent = {}
            d = None
            for (p, e), c in v.items():
                if p in ent:
                    raise AlgebraError("column entries must be single terms")
                ent[p] = c
                dd = tuple(a + b for a, b in zip(e, self.gdeg[p]))
                if d is not None and dd != d:
                    raise AlgebraError("column is not fine-homogeneous")
                d = dd
            self.cols.append((d, ent))
        n = ring.n
        thr = []
        for i in range(n):
            vals = {g[i] for g in self.gdeg} | {d[i] for d, _ in self.cols}
            thr.append(sorted(vals))
        self.thresholds = thr
        self._cache = {}

    @property
    def n(self):
        return self.ring.n

    def signature(self, v):
        gens = tuple(j for j, g in enumerate(self.gdeg) if all(a >= b for a, b in zip(v, g)))
        cols = tuple(c for c, (d, _) in enumerate(self.cols) if all(a >= b for a, b in zip(v, d)))
        return gens, cols

    def piece(self, v) -> _Piece:
        sig = self.signature(v)
        p = self._cache.get(sig)
        if p is None:
            gens, cols = sig
            p = _Piece(self.F, gens, [self.cols[c][1] for c in cols])
            self._cache[sig] = p
        return p

    def dim(self, v) -> int:
        return self.piece(v).dim

    def tmax(self, i):
        t = self.thresholds[i]
        return t[-1] if t else 0

    def chambers(self, coords=None):
        """Per-coordinate intervals (lo, hi); None marks an infinite end."""
        out = []
        for i in range(self.n):
            t = self.thresholds[i]
            ivs = []
            if not t:
                ivs.append((None, None))
            else:
                ivs.append((None, t[0] - 1))
                for a, b in zip(t, t[1:]):
                    ivs.append((a, b - 1))
                ivs.append((t[-1], None))
            out.append(ivs)
        return out


def _rep(iv):
    lo, hi = iv
    if lo is not None:
        return lo
    if hi is not None:
        return hi
    return 0


class _FineComplex:
    """The Čech complex of a monomial module at one fine degree u."""

    def __init__(self, mm: MonomialModule, gens, u, k=None):
        self.mm = mm
        self.gens = gens
        self.u = tuple(u)
        s = len(gens)
        n = mm.n
        support = {i for g in gens for i in range(n) if g[i]}
        if k is None:
            k = 0
            for i in support:
                k = max(k, mm.tmax(i) - self.u[i])
            k = max(k, 0) + 1
        self.k = k
        self.subsets = [list(combinations(range(s), i)) for i in range(s + 1)]
        self.pieces = {}
        self.offsets = []
        self.sizes = []
        for i in range(s + 1):
            off = {}
            pos = 0
            for sig in self.subsets[i]:
                d = [0] * n
                for l in sig:
                    for a in range(n):
                        d[a] += gens[l][a]
                v = tuple(self.u[a] + k * d[a] for a in range(n))
                p = mm.piece(v)
                self.pieces[sig] = p
                off[sig] = pos
                pos += p.dim
            self.offsets.append(off)
            self.sizes.append(pos)

    def differential(self, i):
        """Images of the basis of C^i in C^{i+1} (list of dicts)."""
        F = self.mm.F
        s = len(self.gens)
        out = []
        if i >= s:
            return [dict() for _ in range(self.sizes[i])] if i < len(self.sizes) else []
        for sig in self.subsets[i]:
            p = self.pieces[sig]
            for j in p.qbasis:
                img = {}
                for l in range(s):
                    if l in sig:
                        continue
                    tau = tuple(sorted(sig + (l,)))
                    sign = sum(1 for a in sig if a < l) % 2
                    q = self.pieces[tau]
                    base = self.offsets[i + 1][tau]
                    for col, c in q.nf({j: F.one}).items():
                        img[base + col] = F.neg(c) if sign else c
                out.append(img)
        return out

    @cached_property
    def ranks(self):
        F = self.mm.F
        s = len(self.gens)
        return [rank(F, self.differential(i)) if i < s else 0 for i in range(s + 1)]

    def dims(self):
        r = self.ranks
        return [self.sizes[i] - r[i] - (r[i - 1] if i else 0) for i in range(len(self.sizes))]

    # explicit classes, used by the Frobenius module
    def cocycle_basis(self, i):
        """(list of cocycles spanning a complement of B^i in Z^i, echelon of B^i)."""
        from .linalg import kernel
        F = self.mm.F
        s = len(self.gens)
        if i < s:
            Z = kernel(F, self.differential(i), self.sizes[i + 1])
        else:
            Z = [{c: F.one} for c in range(self.sizes[i])]
        B = Echelon(F)
        if i > 0:
            for v in self.differential(i - 1):
                B.add(v)
        H = []
        E = Echelon(F)
        for b in B.rows.values():
            E.add(b)
        for z in Z:
            if E.add(z):
                H.append(z)
        return H, B

    def component(self, i, vec):
        """Split a C^i vector into {sigma: {generator index: coef}}."""
        out = {}
        for sig in self.subsets[i]:
            p = self.pieces[sig]
            base = self.offsets[i][sig]
            part = {}
            for idx, j in enumerate(p.qbasis):
                c = vec.get(base + idx)
                if c is not None:
                    part[j] = c
            if part:
                out[sig] = part
        return out


def cech_dims_at(M, C: CechSpec, u, k=None, mm=None):
    mm = mm or _monomial(M)
    return _FineComplex(mm, C.gens, u, k).dims()


def _monomial(M) -> MonomialModule:
    mm = getattr(M, "_cmreg_mm", None)
    if mm is None:
        mm = MonomialModule(M)
        M._cmreg_mm = mm
    return mm


@dataclass
class CechSupport:
    """Cohomology dimensions on every chamber of the degree lattice."""

    ring: RingSpec
    spec: CechSpec
    chambers: list  # list of (box, dims); box = tuple of (lo, hi)

    def nonzero(self, i):
        return [box for box, d in self.chambers if i < len(d) and d[i]]

    def vanishes(self, i):
        return not self.nonzero(i)

    def end(self, i):
        m = self.ring.m
        best = MINUS_INF
        for box in self.nonzero(i):
            his = [hi for lo, hi in box[m:]]
            if any(h is None for h in his):
                raise AlgebraError(f"H^{i} unbounded above in the positive block")
            best = max(best, sum(his))
        return best

    def cd(self):
        idx = [i for i in range(self.spec.s + 1) if not self.vanishes(i)]
        return max(idx) if idx else MINUS_INF

    def dim_at(self, i, u):
        for box, d in self.chambers:
            if all((lo is None or a >= lo) and (hi is None or a <= hi) for a, (lo, hi) in zip(u, box)):
                return d[i] if i < len(d) else 0
        return 0

    def coarse_dim(self, i, n):
        """dim of the coarse piece H^i_n (sums fine pieces)."""
        m = self.ring.m
        total = 0
        for box, d in self.chambers:
            if i >= len(d) or not d[i]:
                continue
            if any(lo is None or hi is None for lo, hi in box[:m]):
                raise InfiniteDimensionalPiece("coarse piece is infinite-dimensional")
            ny = 1
            for lo, hi in box[:m]:
                ny *= hi - lo + 1
            total += d[i] * ny * _count_box_sum(box[m:], n)
        return total


def _count_box_sum(box, n):
    """#{w in box : sum(w) = n}; the box must be bounded above."""
    if any(hi is None for _, hi in box):
        raise AlgebraError("box unbounded above")
    if not box:
        return 1 if n == 0 else 0
    his = [hi for _, hi in box]
    total_hi = sum(his)
    los = []
    for idx, (lo, hi) in enumerate(box):
        floor_ = n - (total_hi - hi)
        los.append(floor_ if lo is None else max(lo, floor_))
    # dp over coordinates
    counts = {0: 1}
    for lo, hi in zip(los, his):
        if lo > hi:
            return 0
        new = {}
        for s_, c in counts.items():
            for a in range(lo, hi + 1):
                new[s_ + a] = new.get(s_ + a, 0) + c
        counts = new
    return counts.get(n, 0)


def cech_support(M: ModulePresentation, C: CechSpec) -> CechSupport:
    """Exact dimensions of all H^i_C(M) on the chamber decomposition (fine data only)."""
    cache = getattr(M, "_cmreg_support", None)
    if cache is None:
        cache = {}
        M._cmreg_support = cache
    key = (C.gens,)
    if key in cache:
        return cache[key]
    mm = _monomial(M)
    axes = mm.chambers()
    out = []
    for box in product(*axes):
        u = tuple(_rep(iv) for iv in box)
        d = _FineComplex(mm, C.gens, u).dims()
        out.append((box, tuple(d)))
    sup = CechSupport(M.ring, C, out)
    cache[key] = sup
    return sup


# ---------------------------------------------------------------- localization (GB route)

@dataclass
class LocalizedPiece:
    sigma: tuple
    degree: object
    basis: list  # (position, exponent) standard monomials at degree u + k deg f
    k: int

    @property
    def dim(self):
        return len(self.basis)


def _mult_rank(M, basis_src, v_tgt, mono):
    """Rank of multiplication by a monomial from a piece into the piece at v_tgt."""
    G = M.gb
    F = M.ring.field
    tgt = graded_piece_basis(M, v_tgt)
    idx = {t: i for i, t in enumerate(tgt)}
    rows = []
    for (p, e) in basis_src:
        w = {(p, tuple(a + b for a, b in zip(e, mono))): F.one}
        r = G.reduce(w)
        rows.append({idx[t]: c for t, c in r.items()})
    return rank(F, rows), len(tgt)


def localized_piece(M: ModulePresentation, sigma, u, spec: CechSpec = None, margin: int = 12,
                    start: int | None = None) -> LocalizedPiece:
    """(M[1/f_sigma])_u by stabilizing M_{u + k deg f_sigma} under multiplication by f_sigma.

    ``sigma`` is a tuple of generator indices of ``spec`` (default: the variables
    x1..xt).  Stabilization starts at K = (max GB-element degree) + s + 1 and is
    confirmed by two consecutive isomorphisms.
    """
    ring = M.ring
    spec = spec or CechSpec.positive_part(ring)
    f = [0] * ring.n
    for l in sigma:
        for a in range(ring.n):
            f[a] += spec.gens[l][a]
    f = tuple(f)
    Fm = M.module
    degs = []
    for v in M.gb.elements:
        (p, e) = next(iter(v))
        degs.append(Fm.term_degree(p, e))
    for j in range(Fm.rank):
        degs.append(Fm.gen_degree(j))
    fine = isinstance(u, tuple)
    if fine:
        if not ring.multigraded:
            raise AlgebraError("fine degrees need the MULTIGRADED regime")
        top = max([max(d) for d in degs] + [0])
        low = min(list(u) + [0])
        K = top - low + spec.s + 1 if start is None else start

        def at(k):
            return tuple(a + k * b for a, b in zip(u, f))
    else:
        if ring.m:
            raise InfiniteDimensionalPiece("coarse localized pieces need m = 0")
        if any(spec.gens[l][:ring.m] for l in sigma):
            raise AlgebraError("coarse localization only inverts x-variables")
        top = max(degs + [0])
        K = max(top - u, 0) + spec.s + 1 if start is None else start
        step = sum(f[ring.m:])

        def at(k):
            return u + k * step
    if not any(f):
        basis = graded_piece_basis(M, u)
        return LocalizedPiece(tuple(sigma), u, basis, 0)
    history = []
    for k in range(K, K + margin):
        b0 = graded_piece_basis(M, at(k))
        r1, n1 = _mult_rank(M, b0, at(k + 1), f)
        b1 = graded_piece_basis(M, at(k + 1))
        r2, n2 = _mult_rank(M, b1, at(k + 2), f)
        history.append(len(b0))
        if r1 == len(b0) == n1 and r2 == len(b1) == n2:
            return LocalizedPiece(tuple(sigma), u, b0, k)
    if not fine and len(history) > 2 and history[-1] > history[0]:
        raise InfiniteDimensionalPiece("coarse localized piece grows without bound")
    raise StabilizationFailure(f"localization at {sigma} did not stabilize at degree {u}")


def cech_dims_gb_route(M: ModulePresentation, C: CechSpec, u, k_scale=1):
    """Čech cohomology dims at fine u assembled from GB-stabilized localizations.

    An oracle independent of the chamber machinery: each localized piece is
    stabilized separately; all are then brought to a common exponent.
    """
    ring = M.ring
    F = ring.field
    s = C.s
    subsets = [list(combinations(range(s), i)) for i in range(s + 1)]
    K = 0
    for i in range(s + 1):
        for sig in subsets[i]:
            K = max(K, localized_piece(M, sig, u, C).k)
    K = K * k_scale + (k_scale - 1)
    G = M.gb
    bases, offsets, sizes = {}, [], []
    for i in range(s + 1):
        off, pos = {}, 0
        for sig in subsets[i]:
            f = [0] * ring.n
            for l in sig:
                for a in range(ring.n):
                    f[a] += C.gens[l][a]
            v = tuple(a + K * b for a, b in zip(u, f))
            b = graded_piece_basis(M, v)
            bases[sig] = (b, {t: idx for idx, t in enumerate(b)})
            off[sig] = pos
            pos += len(b)
        offsets.append(off)
        sizes.append(pos)
    ranks = []
    for i in range(s):
        rows = []
        for sig in subsets[i]:
            b, _ = bases[sig]
            for (p, e) in b:
                img = {}
                for l in range(s):
                    if l in sig:
                        continue
                    tau = tuple(sorted(sig + (l,)))
                    sign = sum(1 for a in sig if a < l) % 2
                    mono = tuple(K * g for g in C.gens[l])
                    r = G.reduce({(p, tuple(a + c for a, c in zip(e, mono))): F.one})
                    _, idx = bases[tau]
                    for t, c in r.items():
                        img[offsets[i + 1][tau] + idx[t]] = F.neg(c) if sign else c
                rows.append(img)
        ranks.append(rank(F, rows))
    ranks.append(0)
    return [sizes[i] - ranks[i] - (ranks[i - 1] if i else 0) for i in range(s + 1)]


# ---------------------------------------------------------------- coarse route (m = 0)

def _inverse_monomials(t, d):
    """Exponents beta <= -1 with sum d."""
    from .groebner import _compositions
    total = -d - t
    if total < 0:
        return []
    return [tuple(-1 - g for g in gam) for gam in _compositions(total, t)]


def _chain(M):
    ch = getattr(M, "_cmreg_chain", None)
    if ch is None:
        ch = minimal_free_resolution(M)
        M._cmreg_chain = ch
    return ch


def coarse_dims(M: ModulePresentation, n: int) -> list:
    """dims of H^i_{R+}(M)_n for i = 0..t via inverse polynomials (m = 0)."""
    cache = M.__dict__.setdefault("_cmreg_coarse", {})
    if n not in cache:
        cache[n] = _coarse_dims(M, n)
    return list(cache[n])


def _coarse_dims(M: ModulePresentation, n: int) -> list:
    ring = M.ring
    if ring.m:
        raise AlgebraError("coarse route needs m = 0")
    t = ring.t
    F = ring.field
    ch = _chain(M)
    p = ch.length
    bases = []
    for j in range(p + 1):
        Fm = ch.modules[j]
        b = []
        for c in range(Fm.rank):
            for beta in _inverse_monomials(t, n - Fm.gen_coarse(c)):
                b.append((c, beta))
        bases.append((b, {x: i for i, x in enumerate(b)}))
    ranks = [0] * (p + 2)
    for j in range(1, p + 1):
        src, _ = bases[j]
        _, tidx = bases[j - 1]
        cols = ch.differentials[j - 1]
        rows = []
        for (c, beta) in src:
            img = {}
            for (r, alpha), coef in cols[c].items():
                g = tuple(a + b for a, b in zip(alpha, beta))
                if all(x <= -1 for x in g):
                    col = tidx[(r, g)]
                    s_ = F.add(img.get(col, F.zero), coef)
                    if s_ == 0:
                        img.pop(col, None)
                    else:
                        img[col] = s_
            rows.append(img)
        ranks[j] = rank(F, rows)
    out = []
    for i in range(t + 1):
        j = t - i
        if j > p:
            out.append(0)
            continue
        size = len(bases[j][0])
        out.append(size - ranks[j] - ranks[j + 1])
    return out


# ---------------------------------------------------------------- pieces and ends

@dataclass
class CohomologyPiece:
    i: int
    degree: object
    dim: int


def _is_fine(M):
    try:
        _monomial(M)
        return True
    except AlgebraError:
        return False


def cohomology_piece(M: ModulePresentation, C: CechSpec, i: int, u) -> CohomologyPiece:
    ring = M.ring
    if i < 0 or i > C.s:
        return CohomologyPiece(i, u, 0)
    if isinstance(u, tuple):
        if not _is_fine(M):
            raise AlgebraError("fine pieces need fine-graded data")
        return CohomologyPiece(i, u, cech_dims_at(M, C, u)[i])
    n = int(u)
    if _is_fine(M):
        return CohomologyPiece(i, n, cech_support(M, C).coarse_dim(i, n))
    if ring.m == 0 and C.is_positive_only():
        d = coarse_dims(M, n)
        return CohomologyPiece(i, n, d[i] if i < len(d) else 0)
    raise AlgebraError("coarse pieces for this ideal need fine-graded data")


@dataclass
class EndEntry:
    i: int
    end: object
    status: str
    window: tuple | None = None

    def to_json(self):
        return {
            "i": self.i,
            "end": "minus_infinity" if self.end is MINUS_INF else self.end,
            "status": self.status,
            "window": list(self.window) if self.window else None,
        }


@dataclass
class EndReport:
    """end(H^i) for every i with a*, reg^k and cd bounds."""

    ideal: str
    entries: list
    level: int = 0
    cutoff: object = None
    cd_lower: object = None
    cd_upper: object = None
    notes: list = field(default_factory=list)

    def end(self, i):
        for e in self.entries:
            if e.i == i:
                return e.end
        return MINUS_INF

    @property
    def status(self):
        return CERTIFIED if all(e.status == CERTIFIED for e in self.entries) else WINDOW_BOUNDED

    @property
    def a_star(self):
        return max([e.end for e in self.entries], default=MINUS_INF)

    def reg(self, k=None):
        k = self.level if k is None else k
        return max([e.end + e.i for e in self.entries if e.i >= k], default=MINUS_INF)

    def reg_levels(self):
        top = max([e.i for e in self.entries], default=0)
        return [self.reg(k) for k in range(top + 1)]

    @property
    def cd_equal(self):
        return self.cd_lower == self.cd_upper

    def to_json(self):
        def enc(x):
            return "minus_infinity" if x is MINUS_INF else x

        return {
            "ideal": self.ideal,
            "level": self.level,
            "entries": [e.to_json() for e in self.entries],
            "a_star": enc(self.a_star),
            "reg": enc(self.reg()),
            "reg_levels": [enc(r) for r in self.reg_levels()],
            "cutoff": enc(self.cutoff),
            "cd": {"lower": enc(self.cd_lower), "upper": enc(self.cd_upper), "equal": self.cd_equal},
            "status": self.status,
            "notes": list(self.notes),
        }

    def render(self):
        lines = [f"local cohomology with respect to {self.ideal}"]
        for e in self.entries:
            end = "-inf" if e.end is MINUS_INF else str(e.end)
            st = "certified" if e.status == CERTIFIED else "window-bounded"
            lines.append(f"H^{e.i}: end = {end} ({st})")
        a = self.a_star
        r = self.reg()
        lines.append(f"a* = {'-inf' if a is MINUS_INF else a}")
        lines.append(f"reg^{self.level} = {'-inf' if r is MINUS_INF else r}")
        lo = "-inf" if self.cd_lower is MINUS_INF else self.cd_lower
        hi = "-inf" if self.cd_upper is MINUS_INF else self.cd_upper
        lines.append(f"cd in [{lo}, {hi}]" + (" (exact)" if self.cd_equal else ""))
        return "\n".join(lines)


def a_star(M, C=None):
    C = C or CechSpec.positive_part(M.ring)
    return reg_wrt(M, C).a_star


def _general_end(M, i, floor=None, extra=0):
    """Downward scan for end(H^i_{R+}(M)) in the coarse route."""
    ring = M.ring
    t = ring.t
    ch = _chain(M)
    j = t - i
    if j < 0 or j > ch.length or ch.modules[0].rank == 0:
        return MINUS_INF, CERTIFIED, None
    Fm = ch.modules[j]
    cutoff = -t - min(Fm.coarse_shifts())
    lo = cutoff - 4 * (ring.n + t + extra) if floor is None else floor
    # local duality: H^i vanishes identically iff Ext^{t-i}(M, R) does
    R = ModulePresentation.free(ring)
    if ext_is_zero(M, R, j, ch):
        return MINUS_INF, CERTIFIED, (lo, cutoff)
    for n in range(cutoff, lo - 1, -1):
        if coarse_dims(M, n)[i]:
            return n, CERTIFIED, (lo, cutoff)
    return MINUS_INF, WINDOW_BOUNDED, (lo, cutoff)


def end_of_cohomology(M: ModulePresentation, C: CechSpec, i: int, floor=None):
    """(end, status) of H^i_C(M)."""
    if i < 0 or i > C.s:
        return MINUS_INF, CERTIFIED
    if _is_fine(M):
        return cech_support(M, C).end(i), CERTIFIED
    if M.ring.m == 0 and C.is_positive_only():
        e, st, _ = _general_end(M, i, floor)
        return e, st
    raise AlgebraError("unsupported ideal for coarse data")


def reg_wrt(M: ModulePresentation, C: CechSpec, k: int = 0, floor=None) -> EndReport:
    if k < 0:
        raise AlgebraError("level must be non-negative")
    cache = M.__dict__.setdefault("_cmreg_reports", {})
    key = (C.gens, C.labels, k, floor)
    if key not in cache:
        cache[key] = _reg_wrt(M, C, k, floor)
    return cache[key]


def _reg_wrt(M, C, k, floor):
    entries = []
    notes = []
    if _is_fine(M):
        sup = cech_support(M, C)
        for i in range(C.s + 1):
            entries.append(EndEntry(i, sup.end(i), CERTIFIED))
        cd = sup.cd()
        lo_cd = hi_cd = cd
        notes.append("exact chamber decomposition")
        cutoff = None
        if not C.is_positive_only():
            pos = cech_support(M, CechSpec.positive_part(M.ring))
            cutoff = max([pos.end(i) for i in range(M.ring.t + 1)], default=MINUS_INF)
        else:
            cutoff = max([e.end for e in entries], default=MINUS_INF)
    elif M.ring.m == 0 and C.is_positive_only():
        ring = M.ring
        ch = _chain(M)
        for i in range(C.s + 1):
            e, st, win = _general_end(M, i, floor)
            entries.append(EndEntry(i, e, st, win))
        nz = [e.i for e in entries if e.end is not MINUS_INF]
        R = ModulePresentation.free(ring)
        certified_nonzero = [i for i in range(ring.t + 1)
                             if ring.t - i <= ch.length and not ext_is_zero(M, R, ring.t - i, ch)]
        lo_cd = max(nz, default=MINUS_INF)
        hi_cd = max(certified_nonzero, default=MINUS_INF)
        lo_cd = max(lo_cd, hi_cd) if hi_cd is not MINUS_INF else lo_cd
        cutoff = max([e.end for e in entries], default=MINUS_INF)
        notes.append("coarse route via inverse polynomials of a free resolution")
    else:
        raise AlgebraError("unsupported ideal for coarse data")
    return EndReport(C.render(), entries, k, cutoff, lo_cd, hi_cd, notes)


@dataclass
class CdReport:
    lower: object
    upper: object
    routes: dict

    @property
    def equal(self):
        return self.lower == self.upper

    def __iter__(self):
        return iter((self.lower, self.upper, self.equal))


def _squarefree(exps):
    return all(a <= 1 for e in exps for a in e)


def cd_via_pd(ring, gens):
    """cd_I(R) = pd(R/I) for a squarefree monomial ideal I (Lyubeznik)."""
    polys = [Polynomial.monomial(ring, e) for e in gens]
    return projective_dimension(ModulePresentation.cyclic(ring, polys))


def cohomological_dimension(M: ModulePresentation, C: CechSpec) -> CdReport:
    routes = {}
    if _is_fine(M):
        cd = cech_support(M, C).cd()
        routes["cech"] = cd
        lower = upper = cd
        is_free_cyclic = M.module.rank == 1 and not M.columns
        if is_free_cyclic and C.gens and _squarefree(C.gens):
            pd = cd_via_pd(M.ring, C.gens)
            routes["pd"] = pd
            if pd != cd:
                raise AlgebraError(f"cd routes disagree: Čech {cd} vs pd {pd}")
        return CdReport(lower, upper, routes)
    rep = reg_wrt(M, C)
    routes["ext"] = rep.cd_upper
    return CdReport(rep.cd_lower, rep.cd_upper, routes)


# ---------------------------------------------------------------- polynomial modules

def polynomial_module(M0: ModulePresentation, t: int, xnames=()) -> ModulePresentation:
    """M0[x1..xt] over k[y][x] from a presentation over k[y]."""
    r0 = M0.ring
    ring = RingSpec(r0.field, r0.m, t, r0.order, MULTIGRADED,
                    r0.ynames, tuple(xnames))
    pad = (0,) * t
    shifts = []
    for j in range(M0.module.rank):
        a = M0.module.shifts[j]
        if not isinstance(a, tuple):
            a = (0,) * r0.m if r0.m else ()
            if M0.module.shifts[j]:
                raise AlgebraError("base presentation needs fine shifts")
        shifts.append(tuple(a) + pad)
    Fm = FreeModule(ring, tuple(shifts))
    cols = [{(p, e + pad): c for (p, e), c in v.items()} for v in M0.columns]
    return ModulePresentation(Fm, cols)


@dataclass
class PolynomialModuleReport:
    cd: object
    status: str
    predicted_ends: dict


def reg_polynomial_module(M0: ModulePresentation, a0_gens, t: int) -> PolynomialModuleReport:
    """cd_{a0}(M0), which equals reg_{a0+R+}(M0[x1..xt]); plus the predicted ends."""
    base = M0.ring
    C = CechSpec.for_ideal(base, a0_gens, positive=False)
    if not C.gens:
        cd = MINUS_INF if M0.is_zero() else 0
        sup_nonzero = {0} if cd == 0 else set()
    else:
        sup = cech_support(M0, C)
        cd = sup.cd()
        sup_nonzero = {i for i in range(C.s + 1) if not sup.vanishes(i)}
    predicted = {}
    for i in range(C.s + t + 1):
        predicted[i] = -t if (i - t) in sup_nonzero else MINUS_INF
    return PolynomialModuleReport(cd, CERTIFIED, predicted)


# ---------------------------------------------------------------- relative-CM strand route

def _strand(mm: MonomialModule, w, base: RingSpec):
    """The R0-module M_{(*, w)} as (present generators, base shifts, relation vectors)."""
    m = mm.ring.m
    gens = [j for j, g in enumerate(mm.gdeg) if all(a >= b for a, b in zip(w, g[m:]))]
    rels = []
    for d, ent in mm.cols:
        if all(a >= b for a, b in zip(w, d[m:])):
            v = {}
            for j, c in ent.items():
                yexp = tuple(a - b for a, b in zip(d[:m], mm.gdeg[j][:m]))
                v[(j, yexp)] = c
            rels.append(v)
    return gens, rels


class _StrandComplex:
    """x-only Čech complex at x-degree w, as a complex of R0-modules."""

    def __init__(self, mm: MonomialModule, w):
        ring = mm.ring
        self.mm = mm
        m, t = ring.m, ring.t
        self.base = ring.base_ring()
        k = max([mm.tmax(m + i) - w[i] for i in range(t)] + [0]) + 1
        self.subsets = [list(combinations(range(t), i)) for i in range(t + 1)]
        self.blocks = {}
        for i in range(t + 1):
            for sig in self.subsets[i]:
                ww = tuple(w[a] + (k if a in sig else 0) for a in range(t))
                self.blocks[sig] = _strand(mm, ww, self.base)

    def term(self, i):
        """(free module, positions {(sig, j): pos}, relations) of C^i."""
        mm = self.mm
        m = mm.ring.m
        shifts, pos = [], {}
        rels = []
        for sig in self.subsets[i]:
            gens, r = self.blocks[sig]
            for j in gens:
                pos[(sig, j)] = len(shifts)
                shifts.append(tuple(-a for a in mm.gdeg[j][:m]) if m else 0)
            for v in r:
                rels.append({(pos[(sig, j)], e): c for (j, e), c in v.items()})
        return FreeModule(self.base, tuple(shifts)), pos, rels

    def images(self, i, pos_src, pos_tgt):
        F = self.mm.F
        t = self.mm.ring.t
        zero = self.base.one()
        out = []
        for (sig, j), p in sorted(pos_src.items(), key=lambda kv: kv[1]):
            img = {}
            for l in range(t):
                if l in sig:
                    continue
                tau = tuple(sorted(sig + (l,)))
                sign = sum(1 for a in sig if a < l) % 2
                img[(pos_tgt[(tau, j)], zero)] = F.neg(F.one) if sign else F.one
            out.append(img)
        return out

    def homology(self, g) -> ModulePresentation:
        """Presentation over R0 of H^g of the complex."""
        t = self.mm.ring.t
        Fg, pos_g, rel_g = self.term(g)
        if g < t:
            Fn, pos_n, rel_n = self.term(g + 1)
            imgs = self.images(g, pos_g, pos_n)
            _, syz = syzygies(imgs + rel_n, Fn, minimal=False)
            k = len(imgs)
            kernel = [{(p, e): c for (p, e), c in s.items() if p < k} for s in syz]
            kernel = [v for v in kernel if v]
        else:
            F = self.mm.F
            kernel = [{(p, self.base.one()): F.one} for p in range(Fg.rank)]
        image = list(rel_g)
        if g > 0:
            Fp, pos_p, _ = self.term(g - 1)
            image += [v for v in self.images(g - 1, pos_p, pos_g) if v]
        if not kernel:
            return ModulePresentation(FreeModule(self.base, ()), [], check=False)
        G = buchberger(image, Fg, check_graded=False)
        K = [v for v in kernel if not G.contains(v)]
        if not K:
            return ModulePresentation(FreeModule(self.base, ()), [], check=False)
        K = minimal_generators(K, Fg)
        S, syz = syzygies(K + image, Fg, minimal=False)
        k = len(K)
        rels = [{(p, e): c for (p, e), c in s.items() if p < k} for s in syz]
        rels = [v for v in rels if v]
        return ModulePresentation(FreeModule(self.base, S.shifts[:k]), rels, check=False)


@dataclass
class Prop211Result:
    reg: object
    g: int
    per_n: list  # (x-box, cd, max coarse degree)

    def to_json(self):
        def enc(x):
            return "minus_infinity" if x is MINUS_INF else x

        return {"reg": enc(self.reg), "g": self.g,
                "per_n": [{"box": [list(b) for b in box], "cd": enc(cd), "top": top}
                          for box, cd, top in self.per_n]}


def relative_cm_rank(M: ModulePresentation):
    """g when H^i_{R+}(M) != 0 exactly for i = g, else None."""
    sup = cech_support(M, CechSpec.positive_part(M.ring))
    nz = [i for i in range(M.ring.t + 1) if not sup.vanishes(i)]
    return nz[0] if len(nz) == 1 else None


def positive_cohomology_pieces(M: ModulePresentation, g: int):
    """Yield (x-box, R0-presentation of H^g_{R+}(M)_{(*, w)}) over x-chambers."""
    mm = _monomial(M)
    m = M.ring.m
    axes = mm.chambers()[m:]
    for box in product(*axes):
        w = tuple(_rep(iv) for iv in box)
        yield box, _StrandComplex(mm, w).homology(g)


def prop211_reg(M: ModulePresentation, a0_gens) -> Prop211Result:
    """sup{cd_{a0}(H^g_{R+}(M)_n) + n} + g for M relative Cohen-Macaulay w.r.t. R+."""
    g = relative_cm_rank(M)
    if g is None:
        raise PreconditionFailure("module is not relative Cohen-Macaulay with respect to R+")
    base = M.ring.base_ring()
    a0 = [Polynomial._raw(base, {e[:base.n]: c for e, c in f.terms.items()}) for f in a0_gens if f]
    C0 = CechSpec.for_ideal(base, a0, positive=False)
    best = MINUS_INF
    per_n = []
    for box, N in positive_cohomology_pieces(M, g):
        if N.module.rank == 0 or N.is_zero():
            continue
        if any(hi is None for _, hi in box):
            raise AlgebraError("H^g_{R+} piece nonzero on an x-unbounded chamber")
        top = sum(hi for _, hi in box)
        if C0.gens:
            cd = cech_support(N, C0).cd()
        else:
            cd = 0
        per_n.append((box, cd, top))
        if cd is not MINUS_INF:
            best = max(best, cd + top)
    return Prop211Result(best + g if best is not MINUS_INF else MINUS_INF, g, per_n)
