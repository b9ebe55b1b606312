"""Frobenius action on local cohomology of monomial quotients R0/a0 over F_p.

A Čech class at degree u with exponent k has components y^v / f_sigma^k
(v = u + k deg f_sigma); Frobenius sends it to y^{pv} / f_sigma^{pk}, a class
in degree pu computed with exponent pk.  On a chamber that is stable under
u -> pu the map is an endomorphism of a finite-dimensional F_p-space and its
nilpotence is decided by a rank computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .cech import CechSpec, _FineComplex, _monomial, _rep
from .groebner import ModulePresentation
from .linalg import Echelon, solve_in_span
from .poly import AlgebraError, MINUS_INF, Polynomial
from .resolution import INFINITY, depth

__all__ = [
    "F_NONVANISHING",
    "F_NILPOTENT",
    "UNDECIDED",
    "FDepthReport",
    "frobenius_on_piece",
    "f_depth_probe",
]

F_NONVANISHING = "F_NONVANISHING"
F_NILPOTENT = "F_NILPOTENT_AT"
UNDECIDED = "UNDECIDED"
GRADED_NOTE = "graded analogue: H^i taken with respect to m0 = (y) on the graded ring"


def _check(Q: ModulePresentation):
    ring = Q.ring
    if ring.field.char == 0:
        raise AlgebraError("Frobenius needs a prime field")
    if ring.t:
        raise AlgebraError("Frobenius probes work over the base ring k[y]")
    if Q.module.rank != 1 or any(Q.module.gen_degree(0)):
        raise AlgebraError("Frobenius probes need a cyclic quotient R0/a0 in degree 0")


def _express(cx: _FineComplex, i, vec, basis):
    """Coordinates of a cocycle class in the chosen cohomology basis."""
    H, B = basis
    brows = list(B.rows.values())
    sol = solve_in_span(cx.mm.F, brows + H, vec) if (brows or H) else None
    if sol is None:
        if not vec:
            return [0] * len(H)
        raise AlgebraError("image of a cocycle is not a cocycle")
    nb = len(brows)
    return [sol.get(nb + a, 0) for a in range(len(H))]


def _push(src: _FineComplex, tgt: _FineComplex, i, z):
    """Frobenius image of a C^i vector of ``src`` as a C^i vector of ``tgt``."""
    F = src.mm.F
    p = F.char
    out = {}
    for sig, part in src.component(i, z).items():
        q = tgt.pieces[sig]
        base = tgt.offsets[i][sig]
        for col, c in q.nf({j: F.power(c, p) for j, c in part.items()}).items():
            out[base + col] = c
    return out


def _frob_matrix(src, tgt, i, bsrc, btgt):
    """Columns: images of the basis of H^i(src) in H^i(tgt) coordinates."""
    return [_express(tgt, i, _push(src, tgt, i, z), btgt) for z in bsrc[0]]


def _compose(F, A, B):
    """A after B, matrices stored as lists of columns."""
    out = []
    for col in B:
        v = [0] * (len(A[0]) if A else 0)
        for a, c in enumerate(col):
            if c:
                for r, x in enumerate(A[a]):
                    v[r] = F.add(v[r], F.mul(c, x))
        out.append(v)
    return out


def _rank_cols(F, cols):
    E = Echelon(F)
    for c in cols:
        E.add({r: x for r, x in enumerate(c) if x})
    return len(E)


def frobenius_on_piece(Q: ModulePresentation, i: int, u, s: int = 1, spec: CechSpec = None):
    """Matrix (list of columns) of F^s: H^i(Q)_u -> H^i(Q)_{p^s u}."""
    _check(Q)
    if s < 1:
        raise AlgebraError("Frobenius power must be positive")
    spec = spec or CechSpec(Q.ring, tuple(Q.ring.var(a) for a in range(Q.ring.m)))
    mm = _monomial(Q)
    F = Q.ring.field
    p = F.char
    src = _FineComplex(mm, spec.gens, u)
    bsrc = src.cocycle_basis(i)
    n = len(bsrc[0])
    A = [[F.one if r == c else 0 for r in range(n)] for c in range(n)]
    for _ in range(s):
        tgt = _FineComplex(mm, spec.gens, tuple(p * a for a in src.u), k=p * src.k)
        btgt = tgt.cocycle_basis(i)
        A = _compose(F, _frob_matrix(src, tgt, i, bsrc, btgt), A) if A else []
        if not A:
            A = [[] for _ in range(n)]
        src, bsrc = tgt, btgt
    return A


def render_class(cx: _FineComplex, i, z):
    """Components of a cocycle as 'coef*y^v/f^k' strings (cyclic quotients)."""
    ring = cx.mm.ring
    out = []
    for sig, part in sorted(cx.component(i, z).items()):
        d = [0] * ring.n
        for l in sig:
            for a in range(ring.n):
                d[a] += cx.gens[l][a]
        for j, c in sorted(part.items()):
            num = tuple(a + cx.k * b for a, b in zip(cx.u, d))
            den = tuple(cx.k * b for b in d)
            out.append(f"{c}*{ring.render_monomial(num)}/{ring.render_monomial(den)}")
    return out


@dataclass
class FDepthReport:
    fdepth: object
    depth: object
    per_i: dict = field(default_factory=dict)  # i -> (status, s)
    status: str = "DECIDED"
    witnesses: dict = field(default_factory=dict)  # i -> (degree, rendered cocycle)
    notes: tuple = (GRADED_NOTE,)

    def to_json(self):
        def enc(x):
            return "minus_infinity" if x is MINUS_INF else x

        return {
            "fdepth": enc(self.fdepth),
            "depth": enc(self.depth),
            "per_i": {str(i): {"status": st, "s": s} for i, (st, s) in sorted(self.per_i.items())},
            "status": self.status,
            "witnesses": {str(i): {"degree": list(u), "cocycle": list(z)}
                          for i, (u, z) in sorted(self.witnesses.items())},
            "notes": list(self.notes),
        }


def _chamber_status(mm, gens, u, i, s_max):
    """(status, s) for the F-orbit of one chamber representative."""
    F = mm.F
    p = F.char
    cx = _FineComplex(mm, gens, u)
    basis = cx.cocycle_basis(i)
    n = len(basis[0])
    if n == 0:
        return None
    A = [[F.one if r == c else 0 for r in range(n)] for c in range(n)]  # identity
    cur, cur_basis = cx, basis
    for s in range(s_max + 1):
        nxt = _FineComplex(mm, gens, tuple(p * a for a in cur.u), k=p * cur.k)
        nb = nxt.cocycle_basis(i)
        M = _frob_matrix(cur, nxt, i, cur_basis, nb)
        stable = all(cur.pieces[sig] is nxt.pieces[sig] for sig in cur.pieces)
        if stable:
            # M is an endomorphism; iterate it until the image stabilizes or dies
            dim = len(M)
            img = A
            for e in range(dim + 1):
                if _rank_cols(F, img) == 0:
                    return F_NILPOTENT, s + e, None
                img = _compose(F, M, img)
            return F_NONVANISHING, None, render_class(cx, i, basis[0][0])
        A = _compose(F, M, A)
        if not A or _rank_cols(F, A) == 0:
            return F_NILPOTENT, s + 1, None
        cur, cur_basis = nxt, nb
    return UNDECIDED, None, None


def f_depth_probe(Q: ModulePresentation, s_max: int = 4, B: int | None = None) -> FDepthReport:
    """F-depth of Q = R0/a0: least i with H^i_m(Q) not F-nilpotent.

    Every chamber of the degree lattice is probed, so no box bound is needed;
    ``B`` is accepted for interface compatibility and caps |u| of chamber
    representatives when given.
    """
    _check(Q)
    ring = Q.ring
    gens = tuple(ring.var(a) for a in range(ring.m))
    mm = _monomial(Q)
    per_i = {}
    witnesses = {}
    boxes = list(product(*mm.chambers()))
    for i in range(ring.m + 1):
        worst = None
        for box in boxes:
            u = tuple(_rep(iv) for iv in box)
            if B is not None and any(abs(a) > B for a in u):
                continue
            st = _chamber_status(mm, gens, u, i, s_max)
            if st is None:
                continue
            if st[0] == F_NONVANISHING:
                worst = st[:2]
                witnesses[i] = (u, st[2])
                break
            if st[0] == UNDECIDED:
                worst = st[:2]
            elif worst is None or (worst[0] == F_NILPOTENT and st[1] > worst[1]):
                worst = st[:2]
        per_i[i] = worst or ("ZERO", None)
    fd = MINUS_INF
    status = "DECIDED"
    for i in range(ring.m + 1):
        st = per_i[i][0]
        if st == F_NONVANISHING:
            fd = i
            break
        if st == UNDECIDED:
            status = UNDECIDED
            break
    d = depth(Q)
    return FDepthReport(fd if status == "DECIDED" else None, MINUS_INF if d == INFINITY else d,
                        per_i, status, witnesses)
