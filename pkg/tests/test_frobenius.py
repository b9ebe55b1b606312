import random
from itertools import product

import pytest

from cmreg.cech import CechSpec, _FineComplex, _monomial, cd_via_pd
from cmreg.frobenius import (
    F_NILPOTENT, F_NONVANISHING, _compose, _push, f_depth_probe, frobenius_on_piece,
)
from cmreg.groebner import ModulePresentation
from cmreg.poly import GF, QQ, AlgebraError, Polynomial, RingSpec
from cmreg.verify import SimplicialComplex


def _quotient(p, m, exps):
    Y = RingSpec(GF(p), m, 0)
    return ModulePresentation.cyclic(Y, [Polynomial.monomial(Y, e) for e in exps])


def test_examples():
    assert frobenius_on_piece(_quotient(2, 1, []), 1, (-1,), 1) == [[1]]
    # F_p itself: m = 1 and a0 = (y1)
    assert frobenius_on_piece(_quotient(3, 1, [(1,)]), 0, (0,), 2) == [[1]]
    assert frobenius_on_piece(_quotient(2, 2, [(1, 1)]), 1, (0, 0), 1) == [[1]]


def test_rejects_characteristic_zero():
    Y = RingSpec(QQ, 1, 0)
    with pytest.raises(AlgebraError):
        frobenius_on_piece(ModulePresentation.free(Y), 1, (-1,))


def test_nilpotent_socle_class():
    # y1 spans H^0 in degree (1,0); its square is zero
    Q = _quotient(2, 2, [(2, 0), (1, 1)])
    assert frobenius_on_piece(Q, 0, (1, 0), 1) == [[]]


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("facets", [[[0], [1], [2]], [[0, 1], [2, 3]], [[0], [1, 2], [3]]])
def test_composition(p, facets):
    S = SimplicialComplex(max(max(f) for f in facets) + 1, facets)
    Q = S.quotient(GF(p))
    F = GF(p)
    for u in product((0, -1), repeat=S.m):
        for i in range(S.m + 1):
            A = frobenius_on_piece(Q, i, u, 1)
            if not A or not A[0]:
                continue
            B = frobenius_on_piece(Q, i, u, 2)
            C = frobenius_on_piece(Q, i, u, 3)
            assert _compose(F, A, A) == B
            assert _compose(F, A, B) == C


@pytest.mark.parametrize("p", [2, 3, 5])
def test_semilinear_and_degree_mapping(p):
    rng = random.Random(p)
    F = GF(p)
    Q = _quotient(p, 3, [(1, 1, 0), (0, 1, 1)])
    mm = _monomial(Q)
    gens = tuple(Q.ring.var(a) for a in range(3))
    for _ in range(20):
        u = tuple(rng.randint(-2, 1) for _ in range(3))
        src = _FineComplex(mm, gens, u)
        tgt = _FineComplex(mm, gens, tuple(p * a for a in u), k=p * src.k)
        assert tgt.u == tuple(p * a for a in src.u)
        for i in range(4):
            n = src.sizes[i]
            if not n:
                continue
            z1 = {j: F(rng.randint(0, p - 1)) for j in range(n)}
            z2 = {j: F(rng.randint(0, p - 1)) for j in range(n)}
            c = F(rng.randint(1, p - 1))
            z1 = {j: x for j, x in z1.items() if x}
            z2 = {j: x for j, x in z2.items() if x}
            s = {}
            for j in set(z1) | set(z2):
                v = F.add(z1.get(j, 0), z2.get(j, 0))
                if v:
                    s[j] = v
            image = lambda z: {j: x for j, x in _push(src, tgt, i, z).items() if x}
            add = {}
            for j, x in list(image(z1).items()) + list(image(z2).items()):
                add[j] = F.add(add.get(j, 0), x)
            assert image(s) == {j: x for j, x in add.items() if x}
            scaled = {j: F.mul(c, x) for j, x in z1.items()}
            assert image(scaled) == {j: F.mul(F.power(c, p), x) for j, x in image(z1).items()}


def test_f_depth_examples():
    assert f_depth_probe(_quotient(2, 2, [(1, 0)])).fdepth == 1
    assert f_depth_probe(_quotient(2, 2, [(1, 0), (0, 1)])).fdepth == 0
    rep = f_depth_probe(_quotient(2, 2, [(1, 1)]))
    assert rep.fdepth == 1 and rep.per_i[1][0] == F_NONVANISHING
    assert rep.witnesses[1][1]  # a rendered witness cocycle
    nil = f_depth_probe(_quotient(2, 2, [(2, 0), (1, 1)]))
    assert nil.per_i[0] == (F_NILPOTENT, 1)
    assert nil.fdepth == 1 and nil.depth == 0


@pytest.mark.parametrize("p", [2, 3])
def test_cd_equals_dim_minus_f_depth(p):
    rng = random.Random(10 + p)
    for _ in range(12):
        m = rng.randint(2, 4)
        gens = set()
        for _ in range(rng.randint(1, 3)):
            e = tuple(1 if rng.random() < 0.5 else 0 for _ in range(m))
            if sum(e) >= 1:
                gens.add(e)
        gens = sorted(gens) or [(1,) + (0,) * (m - 1)]
        Q = _quotient(p, m, gens)
        rep = f_depth_probe(Q)
        assert rep.status == "DECIDED"
        cd = cd_via_pd(RingSpec(GF(p), m, 0), gens)
        assert cd == m - rep.fdepth, (gens, rep.to_json())
        # F-pure Stanley-Reisner rings: F-depth equals depth
        assert rep.fdepth == rep.depth
