import pytest

from cmreg.dsl import parse, render_script
from cmreg.groebner import ModulePresentation
from cmreg.poly import GF, QQ, Polynomial, RingSpec
from cmreg.verify import (
    FAILS, HOLDS, SKIPPED, STATEMENTS, SimplicialComplex, ara_bound, corpus, ex21_instance,
    hochster_dim, polynomial_instance, run_suite, verify,
)


def _free(m, field_=QQ):
    return ModulePresentation.free(RingSpec(field_, m, 0))


def test_hochster_examples():
    assert hochster_dim(SimplicialComplex(2, [[0], [1]]), 1, (0, 0)) == 1
    assert hochster_dim(SimplicialComplex(2, [[0, 1]]), 2, (-1, -1)) == 1
    for facets in ([[0]], [[0, 1], [2]], [[0, 1, 2]]):
        d = SimplicialComplex(3, facets)
        assert hochster_dim(d, 0, (0, 0, 0)) == 0


def test_simplicial_complex_round_trip():
    d = SimplicialComplex(3, [[0, 1], [1, 2], [0, 1]])
    assert d.facets == ((0, 1), (1, 2))
    assert d.nonfaces() == [(0, 2)]
    assert SimplicialComplex.from_ideal(3, d.ideal_exponents()) == d


def test_ara_bounds():
    R = RingSpec(QQ, 3, 0)
    assert ara_bound(R, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).exact
    assert ara_bound(R, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).upper == 3
    # (y1y2, y2y3, y1y3) has arithmetic rank 2
    tri = ara_bound(R, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    assert (tri.lower, tri.upper, tri.exact) == (2, 2, True)
    assert ara_bound(R, []).upper == 0


def test_statement_examples():
    r = verify("Ex2.1", ex21_instance(2, 1))
    assert (r.verdict, r.left, r.right) == (HOLDS, 2, (2, 0))
    inst = polynomial_instance("tri", _free(3), [(1, 1, 0), (0, 1, 1), (1, 0, 1)], 2)
    r = verify("Thm2.5", inst)
    assert r.verdict == HOLDS and r.left == 2 and r.right == 2
    inst = polynomial_instance("max2", _free(2), [(1, 0), (0, 1)], 1)
    r = verify("Cor2.6", inst)
    assert r.verdict == HOLDS and r.left == 2


def test_unknown_statement():
    with pytest.raises(KeyError):
        verify("Thm9.9", ex21_instance(1, 1))


def test_every_statement_has_a_check():
    insts = corpus(0, 20)
    seen = {r.statement for r in run_suite(insts)}
    seen.add("Ex2.1")  # only on dedicated instances
    assert seen == set(STATEMENTS)


def test_corpus_determinism():
    a = corpus(0, 1)
    assert len(a) == 1 and a[0].ring.regime == "GENERAL" and a[0].M.module.rank == 1
    assert a[0].ring.t == 2 and a[0].ring.m == 0
    x = [i.describe() for i in corpus(0, 20)]
    y = [i.describe() for i in corpus(0, 20)]
    assert x == y
    assert x != [i.describe() for i in corpus(1, 20)]


def test_descriptions_are_scripts():
    for inst in corpus(2, 10):
        s = parse(inst.describe())
        assert render_script(s) == render_script(parse(render_script(s)))


def test_thm213_filter_statistics():
    # frozen regression value for the generator filters
    res = [r for r in run_suite(corpus(1, 20)) if r.statement == "Thm2.13"]
    assert sum(r.verdict == HOLDS for r in res) == 5


def test_suite_healthy_and_thread_independent():
    insts = corpus(0, 20)
    a = [r.to_json() for r in run_suite(insts, threads=1)]
    b = [r.to_json() for r in run_suite(corpus(0, 20), threads=4)]
    assert a == b
    assert not any(r["verdict"] == FAILS for r in a)
    skipped = [r for r in a if r["verdict"] == SKIPPED]
    assert all(r["reason"] for r in skipped)  # the unmet hypothesis is named


def test_cor212i_counterexample():
    # R0 = k[y1,y2], M = R/(x1^2): the upper bound dim R0 + d is exceeded
    R = RingSpec(QQ, 2, 1)
    from cmreg.verify import Instance
    M = ModulePresentation.cyclic(R, [Polynomial.monomial(R, (0, 0, 2))])
    inst = Instance("x1sq", "monomial", M, ((1, 0), (0, 1)), None, ("Cor2.12i",), {})
    r = verify("Cor2.12i", inst)
    assert r.verdict == FAILS
    assert r.left == 3
