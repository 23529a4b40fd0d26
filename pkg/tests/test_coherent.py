import pytest
from hypothesis import given
from hypothesis import strategies as st

from chainlab import coherent, cover, finring
from chainlab.coherent import (CoherentSentence, Disjunct, builtin, family_to_sentence,
                               holds, parse, sentence_to_family)
from chainlab.errors import ParseError, SizeCapExceeded, UnknownBuiltin
from chainlab.finring import build
from chainlab.fpalg import FPAlgebra
from chainlab.poly import IntPoly, parse_poly

import oracles
from conftest import SUITE

P = parse_poly
NAMED = ("zariski-a1", "rh-nodal", "rh-blowup", "chain", "nilred", "blowup-2")


def test_parse_local_sentence():
    phi = parse("forall a : exists b : a*b - 1 = 0 or exists c : (1 - a)*c - 1 = 0")
    assert phi.univars == ("a",)
    assert phi.antecedent == ()
    assert [d.exvars for d in phi.disjuncts] == [("b",), ("c",)]
    assert phi.disjuncts[1].equations == (P("c - a*c - 1"),)
    assert phi == builtin("local")[0]


def test_parse_domain_and_char():
    phi = parse("forall a, b where a*b = 0 : a = 0 or b = 0")
    assert phi.antecedent == (P("a*b"),)
    assert [d.equations for d in phi.disjuncts] == [(P("a"),), (P("b"),)]
    five = parse("forall a : 5*a = 0")
    assert len(five.disjuncts) == 1 and five.disjuncts[0].exvars == ()
    assert five == builtin("char(5)")[0]


def test_true_disjunct_and_empty_forall():
    phi = parse("forall : true")
    assert phi.univars == () and phi.disjuncts == (Disjunct(),)
    assert holds(phi, build("Z/2"))
    assert parse("forall x : exists y : true").disjuncts[0].exvars == ("y",)


@pytest.mark.parametrize("text", [
    "forall a : b = 0",
    "forall a where b = 0 : true",
    "forall a, a : true",
    "forall a : exists a : true",
    "forall or : true",
    "forall a : a = 0 or",
    "exists a : a = 0",
    "forall a : a",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_holds_examples():
    assert holds(builtin("local"), build("Z/4"))
    r = holds(builtin("domain"), build("Z/6"))
    assert not r.holds and r.counterexample == (2, 3)
    R = build("monext(Z/2,[x,y],[x^2,y^2])")
    r = holds(builtin("chain"), R)
    assert not r.holds
    assert {R.labels[a] for a in r.counterexample} == {"x", "y"}


def test_holds_counterexample_is_least():
    R = build("Z/6")
    r = holds(builtin("domain"), R)
    bad = [(a, b) for a in range(6) for b in range(6) if a * b % 6 == 0 and a and b]
    assert r.counterexample == bad[0]


def test_builtins():
    assert len(builtin("valuation")) == 2
    assert holds(builtin("valuation"), build("GF(2,2)"))
    r = holds(builtin("valuation"), build("Z/4"))
    assert not r.holds and r.sentence_index == 0
    assert holds(builtin("char(2)"), build("GF(2,2)"))
    assert holds(builtin(" char( 4 ) "), build("Z/2"))
    with pytest.raises(UnknownBuiltin):
        builtin("henselian")


def test_holds_size_cap():
    phi = parse("forall a, b, c, d, e : exists f : a = f")
    with pytest.raises(SizeCapExceeded):
        holds(phi, build("Z/32"))


def test_sentence_to_family_local():
    U = sentence_to_family(builtin("local")[0])
    assert U.base == FPAlgebra(["a"])
    assert [m.vars for m in U.members] == [("a", "b"), ("a", "c")]
    assert U.members[0].relations == (P("a*b - 1"),)
    assert U.members[1].relations == (P("(1 - a)*c - 1"),)


def test_sentence_to_family_domain_is_nodal():
    U = sentence_to_family(builtin("domain")[0])
    assert U.base.relations == (P("a*b"),)
    assert [m.relations for m in U.members] == [(P("a*b"), P("a")), (P("a*b"), P("b"))]
    nodal = cover.named_family("rh-nodal")
    for sr in SUITE:
        assert cover.covers(U, sr.ring).covers == cover.covers(nodal, sr.ring).covers


def test_sentence_to_family_char():
    U = sentence_to_family(builtin("char(5)")[0])
    assert len(U.members) == 1 and U.members[0].relations == (P("5*a"),)


def test_family_to_sentence_chain():
    phi = family_to_sentence(cover.named_family("chain"))
    assert phi.univars == ("x", "y") and phi.antecedent == ()
    assert phi.disjuncts == (Disjunct(("t",), (P("x*t - y"),)), Disjunct(("s",), (P("s*y - x"),)))


def test_family_to_sentence_zariski_is_locality():
    phi = family_to_sentence(cover.named_family("zariski-a1"))
    local = builtin("local")[0]
    ren = {"x": "a", "u": "b", "v": "c"}
    renamed = CoherentSentence(tuple(ren[v] for v in phi.univars), (),
                               tuple(Disjunct(tuple(ren[v] for v in d.exvars),
                                              tuple(g.rename(ren) for g in d.equations))
                                     for d in phi.disjuncts))
    assert renamed == local


def test_family_to_sentence_nilred():
    phi = family_to_sentence(cover.named_family("nilred"))
    assert phi == parse("forall x where x^2 = 0 : x = 0")


def test_family_to_sentence_renames_clashing_member_vars():
    base = FPAlgebra(["x", "y"])
    member = FPAlgebra(["y", "x"], [], base, [P("y"), P("x*y")])
    phi = family_to_sentence(cover.Family(base, [member]))
    assert phi.univars == ("x", "y")
    (d,) = phi.disjuncts
    assert len(d.exvars) == 1 and d.exvars[0] not in ("x", "y")
    for sr in SUITE[:8]:
        assert holds(phi, sr.ring).holds == cover.covers(cover.Family(base, [member]), sr.ring).covers


@pytest.mark.parametrize("name", ["local", "domain", "chain", "valuation", "char(2)", "char(3)",
                                  "char(4)"])
def test_round_trip_builtins(name, suite_ring):
    phis = builtin(name)
    expected = all(oracles.covers(sentence_to_family(p), suite_ring) is None for p in phis) \
        if suite_ring.size <= 9 else None
    h = holds(phis, suite_ring).holds
    c = all(cover.covers(sentence_to_family(p), suite_ring).covers for p in phis)
    assert h == c
    if expected is not None:
        assert c == expected


@pytest.mark.parametrize("name", NAMED)
def test_round_trip_named_families(name, suite_ring):
    U = cover.named_family(name)
    assert cover.covers(U, suite_ring).covers == holds(family_to_sentence(U), suite_ring).holds


def test_predicate_agreement(suite_ring):
    R = suite_ring
    assert holds(builtin("local"), R).holds == oracles.is_local(R)
    assert holds(builtin("domain"), R).holds == oracles.is_domain(R)
    assert holds(builtin("chain"), R).holds == oracles.is_chain(R)
    for n in (2, 3, 4, 9):
        assert holds(builtin(f"char({n})"), R).holds == (n % oracles.char(R) == 0)


# random sentences

UNI = ("a", "b")
EX = ("c", "d")


@st.composite
def small_polys(draw, names):
    p = IntPoly.const(draw(st.integers(-2, 2)))
    for _ in range(draw(st.integers(1, 2))):
        term = IntPoly.const(draw(st.integers(-2, 2)))
        for v in draw(st.lists(st.sampled_from(names), min_size=1, max_size=2)):
            term = term * IntPoly.var(v)
        p = p + term
    return p


@st.composite
def sentences(draw):
    n = draw(st.integers(1, 2))
    uni = UNI[:n]
    ante = draw(st.lists(small_polys(uni), max_size=1))
    disj = []
    for _ in range(draw(st.integers(1, 2))):
        ex = EX[:draw(st.integers(0, 1))]
        eqs = draw(st.lists(small_polys(uni + ex), max_size=2))
        disj.append(Disjunct(ex, tuple(e for e in eqs if e)))
    return CoherentSentence(uni, tuple(a for a in ante if a), tuple(disj))


RANDOM_RINGS = ["Z/4", "Z/6", "polyquot(Z/2,t,t^2)", "GF(2,2)", "prod(Z/2,Z/2)", "Z/5"]


@given(sentences())
def test_render_parse_is_identity(phi):
    assert parse(phi.render()) == phi


@given(sentences(), st.sampled_from(RANDOM_RINGS))
def test_random_sentence_round_trip(phi, spec):
    R = build(spec)
    h = holds(phi, R).holds
    U = sentence_to_family(phi)
    assert cover.covers(U, R).covers == h
    assert holds(family_to_sentence(U), R).holds == h
    assert (oracles.covers(U, R) is None) == h
