import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chainlab import cover, suite
from chainlab.errors import (BaseMismatch, BasePointInvalid, MalformedMorphism,
                             MissingVariable, SizeCapExceeded, UndecidedSyntactically)
from chainlab.finring import build
from chainlab.fpalg import (Family, FPAlgebra, SchemeMap, compose_families, eval_poly,
                            fiber_points, identity_family, points, pullback_family,
                            structure_map, verify_morphism)
from chainlab.poly import IntPoly, parse_poly

import oracles
from conftest import SUITE

P = parse_poly
RAMIFIED = "quot(polyquot(Z/4,x,x^2-2),[2*x])"


def test_eval_poly_examples():
    assert eval_poly(P("x*y"), build("Z/4"), {"x": 2, "y": 2}) == 0
    R = build(RAMIFIED)
    assert eval_poly(P("x^2 - 2"), R, {"x": "x"}) == 0
    assert eval_poly(P("3*x"), build("Z/3"), {"x": 1}) == 0
    with pytest.raises(MissingVariable):
        eval_poly(P("x*y"), build("Z/4"), {"x": 1})


def test_points_examples():
    assert points(FPAlgebra(["x"], [P("x^2")]), build("Z/4")) == [(0,), (2,)]
    assert len(points(FPAlgebra(["x"]), build("Z/3"))) == 3
    assert points(FPAlgebra(["x", "y"], [P("x*y")]), build("Z/2")) == [(0, 0), (0, 1), (1, 0)]


def test_point_caps():
    with pytest.raises(SizeCapExceeded):
        points(FPAlgebra([f"x{i}" for i in range(7)]), build("Z/2"))
    with pytest.raises(SizeCapExceeded):
        points(FPAlgebra(["a", "b", "c", "d", "e"]), build("Z/32"))


ALGEBRAS = [
    FPAlgebra(["x", "y"], [P("x*y")]),
    FPAlgebra(["x", "y"], [P("x^2"), P("y^2 - x")]),
    FPAlgebra(["a", "b", "c"], [P("a*b - c"), P("c^2")]),
    FPAlgebra(["u"], [P("u^3 - u")]),
]


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda A: A.render())
def test_points_against_scalar_scan(A, suite_ring):
    R = suite_ring
    if R.size > 9 and len(A.vars) > 2:
        pytest.skip("scalar oracle too slow")
    assert points(A, R) == oracles.points(A, R)
    assert points(A, R, scan_order="reverse") == points(A, R)


def test_verify_morphism_examples():
    nodal = FPAlgebra(["x", "y"], [P("x*y")])
    assert verify_morphism(nodal, FPAlgebra(["x"]), [P("x"), 0])
    assert verify_morphism(FPAlgebra(["x", "y"]), FPAlgebra(["x", "t"]), [P("x"), P("x*t")])
    assert not verify_morphism(FPAlgebra(["x"], [P("x^2")]), FPAlgebra(["x"]), [P("x")])
    with pytest.raises(UndecidedSyntactically):
        verify_morphism(FPAlgebra(["x"], [P("x^2")]), FPAlgebra(["x"]), [P("x")],
                        assert_member=True)
    with pytest.raises(MalformedMorphism):
        verify_morphism(nodal, FPAlgebra(["x"]), [P("x")])
    with pytest.raises(MalformedMorphism):
        verify_morphism(nodal, FPAlgebra(["x"]), [P("x"), P("z")])


def test_structure_map_is_checked():
    base = FPAlgebra(["x"], [P("x^2")])
    with pytest.raises(MalformedMorphism):
        FPAlgebra(["y"], [], base, [P("y")])
    assert FPAlgebra(["y"], [P("y^2")], base, [P("y")]).base == base
    with pytest.raises(MissingVariable):
        FPAlgebra(["y"], [P("z")])


def test_family_base_mismatch():
    b1, b2 = FPAlgebra(["x"]), FPAlgebra(["y"])
    with pytest.raises(BaseMismatch):
        Family(b1, [FPAlgebra(["y"], [], b2, [P("y")])])


def test_fiber_points_examples():
    Z4 = build("Z/4")
    nodal = cover.named_family("rh-nodal")
    # 2*2 = 0, so (2, 2) lies on xy = 0 but not on the x-axis
    assert fiber_points(nodal.members[0], Z4, (2, 2)) == []
    with pytest.raises(BasePointInvalid):
        fiber_points(nodal.members[0], Z4, (1, 1))
    assert fiber_points(nodal.members[0], Z4, (2, 0)) == [(2,)]
    chain = cover.named_family("chain")
    assert fiber_points(chain.members[0], Z4, (2, 2)) == [(2, 1), (2, 3)]
    for M in cover.named_family("blowup-2").members:
        assert (0,) * len(M.vars) in fiber_points(M, Z4, (0, 0))


def _absolute_with_bindings(M):
    names = [f"b{i}" for i in range(len(M.base.vars))]
    rels = list(M.relations) + [img - IntPoly.var(n) for img, n in zip(M.base_images, names)]
    rels += [r.rename(dict(zip(M.base.vars, names))) for r in M.base.relations]
    return FPAlgebra(list(M.vars) + names, rels)


@pytest.mark.parametrize("name", ["chain", "rh-nodal", "zariski-a1"])
@pytest.mark.parametrize("spec", ["Z/4", "polyquot(Z/2,t,t^2)", "Z/3"])
def test_fibers_partition_member_points(name, spec):
    R = build(spec)
    U = cover.named_family(name)
    for M in U.members:
        union = []
        for b in points(U.base, R):
            union += [pt + b for pt in fiber_points(M, R, b)]
        assert sorted(union) == points(_absolute_with_bindings(M), R)


def test_pullback_chain_along_x_axis():
    chain = cover.named_family("chain")
    line = FPAlgebra(["x"])
    f = SchemeMap(line, chain.base, [P("x"), 0])
    V = pullback_family(chain, f)
    assert V.base == line and len(V.members) == 2
    R = build("Z/2")
    for M, N in zip(chain.members, V.members):
        for x in range(R.size):
            assert len(fiber_points(N, R, (x,))) == len(fiber_points(M, R, (x, 0)))


@pytest.mark.parametrize("spec", [r.spec for r in SUITE if r.ring.size <= 9])
def test_pullback_along_identity_preserves_points(spec):
    R = build(spec)
    for name in ("chain", "rh-nodal", "zariski-a1"):
        U = cover.named_family(name)
        ident = SchemeMap(U.base, U.base, [IntPoly.var(v) for v in U.base.vars])
        V = pullback_family(U, ident)
        for M, N in zip(U.members, V.members):
            for b in points(U.base, R):
                assert len(fiber_points(N, R, b)) == len(fiber_points(M, R, b))


def test_pullback_nodal_to_origin():
    nodal = cover.named_family("rh-nodal")
    pt = FPAlgebra([])
    V = pullback_family(nodal, SchemeMap(pt, nodal.base, [0, 0]))
    for sr in SUITE:
        assert cover.covers(V, sr.ring).covers


def test_pullback_requires_matching_target():
    with pytest.raises(MalformedMorphism):
        pullback_family(cover.named_family("chain"),
                        SchemeMap(FPAlgebra(["x"]), FPAlgebra(["x"]), [P("x")]))


def test_compose_with_identities():
    for name in ("chain", "zariski-a1", "rh-nodal"):
        U = cover.named_family(name)
        W = compose_families(U, [identity_family(M) for M in U.members])
        assert len(W.members) == len(U.members)
        for sr in SUITE:
            assert cover.covers(W, sr.ring).covers == cover.covers(U, sr.ring).covers


def _refine_by_pullback(U, V):
    return [pullback_family(V, SchemeMap(M, V.base, M.base_images)) for M in U.members]


def test_compose_chain_with_pulled_back_chain():
    U = cover.named_family("chain")
    W = compose_families(U, _refine_by_pullback(U, U))
    assert len(W.members) == 4
    for sr in SUITE:
        R = sr.ring
        if R.size <= 16:
            assert cover.covers(W, R).covers == cover.covers(U, R).covers


def test_compose_zariski_twice_is_locality():
    U = cover.named_family("zariski-a1")
    W = compose_families(U, _refine_by_pullback(U, U))
    assert len(W.members) == 4
    for sr in SUITE:
        assert cover.covers(W, sr.ring).covers == oracles.is_local(sr.ring)


def test_compose_needs_one_family_per_member():
    U = cover.named_family("chain")
    with pytest.raises(BaseMismatch):
        compose_families(U, [identity_family(U.members[0])])
    with pytest.raises(BaseMismatch):
        compose_families(U, [identity_family(U.members[1]), identity_family(U.members[0])])


def test_structure_map():
    M = cover.named_family("chain").members[0]
    assert structure_map(M).images == M.base_images


@pytest.mark.parametrize("name", ["zariski-a1", "rh-nodal", "rh-blowup", "chain", "nilred",
                                  "blowup-2", "blowup-3"])
def test_family_json_round_trip(name):
    U = cover.named_family(name)
    assert Family.from_json(json.loads(json.dumps(U.to_json()))) == U
    assert suite.load_family(name) == U


@given(st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_scheme_map_points_push_forward(vals):
    # a point of the chart maps to a point of the base
    R = build("Z/4")
    M = cover.named_family("chain").members[0]
    env = dict(zip(M.vars, vals))
    img = tuple(eval_poly(p, R, env) for p in M.base_images)
    assert tuple(vals) in fiber_points(M, R, img)
