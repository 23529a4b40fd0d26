"""The lifting condition (R ⊥ U), named generating families, blowup charts."""

import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import finring
from .errors import NotAChainRing, UnknownFamily
from .fpalg import Family, FPAlgebra, _cached_points, image_array
from .poly import IntPoly

NAMED_FAMILIES = ("zariski-a1", "rh-nodal", "rh-blowup", "chain", "blowup-n", "nilred")


@dataclass
class CoverReport:
    family: Optional[str]
    ring: str
    covers: bool
    failing_point: Optional[tuple] = None
    lift_map: dict = field(default_factory=dict)
    warnings: tuple = ()

    def to_json(self, R=None, lifts=False):
        out = {"family": self.family, "ring": self.ring, "covers": self.covers}
        if self.failing_point is not None:
            out["failing_point"] = list(self.failing_point)
            if R is not None:
                out["failing_point_labels"] = [R.labels[a] for a in self.failing_point]
        if lifts:
            out["lifts"] = [{"base": list(b), "member": i, "point": list(p)}
                            for b, (i, p) in sorted(self.lift_map.items())]
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def _encode(rows, size):
    rows = np.asarray(rows, dtype=np.int64)
    if rows.shape[1] == 0:
        return np.zeros(len(rows), dtype=np.int64)
    w = size ** np.arange(rows.shape[1] - 1, -1, -1, dtype=np.int64)
    return rows @ w


def covers(U, R):
    """Does every R-point of the base lift to some member?

    Lifts are recorded first-found: lowest member index, then the least
    member point in canonical order.
    """
    base_pts = _cached_points(U.base, R)
    base_keys = _encode(base_pts, R.size)
    lifted = {}
    for i, M in enumerate(U.members):
        pts = _cached_points(M, R)
        if len(pts) == 0:
            continue
        keys = _encode(image_array(M, R, pts), R.size)
        uniq, first = np.unique(keys, return_index=True)
        for k, j in zip(uniq.tolist(), first.tolist()):
            if k not in lifted:
                lifted[k] = (i, tuple(int(x) for x in pts[j]))
    lift_map = {}
    failing = None
    for row, k in zip(base_pts, base_keys.tolist()):
        if k in lifted:
            lift_map[tuple(int(x) for x in row)] = lifted[k]
        elif failing is None:
            failing = tuple(int(x) for x in row)
    warnings = ()
    if U.chart_model and R.size > 1 and not finring.is_local(R):
        warnings = (f"{U.name or 'family'} presents a blowup by affine charts; "
                    f"over the non-local ring {R.spec} chart lifting is only sufficient",)
    return CoverReport(U.name, R.spec, failing is None, failing, lift_map, warnings)


# named families

def _v(name):
    return IntPoly.var(name)


def _blowup(n):
    xs = [f"x{i}" for i in range(1, n + 1)]
    base = FPAlgebra(xs)
    members = [FPAlgebra(xs, [_v(x) for x in xs], base, [_v(x) for x in xs])]
    for i in range(1, n + 1):
        xi = f"x{i}"
        cvars = [xi] + [f"t{j}" for j in range(1, n + 1) if j != i]
        images = [_v(xi) if j == i else _v(xi) * _v(f"t{j}") for j in range(1, n + 1)]
        members.append(FPAlgebra(cvars, (), base, images))
    return Family(base, members, name=f"blowup-{n}", chart_model=True)


def _charts(name, u, v):
    base = FPAlgebra(("x", "y"))
    x, y = _v("x"), _v("y")
    return Family(base, [
        FPAlgebra(("x", u), (), base, [x, x * _v(u)]),
        FPAlgebra((v, "y"), (), base, [_v(v) * y, y]),
    ], name=name, chart_model=True)


def named_family(name):
    name = name.strip()
    if name == "zariski-a1":
        base = FPAlgebra(("x",))
        x = _v("x")
        return Family(base, [
            FPAlgebra(("x", "u"), [x * _v("u") - 1], base, [x]),
            FPAlgebra(("x", "v"), [(1 - x) * _v("v") - 1], base, [x]),
        ], name=name)
    if name == "rh-nodal":
        base = FPAlgebra(("x", "y"), [_v("x") * _v("y")])
        return Family(base, [
            FPAlgebra(("x",), (), base, [_v("x"), 0]),
            FPAlgebra(("y",), (), base, [0, _v("y")]),
        ], name=name)
    if name == "rh-blowup":
        return _charts(name, "u", "v")
    if name == "chain":
        return _charts(name, "t", "s")
    if name == "nilred":
        base = FPAlgebra(("x",), [_v("x") ** 2])
        return Family(base, [FPAlgebra((), (), base, [0])], name=name)
    m = re.fullmatch(r"blowup-(\d+)", name)
    if m and int(m.group(1)) >= 2:
        return _blowup(int(m.group(1)))
    raise UnknownFamily(f"unknown family {name!r}", known=list(NAMED_FAMILIES))


# chart lifting

@dataclass(frozen=True)
class OriginMember:
    coords: tuple
    member: int = 0


@dataclass(frozen=True)
class ChartPoint:
    chart: int
    coords: tuple

    @property
    def member(self):
        return self.chart


def factor_through_blowup(R, a):
    """Lift a point of A^d to blowup-d over a chain ring.

    The chart is the least index i with a_i dividing every coordinate;
    chart coordinates are (a_i, t_j) with t_j least solving a_i t_j = a_j.
    """
    a = tuple(R.element(x) for x in a)
    D = finring.divisibility_matrix(R)
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if not (D[a[i], a[j]] or D[a[j], a[i]]):
                raise NotAChainRing(f"{R.spec} is not a chain ring",
                                    (a[i], a[j]), (R.labels[a[i]], R.labels[a[j]]))
    w = finring.chain_witness(R)
    if w is not None:
        raise NotAChainRing(f"{R.spec} is not a chain ring", w,
                            (R.labels[w[0]], R.labels[w[1]]))
    if all(x == 0 for x in a):
        return OriginMember(a)
    for i, ai in enumerate(a):
        if all(D[ai, aj] for aj in a):
            ts = [int(np.flatnonzero(R.mul[ai] == aj)[0]) for j, aj in enumerate(a) if j != i]
            return ChartPoint(i + 1, (ai, *ts))
    raise AssertionError("chain ring without a common divisor among coordinates")


@dataclass
class EquivalenceReport:
    first: str
    second: str
    rows: list
    separating: Optional[str]

    @property
    def verdict(self):
        if self.separating is None:
            return "indistinguishable on this suite"
        return f"separated by {self.separating}"

    def to_json(self):
        return {"families": [self.first, self.second], "verdict": self.verdict,
                "separating_ring": self.separating,
                "rows": [{"ring": r, "first": a, "second": b} for r, a, b in self.rows]}


def covering_equivalent_on(U, V, rings):
    """Compare (R ⊥ U) with (R ⊥ V) ring by ring."""
    rows = []
    separating = None
    for R in rings:
        cu, cv = covers(U, R).covers, covers(V, R).covers
        rows.append((R.spec, cu, cv))
        if cu != cv and separating is None:
            separating = R.spec
    return EquivalenceReport(U.name or "U", V.name or "V", rows, separating)
