"""Finitely presented algebras Z[x...]/(f...), covering families, points.

``points(A, R)`` is hom(A, R): tuples of ring elements on which every
relation vanishes, found by brute force over R^n.  An algebra may carry a
structure map from a base algebra, given by one polynomial per base
generator; a :class:`Family` is a list of such algebras over one base.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import (BaseMismatch, BasePointInvalid, MalformedMorphism,
                     MissingVariable, SizeCapExceeded, UndecidedSyntactically)
from .poly import IntPoly, reduce_by

MAX_POINT_VARS = 6
MAX_POINT_SCAN = 10 ** 7
_CHUNK = 1 << 18


def _polys(items):
    return tuple(IntPoly.coerce(p) for p in items)


def verify_morphism(source, target, images, assert_member=False):
    """Check that ``x_k -> images[k]`` defines a ring map source -> target.

    Each source relation, after substitution, must reduce to zero modulo
    the target relations by leading-term division (a sound syntactic
    test).  With ``assert_member`` a failed check raises
    ``UndecidedSyntactically`` instead of returning False.
    """
    images = _polys(images)
    if len(images) != len(source.vars):
        raise MalformedMorphism(
            f"need {len(source.vars)} images, got {len(images)}")
    stray = set().union(*(p.variables for p in images)) - set(target.vars) \
        if images else set()
    if stray:
        raise MalformedMorphism(f"images use names {sorted(stray)} outside the target")
    sub = dict(zip(source.vars, images))
    for rel in source.relations:
        if reduce_by(rel.subs(sub), target.relations):
            if assert_member:
                raise UndecidedSyntactically(
                    f"{rel} maps to a polynomial not reducible to 0 by the target relations",
                    relation=rel.render())
            return False
    return True


@dataclass(frozen=True)
class FPAlgebra:
    """Z[vars]/(relations), optionally with a structure map from ``base``."""

    vars: tuple
    relations: tuple = ()
    base: Optional["FPAlgebra"] = None
    base_images: tuple = ()
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "relations", _polys(self.relations))
        object.__setattr__(self, "base_images", _polys(self.base_images))
        if len(set(self.vars)) != len(self.vars):
            raise MalformedMorphism(f"repeated generator in {self.vars}")
        used = set().union(*(r.variables for r in self.relations)) if self.relations else set()
        if not used <= set(self.vars):
            raise MissingVariable(f"relations use undeclared names {sorted(used - set(self.vars))}")
        if self.base is None:
            if self.base_images:
                raise MalformedMorphism("base_images given without a base")
        elif self.check:
            verify_morphism(self.base, self, self.base_images) or _bad_structure(self)

    def absolute(self):
        return FPAlgebra(self.vars, self.relations)

    def render(self):
        rels = ", ".join(r.render() for r in self.relations)
        body = f"Z[{', '.join(self.vars)}]" + (f"/({rels})" if rels else "")
        if self.base is None:
            return body
        maps = ", ".join(f"{v} -> {p.render()}" for v, p in zip(self.base.vars, self.base_images))
        return f"{body} over {self.base.absolute().render()} via {maps or 'nothing'}"

    def to_json(self):
        out = {"vars": list(self.vars), "relations": [r.render() for r in self.relations]}
        if self.base is not None:
            out["base_images"] = [p.render() for p in self.base_images]
        return out


def _bad_structure(A):
    raise MalformedMorphism(
        f"base relations do not vanish syntactically in {A.vars}/{[str(r) for r in A.relations]}")


@dataclass(frozen=True)
class SchemeMap:
    """Spec(domain) -> Spec(codomain): one domain polynomial per codomain generator."""

    domain: FPAlgebra
    codomain: FPAlgebra
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", _polys(self.images))
        if not verify_morphism(self.codomain, self.domain, self.images):
            raise MalformedMorphism("codomain relations do not vanish on the images")


@dataclass(frozen=True)
class Family:
    """Covering family {Spec R_i -> Spec R_0}."""

    base: FPAlgebra
    members: tuple
    name: Optional[str] = field(default=None, compare=False)
    chart_model: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise MalformedMorphism("a family needs at least one member")
        for m in self.members:
            if m.base != self.base:
                raise BaseMismatch("every member must be an algebra over the family base")

    def to_json(self):
        out = {"base": self.base.to_json(), "members": [m.to_json() for m in self.members]}
        if self.chart_model:
            out["chart_model"] = True
        if self.name:
            out = {"name": self.name, **out}
        return out

    @classmethod
    def from_json(cls, data):
        base = FPAlgebra(data["base"]["vars"], data["base"].get("relations", ()))
        members = [FPAlgebra(m["vars"], m.get("relations", ()), base, m["base_images"])
                   for m in data["members"]]
        return cls(base, members, name=data.get("name"),
                   chart_model=data.get("chart_model", False))


# evaluation and points

def eval_poly(p, R, assignment):
    """Value of p in R; ``assignment`` maps names to element indices."""
    p = IntPoly.coerce(p)
    if not isinstance(assignment, dict):
        assignment = dict(zip(p.variables, assignment))
    missing = set(p.variables) - set(assignment)
    if missing:
        raise MissingVariable(f"no value for {sorted(missing)}")
    return R.evaluate(p, {k: R.element(v) for k, v in assignment.items()})


def _check_scan(n, size):
    if n > MAX_POINT_VARS:
        raise SizeCapExceeded(f"{n} generators exceeds the point-search limit {MAX_POINT_VARS}")
    if size ** n > MAX_POINT_SCAN:
        raise SizeCapExceeded(f"point search over {size}^{n} tuples exceeds {MAX_POINT_SCAN}",
                              size=size, n=n)


def _point_array(A, R, reverse=False):
    n, s = len(A.vars), R.size
    _check_scan(n, s)
    if n == 0:
        ok = all(R.evaluate(r, {}) == 0 for r in A.relations)
        return np.zeros((1 if ok else 0, 0), dtype=np.intp)
    order = list(reversed(range(n))) if reverse else list(range(n))
    shape = (s,) * n
    total = s ** n
    found = []
    for start in range(0, total, _CHUNK):
        flat = np.arange(start, min(start + _CHUNK, total))
        digits = np.unravel_index(flat, shape)
        cols = {A.vars[v]: digits[pos] for pos, v in enumerate(order)}
        mask = np.ones(len(flat), dtype=bool)
        for rel in A.relations:
            mask &= R.evaluate_columns(rel, cols, len(flat)) == 0
            if not mask.any():
                break
        found.append(np.stack([cols[v][mask] for v in A.vars], axis=1))
    pts = np.concatenate(found) if found else np.zeros((0, n), dtype=np.intp)
    if reverse:
        pts = pts[np.lexsort(pts.T[::-1])]
    return pts


@lru_cache(maxsize=512)
def _cached_points(A, R):
    pts = _point_array(A, R)
    pts.setflags(write=False)
    return pts


def points(A, R, scan_order="forward"):
    """hom(A, R) as tuples in canonical (lexicographic) order.

    ``scan_order='reverse'`` enumerates with the generator order reversed
    and re-sorts; the result is identical.
    """
    if scan_order == "reverse":
        pts = _point_array(A, R, reverse=True)
    else:
        pts = _cached_points(A, R)
    return [tuple(int(x) for x in row) for row in pts]


def image_array(A, R, pts=None):
    """Base images of every point of A (rows align with ``points``)."""
    if pts is None:
        pts = _cached_points(A, R)
    n = len(pts)
    cols = {v: pts[:, i] for i, v in enumerate(A.vars)}
    if not A.base_images:
        return np.zeros((n, 0), dtype=np.intp)
    return np.stack([R.evaluate_columns(p, cols, n) for p in A.base_images], axis=1)


def check_base_point(base, R, base_point):
    base_point = tuple(R.element(x) for x in base_point)
    if len(base_point) != len(base.vars):
        raise BasePointInvalid(f"expected {len(base.vars)} coordinates, got {len(base_point)}")
    assignment = dict(zip(base.vars, base_point))
    for rel in base.relations:
        if R.evaluate(rel, assignment) != 0:
            raise BasePointInvalid(f"relation {rel} does not vanish at {base_point}")
    return base_point


def fiber_points(A, R, base_point):
    """Points of member A lying over ``base_point``."""
    if A.base is None:
        raise BasePointInvalid("fiber_points needs an algebra with a base")
    base_point = check_base_point(A.base, R, base_point)
    pts = _cached_points(A, R)
    if len(pts) == 0:
        return []
    imgs = image_array(A, R, pts)
    hit = (imgs == np.array(base_point, dtype=np.intp)).all(axis=1)
    return [tuple(int(x) for x in row) for row in pts[hit]]


# family constructions

def _fresh(name, taken):
    k = 1
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def _rename_apart(A, taken):
    """Rename A's generators that clash with ``taken``; returns the map."""
    taken = set(taken)
    mapping = {}
    for v in A.vars:
        if v in taken:
            new = _fresh(v, taken | set(A.vars) | set(mapping.values()))
            mapping[v] = new
        taken.add(mapping.get(v, v))
    return mapping


def identity_family(A):
    member = FPAlgebra(A.vars, A.relations, A, [IntPoly.var(v) for v in A.vars])
    return Family(A, [member], name="identity")


def pullback_family(U, f):
    """Pull U back along ``f: Y -> U.base``; members are fibre products Y x_X U_i."""
    if f.codomain != U.base:
        raise MalformedMorphism("the map must land in the family base")
    Y = f.domain
    members = []
    for M in U.members:
        ren = _rename_apart(M, Y.vars)
        mvars = [ren.get(v, v) for v in M.vars]
        rels = list(Y.relations) + [r.rename(ren) for r in M.relations]
        for img_y, img_m in zip(f.images, M.base_images):
            binding = img_y - img_m.rename(ren)
            if binding:
                rels.append(binding)
        members.append(FPAlgebra(tuple(Y.vars) + tuple(mvars), rels, Y,
                                 [IntPoly.var(v) for v in Y.vars]))
    return Family(Y, members, name=f"pullback({U.name})" if U.name else None,
                  chart_model=U.chart_model)


def structure_map(M):
    """The structure map Spec M -> Spec(M.base) as a :class:`SchemeMap`."""
    return SchemeMap(M, M.base, M.base_images)


def compose_families(U, refinements):
    """Compose U with one family over each member; members flatten in order."""
    refinements = list(refinements)
    if len(refinements) != len(U.members):
        raise BaseMismatch(f"need {len(U.members)} families, got {len(refinements)}")
    members = []
    for M, V in zip(U.members, refinements):
        if V.base != M:
            raise BaseMismatch("refining family is not based on the corresponding member")
        for W in V.members:
            sub = dict(zip(M.vars, W.base_images))
            images = [p.subs(sub) for p in M.base_images]
            members.append(FPAlgebra(W.vars, W.relations, U.base, images, check=False))
    return Family(U.base, members, chart_model=U.chart_model)
