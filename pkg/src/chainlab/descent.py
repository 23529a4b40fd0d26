"""R-points of the smooth blowup square for finite local rings.

The square is::

    P^1  ->  Bl_{A^2}{0}
     |            |
    {0}  ->      A^2

Bl is modelled as the incidence locus {((a, b), (u:v)) : a v = b u} in
A^2 x P^1.  Over a local ring every point of P^1 has a unit coordinate,
so lines are normalised to (1, w) or (m, 1) with m a non-unit.
"""

from dataclasses import dataclass
from typing import Optional

from . import finring
from .errors import NotLocal


@dataclass(frozen=True, order=True)
class ProjPoint:
    u: int
    v: int

    def labels(self, R):
        return (R.labels[self.u], R.labels[self.v])


@dataclass(frozen=True)
class BlPoint:
    base: tuple
    line: ProjPoint


def _require_local(R):
    if not finring.is_local(R):
        raise NotLocal(f"{R.spec} is not local")


def normalize(R, u, v):
    """Canonical representative of the line through (u, v)."""
    if R.unit_mask[u]:
        return ProjPoint(R.one, R.mull[R.inverse(u)][v])
    if R.unit_mask[v]:
        return ProjPoint(R.mull[R.inverse(v)][u], R.one)
    raise ValueError(f"({u}, {v}) has no unit coordinate")


def proj_points(R):
    """P^1(R): the (1, w) lines in element order, then (m, 1) for non-units m."""
    _require_local(R)
    out = [ProjPoint(R.one, w) for w in range(R.size)]
    out += [ProjPoint(m, R.one) for m in range(R.size) if not R.unit_mask[m]]
    return out


def _incident(R, a, b, line):
    return R.mull[a][line.v] == R.mull[b][line.u]


def fiber(R, base, lines=None):
    """Lines through ``base``, in canonical line order."""
    a, b = base
    lines = proj_points(R) if lines is None else lines
    return [L for L in lines if _incident(R, a, b, L)]


def blowup_points(R):
    """Bl(R) ordered by base point, then line; the projection is ``p.base``."""
    lines = proj_points(R)
    return [BlPoint((a, b), L) for a in range(R.size) for b in range(R.size)
            for L in lines if _incident(R, a, b, L)]


def collision_witness(R):
    """Least (x, y, y') with x, y, y' nonzero, y < y' and x y = x y'.

    Such a triple gives two points (x, x y) of the first blowup chart with
    different lines (1, y), (1, y').  One exists iff R has a nonzero zero
    divisor: if x z = 0 with z != 0 then (x, 1, 1 + z) works.
    """
    _require_local(R)
    for x in range(1, R.size):
        first = {}
        best = None
        for y, val in enumerate(R.mull[x][1:], start=1):
            if val in first:
                y0 = first[val]
                if best is None or y0 < best[0]:
                    best = (y0, y)
            else:
                first[val] = y
        if best is not None:
            return (x, *best)
    return None


@dataclass
class DescentReport:
    ring: str
    sizes: dict
    surjective: bool
    complement_injective: bool
    cocartesian: bool
    collision: Optional[tuple] = None

    def to_json(self, R=None):
        out = {"ring": self.ring, "sizes": dict(self.sizes),
               "surjective": self.surjective,
               "complement_injective": self.complement_injective,
               "cocartesian": self.cocartesian}
        if self.collision is not None:
            base, l1, l2 = self.collision
            c = {"base": list(base), "line1": [l1.u, l1.v], "line2": [l2.u, l2.v]}
            if R is not None:
                c["labels"] = {"base": [R.labels[x] for x in base],
                               "line1": list(l1.labels(R)), "line2": list(l2.labels(R))}
            out["collision"] = c
        return out


def _pushout_is_iso(R, bl):
    """Is {0} ⊔_{P^1} Bl(R) -> R^2 a bijection of sets?

    Classes of the pushout: one for {0} together with the exceptional
    fibre, one per remaining point of Bl(R).
    """
    image_of_class = {"origin": (0, 0)}
    for k, p in enumerate(bl):
        if p.base != (0, 0):
            image_of_class[k] = p.base
    targets = list(image_of_class.values())
    return len(set(targets)) == len(targets) == R.size ** 2


def descent_report(R):
    _require_local(R)
    lines = proj_points(R)
    bl = blowup_points(R)
    by_base = {}
    for p in bl:
        by_base.setdefault(p.base, []).append(p.line)
    off_origin = [(a, b) for a in range(R.size) for b in range(R.size) if (a, b) != (0, 0)]
    surjective = all(base in by_base for base in off_origin)
    injective = all(len(by_base.get(base, ())) <= 1 for base in off_origin)
    collision = None
    if not injective:
        w = collision_witness(R)
        if w is not None:
            x, y1, y2 = w
            collision = ((x, R.mull[x][y1]), ProjPoint(R.one, y1), ProjPoint(R.one, y2))
        else:
            base = next(b for b in off_origin if len(by_base.get(b, ())) > 1)
            collision = (base, *by_base[base][:2])
    exceptional = by_base.get((0, 0), [])
    sizes = {"A": 1, "B": len(lines), "Y": len(bl), "X": R.size ** 2}
    if exceptional != lines:
        raise AssertionError("exceptional fibre differs from P^1(R)")
    return DescentReport(R.spec, sizes, surjective, injective, _pushout_is_iso(R, bl),
                         collision)
