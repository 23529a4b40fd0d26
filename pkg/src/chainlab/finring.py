"""Finite commutative rings as explicit addition/multiplication tables.

Rings are built from a small construction language (``Z/4``,
``polyquot(Z/4,x,x^2-2)``, ``quot(...)``, ...) into a :class:`RingTable`
whose element indices follow a canonical order, so equal specs always give
identical tables.  Element 0 is always zero.
"""

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (DegenerateRing, MalformedSpec, NonMonicPolynomial,
                     NotAnIdeal, ParseError, SizeCapExceeded)
from .poly import IntPoly, parse_poly

DEFAULT_MAX_ELEMENTS = 4096
IDEAL_ENUMERATION_CAP = 64


# construction expressions

@dataclass(frozen=True)
class ZMod:
    n: int

    def render(self):
        return f"Z/{self.n}"


@dataclass(frozen=True)
class GF:
    p: int
    d: int

    def render(self):
        return f"GF({self.p},{self.d})"


@dataclass(frozen=True)
class PolyQuot:
    base: object
    var: str
    poly: IntPoly

    def render(self):
        return f"polyquot({self.base.render()},{self.var},{_compact(self.poly)})"


@dataclass(frozen=True)
class MonExt:
    base: object
    vars: tuple
    monomials: tuple

    def render(self):
        vs = ",".join(self.vars)
        ms = ",".join(_compact(m) for m in self.monomials)
        return f"monext({self.base.render()},[{vs}],[{ms}])"


@dataclass(frozen=True)
class Quot:
    base: object
    elements: tuple

    def render(self):
        es = ",".join(_compact(e) for e in self.elements)
        return f"quot({self.base.render()},[{es}])"


@dataclass(frozen=True)
class Product:
    left: object
    right: object

    def render(self):
        return f"prod({self.left.render()},{self.right.render()})"


def _compact(p):
    return p.render().replace(" ", "")


def _split_top(s, offset):
    """Split on depth-0 commas; returns [(piece, absolute_offset)]."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced bracket", offset + i, s)
        elif ch == "," and depth == 0:
            out.append((s[start:i], offset + start))
            start = i + 1
    if depth:
        raise ParseError("unbalanced bracket", offset + len(s), s)
    out.append((s[start:], offset + start))
    return out


def _strip(piece, off):
    lead = len(piece) - len(piece.lstrip())
    return piece.strip(), off + lead


def _bracket_list(piece, off):
    piece, off = _strip(piece, off)
    if not (piece.startswith("[") and piece.endswith("]")):
        raise ParseError("expected a bracketed list", off, piece)
    inner = piece[1:-1]
    if not inner.strip():
        return []
    return [_strip(p, o) for p, o in _split_top(inner, off + 1)]


def _poly_at(piece, off):
    try:
        return parse_poly(piece)
    except ParseError as e:
        raise ParseError(str(e).split(" at position")[0], off + (e.pos or 0), piece)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _name_at(piece, off):
    if not _NAME_RE.match(piece):
        raise ParseError(f"expected a variable name, found {piece!r}", off, piece)
    return piece


def parse_ring_spec(text, _off=0):
    """Parse the ring-spec text grammar into a construction expression."""
    s, off = _strip(text, _off)
    m = re.fullmatch(r"Z/\s*(\d+)", s)
    if m:
        return ZMod(int(m.group(1)))
    m = re.fullmatch(r"GF\(\s*(\d+)\s*,\s*(\d+)\s*\)", s)
    if m:
        return GF(int(m.group(1)), int(m.group(2)))
    m = re.match(r"(polyquot|monext|quot|prod)\s*\(", s)
    if not m or not s.endswith(")"):
        raise ParseError(f"unrecognised ring spec {s!r}", off, text)
    head = m.group(1)
    inner_off = off + m.end()
    args = _split_top(s[m.end():-1], inner_off)
    args = [_strip(a, o) for a, o in args]
    arity = {"polyquot": 3, "monext": 3, "quot": 2, "prod": 2}[head]
    if len(args) != arity:
        raise ParseError(f"{head} takes {arity} arguments, got {len(args)}", off, text)
    base = parse_ring_spec(*args[0])
    if head == "polyquot":
        return PolyQuot(base, _name_at(*args[1]), _poly_at(*args[2]))
    if head == "monext":
        vs = tuple(_name_at(p, o) for p, o in _bracket_list(*args[1]))
        ms = tuple(_poly_at(p, o) for p, o in _bracket_list(*args[2]))
        return MonExt(base, vs, ms)
    if head == "quot":
        return Quot(base, tuple(_poly_at(p, o) for p, o in _bracket_list(*args[1])))
    return Product(base, parse_ring_spec(*args[1]))


def as_spec(spec):
    if isinstance(spec, str):
        return parse_ring_spec(spec)
    return spec


# the table type

class RingTable:
    """A finite commutative ring given by full operation tables.

    ``add`` and ``mul`` are read-only ``size x size`` integer arrays of
    element indices.  ``gens`` maps generator names (``t`` in
    ``polyquot(Z/2,t,t^2)``) to element indices so that element
    expressions can be evaluated with :meth:`element`.
    """

    def __init__(self, add, mul, one, labels, spec, gens=None):
        self.add = _frozen(add)
        self.mul = _frozen(mul)
        self.size = len(labels)
        self.zero = 0
        self.one = int(one)
        self.labels = tuple(labels)
        self.spec = spec
        self.gens = dict(gens or {})
        if self.add.shape != (self.size, self.size) or self.mul.shape != self.add.shape:
            raise MalformedSpec("table shape does not match label count")

    def __repr__(self):
        return f"RingTable({self.spec!r}, size={self.size})"

    def __eq__(self, other):
        if not isinstance(other, RingTable):
            return NotImplemented
        return (self.size == other.size and self.one == other.one
                and self.labels == other.labels
                and np.array_equal(self.add, other.add)
                and np.array_equal(self.mul, other.mul))

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.size, self.one, self.labels, self.add.tobytes(),
                     self.mul.tobytes()))

    # scalar helpers

    @cached_property
    def addl(self):
        return self.add.tolist()

    @cached_property
    def mull(self):
        return self.mul.tolist()

    @cached_property
    def neg(self):
        return _frozen(np.argmax(self.add == 0, axis=1))

    @cached_property
    def negl(self):
        return self.neg.tolist()

    @cached_property
    def char(self):
        k, x = 1, self.one
        while x != 0:
            x = self.addl[x][self.one]
            k += 1
        return k

    @cached_property
    def _ints(self):
        out, x = [], 0
        for _ in range(self.char):
            out.append(x)
            x = self.addl[x][self.one]
        return out

    def from_int(self, c):
        return self._ints[c % self.char]

    def sub(self, a, b):
        return self.addl[a][self.negl[b]]

    def power(self, a, e):
        result, base = self.one, a
        ml = self.mull
        while e:
            if e & 1:
                result = ml[result][base]
            base = ml[base][base]
            e >>= 1
        return result

    @cached_property
    def unit_mask(self):
        return _frozen((self.mul == self.one).any(axis=1), bool)

    @cached_property
    def units(self):
        return frozenset(np.flatnonzero(self.unit_mask).tolist())

    def inverse(self, a):
        row = self.mul[a]
        hits = np.flatnonzero(row == self.one)
        return int(hits[0]) if len(hits) else None

    @cached_property
    def label_index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def evaluate(self, p, assignment):
        """Value of polynomial ``p`` at ``assignment`` (name -> element)."""
        ml, al = self.mull, self.addl
        total = 0
        for mono, c in p.monomials.items():
            t = self.from_int(c)
            for name, e in mono:
                t = ml[t][self.power(assignment[name], e)]
            total = al[total][t]
        return total

    def evaluate_columns(self, p, columns, length):
        """Vectorised evaluation over arrays of element indices."""
        total = np.zeros(length, dtype=np.intp)
        for mono, c in p.monomials.items():
            t = np.full(length, self.from_int(c), dtype=np.intp)
            for name, e in mono:
                col = columns[name]
                pw = col
                for _ in range(e - 1):
                    pw = self.mul[pw, col]
                t = self.mul[t, pw]
            total = self.add[total, t]
        return total

    def element(self, text):
        """Element index from a label or an integer polynomial in the generators."""
        if isinstance(text, (int, np.integer)):
            if not 0 <= text < self.size:
                raise MalformedSpec(f"element index {text} out of range")
            return int(text)
        text = text.strip()
        if text in self.label_index:
            return self.label_index[text]
        p = parse_poly(text)
        unknown = set(p.variables) - set(self.gens)
        if unknown:
            raise MalformedSpec(f"unknown generator(s) {sorted(unknown)} in {text!r}",
                                known=sorted(self.gens))
        return self.evaluate(p, self.gens)

    def summary(self):
        return {"spec": self.spec, "size": self.size, "char": self.char,
                "labels": list(self.labels)}


def _frozen(a, dtype=np.intp):
    a = np.ascontiguousarray(a, dtype=dtype)
    a.setflags(write=False)
    return a


# construction

def build(spec, max_elements=DEFAULT_MAX_ELEMENTS):
    """Build the table of a ring-spec (text or construction expression)."""
    return _build(as_spec(spec), max_elements)


@lru_cache(maxsize=256)
def _build(spec, cap):
    if isinstance(spec, ZMod):
        return _zmod(spec, cap)
    if isinstance(spec, GF):
        return _gf(spec, cap)
    if isinstance(spec, PolyQuot):
        return _polyquot(spec, _build(spec.base, cap), cap)
    if isinstance(spec, MonExt):
        return _monext(spec, _build(spec.base, cap), cap)
    if isinstance(spec, Quot):
        return _quot(spec, _build(spec.base, cap))
    if isinstance(spec, Product):
        return _product(spec, _build(spec.left, cap), _build(spec.right, cap), cap)
    raise MalformedSpec(f"not a ring spec: {spec!r}")


def _check_cap(size, cap, what):
    if size > cap:
        raise SizeCapExceeded(f"{what} would have {size} elements (cap {cap})",
                              size=size, cap=cap)


def _zmod(spec, cap):
    n = spec.n
    if n < 1:
        raise MalformedSpec("Z/n needs n >= 1")
    _check_cap(n, cap, spec.render())
    a = np.arange(n)
    return RingTable((a[:, None] + a[None, :]) % n, (a[:, None] * a[None, :]) % n,
                     1 % n, [str(i) for i in range(n)], spec.render())


def _is_prime(n):
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def _gf(spec, cap):
    p, d = spec.p, spec.d
    if not _is_prime(p) or d < 1:
        raise MalformedSpec("GF(p,d) needs p prime and d >= 1")
    _check_cap(p ** d, cap, spec.render())
    base = _build(ZMod(p), cap)
    t = IntPoly.var("t")
    for coeffs in itertools.product(range(p), repeat=d):
        f = t ** d + sum((c * t ** k for k, c in enumerate(coeffs)), IntPoly())
        candidate = _polyquot(PolyQuot(ZMod(p), "t", f), base, cap)
        if is_field(candidate):
            return RingTable(candidate.add, candidate.mul, candidate.one,
                             candidate.labels, spec.render(), candidate.gens)
    raise MalformedSpec(f"no irreducible polynomial of degree {d} over Z/{p}")


def _wrap(label):
    return f"({label})" if any(ch in label for ch in "+-*( ,") else label


def _free_labels(base, basis_labels, coords):
    labels = []
    for row in coords:
        parts = []
        for c, b in zip(row, basis_labels):
            if c == 0:
                continue
            lab = base.labels[c]
            if b == "1":
                parts.append(lab)
            elif c == base.one:
                parts.append(b)
            else:
                parts.append(f"{_wrap(lab)}*{b}")
        labels.append("+".join(parts) if parts else "0")
    return labels


def _free_algebra(base, basis_labels, struct, spec, gens, cap):
    """Free base-module on a basis with multiplication given by ``struct``.

    ``struct[i][j]`` lists ``(k, c)``: b_i * b_j = sum of c * b_k.
    Basis element 0 must be the identity.
    """
    s, d = base.size, len(basis_labels)
    _check_cap(s ** d, cap, spec)
    coords = np.array(list(itertools.product(range(s), repeat=d)), dtype=np.intp)
    coords = coords.reshape(s ** d, d)
    weights = np.array([s ** (d - 1 - k) for k in range(d)], dtype=np.intp)
    add = np.zeros((len(coords),) * 2, dtype=np.intp)
    for k in range(d):
        col = coords[:, k]
        add += base.add[col[:, None], col[None, :]] * weights[k]
    out = [np.zeros_like(add) for _ in range(d)]
    for i in range(d):
        ci = coords[:, i][:, None]
        for j in range(d):
            entries = struct[i][j]
            if not entries:
                continue
            prod = base.mul[ci, coords[:, j][None, :]]
            for k, c in entries:
                term = prod if c == base.one else base.mul[c, prod]
                out[k] = base.add[out[k], term]
    mul = sum(out[k] * weights[k] for k in range(d))
    one = base.one * weights[0]
    labels = _free_labels(base, basis_labels, coords)

    def embed(b):
        return int(b * weights[0])

    all_gens = {name: embed(b) for name, b in base.gens.items()}
    all_gens.update(gens(weights))
    return RingTable(add, mul, one, labels, spec, all_gens)


def _polyquot(spec, base, cap):
    var = spec.var
    if var in base.gens:
        raise MalformedSpec(f"variable {var!r} already names a generator of the base")
    extra = set(spec.poly.variables) - {var} - set(base.gens)
    if extra:
        raise MalformedSpec(f"unknown names {sorted(extra)} in polynomial")
    coeffs = {}
    for mono, c in spec.poly.monomials.items():
        d = dict(mono)
        e = d.pop(var, 0)
        piece = base.evaluate(IntPoly({tuple(d.items()): c}), base.gens)
        coeffs[e] = base.addl[coeffs.get(e, 0)][piece]
    nonzero = [e for e, c in coeffs.items() if c != 0]
    if not nonzero or max(nonzero) < 1:
        raise MalformedSpec("polyquot needs a polynomial of positive degree")
    deg = max(nonzero)
    if coeffs[deg] != base.one:
        raise NonMonicPolynomial(f"leading coefficient of {spec.poly} is not 1",
                                 leading=base.labels[coeffs[deg]])
    _check_cap(base.size ** deg, cap, spec.render())
    # var^m as coefficient vectors, m < 2*deg - 1
    tail = [base.negl[coeffs.get(k, 0)] for k in range(deg)]
    powers = []
    for m in range(max(2 * deg - 1, 1)):
        if m < deg:
            vec = [0] * deg
            vec[m] = base.one
        else:
            prev = powers[-1]
            top = prev[-1]
            vec = [0] + prev[:-1]
            for k in range(deg):
                vec[k] = base.addl[vec[k]][base.mull[top][tail[k]]]
        powers.append(vec)
    struct = [[[(k, c) for k, c in enumerate(powers[i + j]) if c != 0]
               for j in range(deg)] for i in range(deg)]
    basis = ["1", var] + [f"{var}^{k}" for k in range(2, deg)]
    return _free_algebra(base, basis[:deg], struct, spec.render(),
                         lambda w: ({var: int(base.one * w[1])} if deg > 1
                                    else {var: int(base.negl[coeffs.get(0, 0)] * w[0])}),
                         cap)


def _monext(spec, base, cap):
    vs = list(spec.vars)
    if len(set(vs)) != len(vs) or not vs:
        raise MalformedSpec("monext needs distinct variables")
    clash = set(vs) & set(base.gens)
    if clash:
        raise MalformedSpec(f"variables {sorted(clash)} already name base generators")
    gens = []
    for m in spec.monomials:
        terms = m.monomials
        if len(terms) != 1 or next(iter(terms.values())) != 1:
            raise MalformedSpec(f"monomial ideal generator {m} is not a pure monomial")
        mono = next(iter(terms))
        if not set(n for n, _ in mono) <= set(vs):
            raise MalformedSpec(f"generator {m} uses unknown variables")
        gens.append(dict(mono))
    if any(not g for g in gens):
        raise MalformedSpec("the unit monomial generates the whole ring")
    bounds = []
    for v in vs:
        pure = [g[v] for g in gens if set(g) == {v}]
        if not pure:
            raise MalformedSpec(f"monext quotient is infinite: no pure power of {v}")
        bounds.append(min(pure))

    def in_ideal(vec):
        return any(all(vec[vs.index(n)] >= e for n, e in g.items()) for g in gens)

    basis = [vec for vec in itertools.product(*(range(b) for b in bounds))
             if not in_ideal(vec)]
    basis.sort(key=lambda vec: (sum(vec), tuple(-e for e in vec)))
    _check_cap(base.size ** len(basis), cap, spec.render())
    pos = {vec: i for i, vec in enumerate(basis)}
    struct = []
    for a in basis:
        row = []
        for b in basis:
            prod = tuple(x + y for x, y in zip(a, b))
            row.append([(pos[prod], base.one)] if prod in pos else [])
        struct.append(row)
    names = []
    for vec in basis:
        body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(vs, vec) if e)
        names.append(body or "1")

    def var_gens(w):
        out = {}
        for i, v in enumerate(vs):
            unit = tuple(1 if j == i else 0 for j in range(len(vs)))
            out[v] = int(base.one * w[pos[unit]]) if unit in pos else 0
        return out

    return _free_algebra(base, names, struct, spec.render(), var_gens, cap)


def ideal_closure(R, elements):
    """Smallest ideal containing ``elements``, by worklist saturation."""
    ml, al = R.mull, R.addl
    members = {0}
    work = [ml[r][g] for g in elements for r in range(R.size)]
    while work:
        x = work.pop()
        if x in members:
            continue
        members.add(x)
        new = {al[m][x] for m in members} - members
        members |= new
        work.extend(new)
    return frozenset(members)


def _quot(spec, base):
    unknown = set().union(*(e.variables for e in spec.elements)) - set(base.gens) \
        if spec.elements else set()
    if unknown:
        raise MalformedSpec(f"unknown generator(s) {sorted(unknown)} in quot",
                            known=sorted(base.gens))
    gens = [base.evaluate(e, base.gens) for e in spec.elements]
    ideal = sorted(ideal_closure(base, gens))
    cls = np.full(base.size, -1, dtype=np.intp)
    reps = []
    for a in range(base.size):
        if cls[a] >= 0:
            continue
        cls[base.add[a, ideal]] = len(reps)
        reps.append(a)
    reps = np.array(reps, dtype=np.intp)
    add = cls[base.add[np.ix_(reps, reps)]]
    mul = cls[base.mul[np.ix_(reps, reps)]]
    labels = [base.labels[r] for r in reps]
    return RingTable(add, mul, cls[base.one], labels, spec.render(),
                     {n: int(cls[g]) for n, g in base.gens.items()})


def _product(spec, A, B, cap):
    s, t = A.size, B.size
    _check_cap(s * t, cap, spec.render())
    ia, ib = np.divmod(np.arange(s * t), t)
    add = A.add[ia[:, None], ia[None, :]] * t + B.add[ib[:, None], ib[None, :]]
    mul = A.mul[ia[:, None], ia[None, :]] * t + B.mul[ib[:, None], ib[None, :]]
    labels = [f"({A.labels[a]},{B.labels[b]})" for a, b in zip(ia, ib)]
    gens = {"e1": A.one * t, "e2": B.one}
    for n, g in A.gens.items():
        gens.setdefault(n, g * t)
    for n, g in B.gens.items():
        if n not in A.gens:
            gens.setdefault(n, g)
    return RingTable(add, mul, A.one * t + B.one, labels, spec.render(), gens)


def subring(R, members, spec):
    """Table of the subring on ``members`` (must be closed), in index order."""
    members = np.array(sorted(members), dtype=np.intp)
    pos = np.full(R.size, -1, dtype=np.intp)
    pos[members] = np.arange(len(members))
    add = pos[R.add[np.ix_(members, members)]]
    mul = pos[R.mul[np.ix_(members, members)]]
    if (add < 0).any() or (mul < 0).any() or pos[R.one] < 0 or pos[0] != 0:
        raise MalformedSpec("subset is not a subring")
    gens = {n: int(pos[g]) for n, g in R.gens.items() if pos[g] >= 0}
    return RingTable(add, mul, pos[R.one], [R.labels[m] for m in members], spec, gens)


# predicates

def _nondegenerate(R):
    if R.size == 1:
        raise DegenerateRing(f"{R.spec} is the zero ring")


def divisibility_matrix(R):
    """``D[a, b]`` is True iff a divides b."""
    D = np.zeros((R.size, R.size), dtype=bool)
    D[np.arange(R.size)[:, None], R.mul] = True
    return D


def divides(R, a, b):
    _nondegenerate(R)
    return bool((R.mul[a] == b).any())


def chain_witness(R):
    """First pair (a, b) in canonical order with neither dividing the other."""
    _nondegenerate(R)
    D = divisibility_matrix(R)
    bad = np.argwhere(~(D | D.T))
    return None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))


def is_chain(R):
    return chain_witness(R) is None


def is_local(R):
    _nondegenerate(R)
    u = R.unit_mask
    one_minus = R.add[R.one, R.neg]
    return bool((u | u[one_minus]).all())


def is_domain(R):
    _nondegenerate(R)
    return not (R.mul[1:, 1:] == 0).any()


def is_field(R):
    _nondegenerate(R)
    return bool(R.unit_mask[1:].all())


def nilpotent_mask(R):
    cur = np.arange(R.size)
    for _ in range(max(R.size, 2).bit_length() + 1):
        cur = R.mul[cur, cur]
    return cur == 0


def nilradical(R):
    _nondegenerate(R)
    return frozenset(np.flatnonzero(nilpotent_mask(R)).tolist())


def is_reduced(R):
    return nilradical(R) == frozenset({0})


def char_divides(R, n):
    """True iff n*1 = 0, the class cut out by ``forall a : n*a = 0``."""
    _nondegenerate(R)
    return n % R.char == 0


@dataclass(frozen=True)
class Predicates:
    is_local: bool
    is_domain: bool
    is_field: bool
    is_reduced: bool
    is_chain: bool

    def to_json(self):
        return {"local": self.is_local, "domain": self.is_domain,
                "field": self.is_field, "reduced": self.is_reduced,
                "chain": self.is_chain}


def basic_predicates(R):
    return Predicates(is_local(R), is_domain(R), is_field(R), is_reduced(R),
                      is_chain(R))


@dataclass(frozen=True)
class ZeroDivisorReport:
    zero_divisors: frozenset
    nonunits: frozenset


def zero_divisors(R):
    """Zero divisors, with 0 included by convention."""
    _nondegenerate(R)
    zd = (R.mul[:, 1:] == 0).any(axis=1)
    zd[0] = True
    return frozenset(np.flatnonzero(zd).tolist())


def zero_divisors_and_max_ideal(R):
    _nondegenerate(R)
    nonunits = frozenset(np.flatnonzero(~R.unit_mask).tolist())
    return ZeroDivisorReport(zero_divisors(R), nonunits)


def principal_ideal(R, a):
    return frozenset(R.mul[a].tolist())


def all_ideals(R):
    """Every ideal, as the closure of the principal ideals under sums."""
    _nondegenerate(R)
    if R.size > IDEAL_ENUMERATION_CAP:
        raise SizeCapExceeded(f"all_ideals is limited to {IDEAL_ENUMERATION_CAP} elements",
                              size=R.size, cap=IDEAL_ENUMERATION_CAP)
    al = R.addl
    ideals = {principal_ideal(R, a) for a in range(R.size)}
    frontier = set(ideals)
    while frontier:
        new = set()
        for I in frontier:
            for J in list(ideals):
                S = frozenset(al[i][j] for i in I for j in J)
                if S not in ideals:
                    new.add(S)
        ideals |= new
        frontier = new
    return sorted(ideals, key=lambda I: (len(I), sorted(I)))


def is_ideal(R, I):
    I = frozenset(I)
    if 0 not in I:
        return False
    idx = np.array(sorted(I), dtype=np.intp)
    mask = np.zeros(R.size, dtype=bool)
    mask[idx] = True
    return bool(mask[R.add[np.ix_(idx, idx)]].all() and mask[R.mul[idx]].all())


def is_prime_ideal(R, I):
    _nondegenerate(R)
    I = frozenset(I)
    if not is_ideal(R, I):
        raise NotAnIdeal(f"{sorted(I)} is not an ideal of {R.spec}")
    if R.one in I:
        return False
    mask = np.zeros(R.size, dtype=bool)
    mask[list(I)] = True
    in_prod = mask[R.mul]
    either = mask[:, None] | mask[None, :]
    return bool((~in_prod | either).all())
