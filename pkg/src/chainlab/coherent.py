"""Coherent sentences over rings and their covering-family dictionary.

A sentence has the shape::

    forall x1, ..., xn where f1 = 0, ..., fI = 0 :
        exists y11, ... : g11 = 0, ... or exists y21, ... : ... or ...

``holds`` decides it on a finite ring by direct enumeration.  The
compilers ``sentence_to_family`` and ``family_to_sentence`` translate
between a sentence and the family whose lifting condition it expresses.
"""

import itertools
import re
from dataclasses import dataclass
from typing import Optional

from .errors import ParseError, SizeCapExceeded, UnknownBuiltin
from .fpalg import MAX_POINT_SCAN, Family, FPAlgebra, _fresh
from .poly import IntPoly, PolyParser

KEYWORDS = frozenset({"forall", "where", "exists", "or", "true"})


@dataclass(frozen=True)
class Disjunct:
    exvars: tuple = ()
    equations: tuple = ()

    def render(self):
        eqs = ", ".join(f"{g.render()} = 0" for g in self.equations) or "true"
        if self.exvars:
            return f"exists {', '.join(self.exvars)} : {eqs}"
        return eqs


@dataclass(frozen=True)
class CoherentSentence:
    univars: tuple
    antecedent: tuple
    disjuncts: tuple

    def __post_init__(self):
        object.__setattr__(self, "univars", tuple(self.univars))
        object.__setattr__(self, "antecedent",
                           tuple(IntPoly.coerce(p) for p in self.antecedent))
        object.__setattr__(self, "disjuncts", tuple(
            Disjunct(tuple(d.exvars), tuple(IntPoly.coerce(g) for g in d.equations))
            for d in self.disjuncts))
        _validate(self)

    @property
    def max_exvars(self):
        return max(len(d.exvars) for d in self.disjuncts)

    def render(self):
        head = "forall " + ", ".join(self.univars) if self.univars else "forall"
        if self.antecedent:
            head += " where " + ", ".join(f"{f.render()} = 0" for f in self.antecedent)
        return f"{head} : " + " or ".join(d.render() for d in self.disjuncts)

    def __str__(self):
        return self.render()


def _validate(phi):
    def fail(msg):
        raise ParseError(msg)

    if not phi.disjuncts:
        fail("a sentence needs at least one disjunct")
    uni = set(phi.univars)
    if len(uni) != len(phi.univars):
        fail("repeated universal variable")
    bad = set(phi.univars) & KEYWORDS
    if bad:
        fail(f"keyword used as variable: {sorted(bad)}")
    for f in phi.antecedent:
        if not set(f.variables) <= uni:
            fail(f"antecedent {f} uses undeclared {sorted(set(f.variables) - uni)}")
    for d in phi.disjuncts:
        ex = set(d.exvars)
        if len(ex) != len(d.exvars) or ex & uni or ex & KEYWORDS:
            fail(f"existential variables {d.exvars} repeat or shadow a universal")
        for g in d.equations:
            if not set(g.variables) <= uni | ex:
                fail(f"equation {g} uses undeclared {sorted(set(g.variables) - uni - ex)}")


class _SentenceParser(PolyParser):
    reserved = KEYWORDS

    def keyword(self, word):
        if not self.at("NAME", word):
            raise self.error(f"expected {word!r}")
        self.advance()

    def varlist(self):
        names = [self.expect_name()]
        while self.at_op(","):
            self.advance()
            names.append(self.expect_name())
        return names

    def eqlist(self):
        eqs = [self.equation()]
        while self.at_op(","):
            self.advance()
            eqs.append(self.equation())
        return [e for e in eqs if e]

    def equation(self):
        lhs = self.expr()
        self.expect_op("=")
        return lhs - self.expr()

    def disjunct(self):
        if self.at("NAME", "true"):
            self.advance()
            return Disjunct()
        exvars = []
        if self.at("NAME", "exists"):
            self.advance()
            exvars = self.varlist()
            self.expect_op(":")
            if self.at("NAME", "true"):
                self.advance()
                return Disjunct(tuple(exvars))
        return Disjunct(tuple(exvars), tuple(self.eqlist()))

    def sentence(self):
        self.keyword("forall")
        univars = [] if (self.at("NAME", "where") or self.at_op(":")) else self.varlist()
        antecedent = []
        if self.at("NAME", "where"):
            self.advance()
            antecedent = self.eqlist()
        self.expect_op(":")
        disjuncts = [self.disjunct()]
        while self.at("NAME", "or"):
            self.advance()
            disjuncts.append(self.disjunct())
        self.expect_end()
        return CoherentSentence(tuple(univars), tuple(antecedent), tuple(disjuncts))


def parse(text):
    """Parse sentence text; ``p = q`` atoms are stored as ``p - q``."""
    return _SentenceParser(text).sentence()


def render(phi):
    return phi.render()


# evaluation

@dataclass(frozen=True)
class HoldsResult:
    holds: bool
    counterexample: Optional[tuple] = None
    sentence_index: Optional[int] = None

    def __bool__(self):
        return self.holds

    def to_json(self, R=None):
        out = {"holds": self.holds}
        if self.counterexample is not None:
            out["counterexample"] = list(self.counterexample)
            if R is not None:
                out["counterexample_labels"] = [R.labels[a] for a in self.counterexample]
            out["sentence_index"] = self.sentence_index
        return out


def _holds_one(phi, R):
    n, m = len(phi.univars), phi.max_exvars
    if R.size ** (n + m) > MAX_POINT_SCAN:
        raise SizeCapExceeded(f"evaluating needs {R.size}^{n + m} assignments",
                              size=R.size, vars=n + m)
    elements = range(R.size)
    ev = R.evaluate
    for xs in itertools.product(elements, repeat=n):
        env = dict(zip(phi.univars, xs))
        if any(ev(f, env) for f in phi.antecedent):
            continue
        for d in phi.disjuncts:
            if any(all(ev(g, {**env, **dict(zip(d.exvars, ys))}) == 0
                       for g in d.equations)
                   for ys in itertools.product(elements, repeat=len(d.exvars))):
                break
        else:
            return xs
    return None


def holds(phi, R):
    """Decide a sentence (or a sequence of them) on R by enumeration."""
    sentences = [phi] if isinstance(phi, CoherentSentence) else list(phi)
    for i, s in enumerate(sentences):
        bad = _holds_one(s, R)
        if bad is not None:
            return HoldsResult(False, bad, i)
    return HoldsResult(True)


_BUILTINS = {
    "local": ["forall a : exists b : a*b - 1 = 0 or exists c : (1 - a)*c - 1 = 0"],
    "domain": ["forall a, b where a*b = 0 : a = 0 or b = 0"],
    "chain": ["forall a, b : exists c : a*c = b or exists d : a = b*d"],
}
_BUILTINS["valuation"] = _BUILTINS["domain"] + _BUILTINS["chain"]

BUILTIN_NAMES = ("local", "domain", "chain", "valuation", "char(n)")


def builtin(name):
    """The fixed axioms for a named ring class, as a tuple of sentences."""
    name = name.strip()
    m = re.fullmatch(r"char\(\s*(\d+)\s*\)", name)
    if m:
        return (parse(f"forall a : {int(m.group(1))}*a = 0"),)
    if name not in _BUILTINS:
        raise UnknownBuiltin(f"unknown builtin {name!r}", known=list(BUILTIN_NAMES))
    return tuple(parse(t) for t in _BUILTINS[name])


# the dictionary

def sentence_to_family(phi):
    """Base Z[x]/(f); one member Z[x, y_j]/(f, g_j) per disjunct."""
    base = FPAlgebra(phi.univars, phi.antecedent)
    ident = [IntPoly.var(v) for v in phi.univars]
    members = [FPAlgebra(tuple(phi.univars) + tuple(d.exvars),
                         tuple(phi.antecedent) + tuple(d.equations), base, ident)
               for d in phi.disjuncts]
    return Family(base, members, name=f"U[{phi.render()}]")


def _member_disjunct(M, univars, antecedent):
    ren = {}
    bindings = []
    for a, img in zip(univars, M.base_images):
        vs = img.variables
        if len(vs) == 1 and img == IntPoly.var(vs[0]) and vs[0] not in ren:
            ren[vs[0]] = a
        else:
            bindings.append((a, img))
    taken = set(univars)
    for v in M.vars:
        if v in ren:
            continue
        new = v if v not in taken else _fresh(v, taken | set(M.vars))
        ren[v] = new
        taken.add(new)
    exvars = tuple(ren[v] for v in M.vars if ren[v] not in univars)
    known = set(antecedent)
    eqs = [r.rename(ren) for r in M.relations]
    eqs = [g for g in eqs if g not in known]
    for a, img in bindings:
        g = (img.rename(ren) - IntPoly.var(a)).normalized_sign()
        if g:
            eqs.append(g)
    return Disjunct(exvars, tuple(eqs))


def family_to_sentence(U):
    """The sentence saying every base point lifts to some member."""
    univars = tuple(U.base.vars)
    antecedent = tuple(U.base.relations)
    return CoherentSentence(univars, antecedent,
                            tuple(_member_disjunct(M, univars, antecedent)
                                  for M in U.members))
