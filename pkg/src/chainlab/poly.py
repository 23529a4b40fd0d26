"""Sparse integer polynomials in named variables, and their text syntax.

A monomial is a tuple of ``(name, exponent)`` pairs sorted by name with
positive exponents; the constant monomial is ``()``.  Polynomials never
store zero coefficients, so two equal polynomials have equal term maps.
"""

import re
from functools import cached_property

from .errors import ParseError


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for name, e in m2:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items()))


def _mono_divides(m1, m2):
    """True when monomial m1 divides m2."""
    d2 = dict(m2)
    return all(d2.get(name, 0) >= e for name, e in m1)


def _mono_quotient(m2, m1):
    d = dict(m2)
    for name, e in m1:
        d[name] -= e
    return tuple((n, e) for n, e in sorted(d.items()) if e)


class IntPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("_terms", "__dict__")

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c:
                mono = tuple(sorted((n, e) for n, e in mono if e))
                clean[mono] = clean.get(mono, 0) + c
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        if isinstance(x, str):
            return parse_poly(x)
        raise TypeError(f"cannot make a polynomial from {x!r}")

    # structure

    @property
    def monomials(self):
        """Sparse view: monomial (name/exponent pairs) -> coefficient."""
        return dict(self._terms)

    @cached_property
    def variables(self):
        return tuple(sorted({n for m in self._terms for n, _ in m}))

    @property
    def terms(self):
        """Exponent vector over ``variables`` -> coefficient."""
        vs = self.variables
        out = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            out[tuple(d.get(v, 0) for v in vs)] = c
        return out

    def is_zero(self):
        return not self._terms

    def degree(self):
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    def constant_term(self):
        return self._terms.get((), 0)

    def coefficient(self, mono):
        return self._terms.get(tuple(sorted(mono)), 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    # arithmetic

    def __add__(self, other):
        other = IntPoly.coerce(other)
        d = dict(self._terms)
        for m, c in other._terms.items():
            d[m] = d.get(m, 0) + c
        return IntPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-IntPoly.coerce(other))

    def __rsub__(self, other):
        return IntPoly.coerce(other) - self

    def __mul__(self, other):
        other = IntPoly.coerce(other)
        d = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return IntPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = IntPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def subs(self, images):
        """Substitute polynomials for variables; unmapped variables stay."""
        images = {k: IntPoly.coerce(v) for k, v in images.items()}
        out = IntPoly()
        for mono, c in self._terms.items():
            t = IntPoly.const(c)
            rest = []
            for name, e in mono:
                if name in images:
                    t = t * images[name] ** e
                else:
                    rest.append((name, e))
            if rest:
                t = t * IntPoly({tuple(rest): 1})
            out = out + t
        return out

    def rename(self, mapping):
        return IntPoly({
            tuple((mapping.get(n, n), e) for n, e in mono): c
            for mono, c in self._terms.items()
        })

    def normalized_sign(self):
        """Return +-self with positive leading coefficient."""
        if not self._terms:
            return self
        lead = max(self._terms, key=lambda m: _grlex_key(m, self.variables))
        return -self if self._terms[lead] < 0 else self

    # display

    def sorted_terms(self):
        vs = self.variables
        return sorted(self._terms.items(), key=lambda mc: _grlex_key(mc[0], vs),
                      reverse=True)

    def render(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            body = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            mag = abs(c)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag}*{body}"
            if not parts:
                parts.append(piece if c > 0 else "-" + piece)
            else:
                parts.append(("+ " if c > 0 else "- ") + piece)
        return " ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"IntPoly({self.render()!r})"


def _grlex_key(mono, variables):
    d = dict(mono)
    vec = tuple(d.get(v, 0) for v in variables)
    return (sum(vec), vec)


def reduce_by(p, relations):
    """Remainder of p after repeated leading-term division by relations.

    This is a sound, incomplete ideal-membership test: a zero remainder
    proves membership; a nonzero one proves nothing.  Reductions only
    fire when the relation's leading coefficient divides the term.
    """
    rels = [r for r in relations if r]
    names = sorted(set(p.variables).union(*(r.variables for r in rels)))

    def key(m):
        return _grlex_key(m, names)

    leads = []
    for r in rels:
        m = max(r._terms, key=key)
        leads.append((m, r._terms[m], r))
    while True:
        target = None
        for mono in sorted(p._terms, key=key, reverse=True):
            c = p._terms[mono]
            for lm, lc, r in leads:
                if c % lc == 0 and _mono_divides(lm, mono):
                    target = (mono, c, lm, lc, r)
                    break
            if target:
                break
        if target is None:
            return p
        mono, c, lm, lc, r = target
        p = p - IntPoly({_mono_quotient(mono, lm): c // lc}) * r


# text syntax

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()=,:\[\]]))")


class Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.pos})"


def tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + stripped]!r}",
                             pos + stripped, text)
        if m.group(1):
            tokens.append(Token("INT", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(Token("NAME", m.group(2), m.start(2)))
        else:
            op = m.group(3)
            tokens.append(Token("OP", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    tokens.append(Token("EOF", "", n))
    return tokens


class PolyParser:
    """Recursive-descent parser over a token list.

    Names in ``reserved`` end an expression; juxtaposed factors multiply
    (``2x``, ``(1-x)(1+x)``).
    """

    reserved = frozenset()

    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.pos, self.text)

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_op(self, text):
        return self.at("OP", text)

    def expect_op(self, text):
        if not self.at_op(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def expect_name(self):
        t = self.tok
        if t.kind != "NAME" or t.text in self.reserved:
            raise self.error(f"expected a variable name, found {t.text or 'end of input'!r}")
        return self.advance().text

    def expect_end(self):
        if not self.at("EOF"):
            raise self.error(f"unexpected {self.tok.text!r}")

    def _starts_factor(self):
        t = self.tok
        if t.kind == "INT":
            return True
        if t.kind == "NAME":
            return t.text not in self.reserved
        return t.kind == "OP" and t.text == "("

    def expr(self):
        if not (self._starts_factor() or self.at_op("-") or self.at_op("+")):
            found = self.tok.text or "end of input"
            raise self.error(f"expected a polynomial, found {found!r}")
        result = self.term()
        while self.at_op("+") or self.at_op("-"):
            op = self.advance().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.factor()
        while True:
            if self.at_op("*"):
                self.advance()
                result = result * self.factor()
            elif self._starts_factor():
                result = result * self.factor()
            else:
                return result

    def factor(self):
        if self.at_op("-"):
            self.advance()
            return -self.factor()
        if self.at_op("+"):
            self.advance()
            return self.factor()
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            t = self.tok
            if t.kind != "INT":
                raise self.error("exponent must be a nonnegative integer")
            self.advance()
            base = base ** int(t.text)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return IntPoly.const(int(t.text))
        if t.kind == "NAME" and t.text not in self.reserved:
            self.advance()
            return IntPoly.var(t.text)
        if t.kind == "OP" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        raise self.error(f"unexpected {t.text or 'end of input'!r}")


def parse_poly(text):
    """Parse ``'x^2*y - 3*x + 1'`` style text; ``p = q`` gives ``p - q``."""
    p = PolyParser(text)
    lhs = p.expr()
    if p.at_op("="):
        p.advance()
        lhs = lhs - p.expr()
    p.expect_end()
    return lhs
