"""Finite chain rings: classification, Frobenius perfections, chain division."""

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import finring
from .errors import (ChainMismatch, DeepestCoordinateZero, NotAChainRing,
                     NotDivisibleAtLevel, NotPrimeCharacteristic)

FIELD = "Field"
EQUAL_CHAR = "EqualCharTruncated"
UNRAMIFIED_MIXED = "UnramifiedMixed"
OUTSIDE = "OutsideListedCases"


def _require_chain(R):
    w = finring.chain_witness(R)
    if w is not None:
        raise NotAChainRing(f"{R.spec} is not a chain ring", w,
                            (R.labels[w[0]], R.labels[w[1]]))


def _prime_char(R):
    p = R.char
    if not finring._is_prime(p):
        raise NotPrimeCharacteristic(f"{R.spec} has characteristic {p}, not a prime", char=p)
    return p


@dataclass(frozen=True)
class ChainClassification:
    case: str
    residue_size: int
    nilpotency_index: int
    characteristic: int
    residue_characteristic: int
    uniformizer: int
    maximal_ideal_is_p: bool

    def to_json(self, R=None):
        out = {"case": self.case, "p": self.residue_characteristic,
               "n": self.nilpotency_index, "q": self.residue_size,
               "char": self.characteristic, "uniformizer": self.uniformizer,
               "m_equals_p": self.maximal_ideal_is_p}
        if R is not None:
            out["uniformizer_label"] = R.labels[self.uniformizer]
        return out


def classify_chain(R):
    """Place a finite chain ring among the Noetherian chain ring cases."""
    _require_chain(R)
    nonunits = np.flatnonzero(~R.unit_mask)
    m = frozenset(nonunits.tolist())
    pi = next(int(a) for a in nonunits if finring.principal_ideal(R, a) == m)
    n, x = 1, pi
    while x != 0:
        x = R.mull[x][pi]
        n += 1
    q = R.size // len(m)
    p, k = 1, R.one
    while k not in m:
        k = R.addl[k][R.one]
        p += 1
    m_is_p = finring.principal_ideal(R, R.from_int(p)) == m
    if n == 1:
        case = FIELD
    elif R.char == p and R.size == q ** n:
        case = EQUAL_CHAR
    elif R.char != p and m_is_p:
        case = UNRAMIFIED_MIXED
    else:
        case = OUTSIDE
    return ChainClassification(case, q, n, R.char, p, pi, m_is_p)


def equal_char_certificate(R, c):
    """Exhibit R = K[pi]/(pi^n) with K = {a : a^q = a} a field of size q.

    Returns the sorted subfield, or None if the certificate fails.
    """
    K = [a for a in range(R.size) if R.power(a, c.residue_size) == a]
    if len(K) != c.residue_size:
        return None
    Ks = set(K)
    if any(R.addl[a][b] not in Ks or R.mull[a][b] not in Ks for a in K for b in K):
        return None
    if any(R.inverse(a) is None for a in K if a != 0):
        return None
    pis = [R.power(c.uniformizer, i) for i in range(c.nilpotency_index)]
    if R.power(c.uniformizer, c.nilpotency_index) != 0:
        return None
    reached = set()
    for coeffs in itertools.product(K, repeat=c.nilpotency_index):
        s = 0
        for a, t in zip(coeffs, pis):
            s = R.addl[s][R.mull[a][t]]
        reached.add(s)
    return sorted(K) if len(reached) == R.size else None


def frobenius_image(R, S, p):
    return frozenset(R.power(a, p) for a in S)


def perfection_colim(R):
    """Stable Frobenius image of R, where Frobenius is bijective.

    For a finite ring this set with the induced operations is the colimit
    along Frobenius.
    """
    p = _prime_char(R)
    S = frozenset(range(R.size))
    while True:
        T = frobenius_image(R, S, p)
        if T == S:
            break
        S = T
    if len(S) == R.size:
        return R
    return finring.subring(R, S, f"perfcolim({R.spec})")


@dataclass(frozen=True)
class FrobChain:
    """(a_1, ..., a_k) with a_{i+1}^p = a_i, stored by its deepest entry a_k."""

    ring: object
    depth: int
    last: int

    def __post_init__(self):
        if self.depth < 1:
            raise ChainMismatch("depth must be at least 1")
        _prime_char(self.ring)

    @property
    def p(self):
        return self.ring.char

    def coord(self, i):
        if not 1 <= i <= self.depth:
            raise IndexError(i)
        return self.ring.power(self.last, self.p ** (self.depth - i))

    def coords(self):
        return tuple(self.coord(i) for i in range(1, self.depth + 1))


def _least_quotient(R, b, a):
    hits = np.flatnonzero(R.mul[b] == a)
    return int(hits[0]) if len(hits) else None


@dataclass(frozen=True)
class DivisionResult:
    quotient: FrobChain
    raw: tuple


def chain_divide(a, b):
    """c' with a_i = b_i c'_i and (c'_{i+1})^p = c'_i, at depth k - 2.

    Raw quotients c_i are the least solutions of a_i = b_i c_i; they need
    not be Frobenius compatible, but c'_i = c_{i+2}^{p^2} is.
    """
    R = a.ring
    if b.ring != R or a.depth != b.depth:
        raise ChainMismatch("chains must share ring and depth")
    k = a.depth
    if k < 3:
        raise ChainMismatch("chain division needs depth at least 3")
    p = R.char
    A, B = a.coords(), b.coords()
    raw = []
    for i in range(1, k + 1):
        c = _least_quotient(R, B[i - 1], A[i - 1])
        if c is None:
            raise NotDivisibleAtLevel(i)
        raw.append(c)
    if B[0] == 0:
        raise DeepestCoordinateZero("b_1 = 0")
    primed = [R.power(raw[i + 1], p * p) for i in range(k - 2)]
    quotient = FrobChain(R, k - 2, primed[-1])
    if quotient.coords() != tuple(primed):
        raise AssertionError("primed quotients are not Frobenius compatible")
    if any(R.mull[B[i]][primed[i]] != A[i] for i in range(k - 2)):
        raise AssertionError("primed quotients do not divide")
    return DivisionResult(quotient, tuple(raw))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: Optional[tuple] = None
    clause: Optional[str] = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        out = {"ok": self.ok}
        if self.witness is not None:
            out["witness"] = list(self.witness)
            out["clause"] = self.clause
        return out


def lemma55_check(R):
    """xy = 0 and y^p != 0 imply y | x and x^p = 0, for every pair."""
    _require_chain(R)
    p = _prime_char(R)
    D = finring.divisibility_matrix(R)
    powp = [R.power(a, p) for a in range(R.size)]
    for x in range(R.size):
        for y in range(R.size):
            if R.mull[x][y] == 0 and powp[y] != 0:
                if not (D[y, x] and powp[x] == 0):
                    return CheckResult(False, (x, y), "lemma55")
    return CheckResult(True)


def tilt_domain_check(R, depth=3):
    """Finite consequences of the inverse-limit perfection being a valuation ring.

    (i)   ab = 0 and a^p != 0 imply b^p = 0;
    (ii)  b^p != 0 and b^p | a^p imply b | a;
    (iii) for Frobenius chains of length ``depth`` with b_1 != 0, b_1 | a_1
          propagates to b_i | a_i at every level.
    """
    _require_chain(R)
    p = _prime_char(R)
    D = finring.divisibility_matrix(R)
    powp = [R.power(a, p) for a in range(R.size)]
    for a in range(R.size):
        for b in range(R.size):
            if R.mull[a][b] == 0 and powp[a] != 0 and powp[b] != 0:
                return CheckResult(False, (a, b), "zero-divisor")
            if powp[b] != 0 and D[powp[b], powp[a]] and not D[b, a]:
                return CheckResult(False, (a, b), "divisibility")
    chains = [FrobChain(R, depth, x).coords() for x in range(R.size)]
    for A in chains:
        for B in chains:
            if B[0] != 0 and D[B[0], A[0]]:
                if not all(D[bi, ai] for ai, bi in zip(A, B)):
                    return CheckResult(False, (A[-1], B[-1]), "chain")
    return CheckResult(True)
