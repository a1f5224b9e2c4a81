"""Exact arithmetic over the rational-function field Q(q, t).

Three layers:

  * ``Fraction`` (stdlib) for arbitrary-precision rationals,
  * sparse polynomials in (q, t) as dicts ``(q_exp, t_exp) -> Fraction``
    wrapped in :class:`PolyQT`,
  * the field Q(q, t) as reduced fractions of such polynomials,
    :class:`RatQT`.

Canonical form of a RatQT: numerator and denominator coprime in Q[q, t],
denominator integer-primitive with positive leading coefficient in the
graded-lex order (q before t).  Equality is then a structural comparison.
Negative powers of q or t always live in denominators; exponents stored in
PolyQT are nonnegative.

All values are immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd


class ScalarError(ArithmeticError):
    """Invalid field operation (division by zero, malformed input)."""


class PoleAtQZero(ScalarError):
    """The substitution q := 0 was requested on a value with a pole there."""


def _grlex(e):
    # graded lex on (q, t), q first
    return (e[0] + e[1], e[0])


# ---------------------------------------------------------------------------
# integer polynomials in t: dense lists, constant term first
# ---------------------------------------------------------------------------

def _tp_trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


def _tp_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _tp_trim(out)


def _tp_content(a):
    g = 0
    for ai in a:
        g = _igcd(g, ai)
        if g == 1:
            return 1
    return g


def _tp_primitive(a):
    if not a:
        return a
    g = _tp_content(a)
    if a[-1] < 0:
        g = -g
    if g != 1:
        a = [ai // g for ai in a]
    return a


def _tp_prem(a, b):
    """Pseudo-remainder of a by b over Z[t]; b nonzero."""
    db, lb = len(b) - 1, b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [ri * lb for ri in r]
        for i, bi in enumerate(b):
            r[i + shift] -= lr * bi
        _tp_trim(r)
    return r


def _tp_gcd(a, b):
    a = _tp_primitive(list(a))
    b = _tp_primitive(list(b))
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _tp_prem(a, b)
        a, b = b, _tp_primitive(r)
    return a


def _tp_divexact(a, b):
    """Exact division in Z[t] (quotient known to be integral)."""
    if not a:
        return []
    if b == [1]:
        return list(a)
    db, lb = len(b) - 1, b[-1]
    q = [0] * (len(a) - db)
    r = list(a)
    while r:
        dr = len(r) - 1
        if dr < db:
            raise ScalarError("inexact division in Z[t]")
        c, rem = divmod(r[-1], lb)
        if rem:
            raise ScalarError("inexact division in Z[t]")
        q[dr - db] = c
        for i, bi in enumerate(b):
            r[i + dr - db] -= c * bi
        _tp_trim(r)
    return q


# ---------------------------------------------------------------------------
# integer polynomials in (q, t): q-level dict {q_exp: t-poly}
# ---------------------------------------------------------------------------

def _bq_from_terms(terms):
    out = {}
    for (qe, te), c in terms.items():
        row = out.get(qe)
        if row is None:
            row = out[qe] = []
        if len(row) <= te:
            row.extend([0] * (te + 1 - len(row)))
        row[te] += c
    return {qe: row for qe, row in out.items() if _tp_trim(row)}


def _bq_content_pp(a):
    cont = []
    for tp in a.values():
        cont = _tp_gcd(cont, tp)
        if cont == [1]:
            return cont, dict(a)
    pp = {qe: _tp_divexact(tp, cont) for qe, tp in a.items()}
    return cont, pp


def _bq_prem(a, b):
    """Pseudo-remainder of a by b in q, coefficients in Z[t]."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r:
        dr = max(r)
        if dr < db:
            break
        lr = r[dr]
        new = {qe: _tp_mul(tp, lb) for qe, tp in r.items()}
        for qe, tp in b.items():
            ee = qe + dr - db
            cur = new.get(ee, [])
            prod = _tp_mul(tp, lr)
            merged = [0] * max(len(cur), len(prod))
            for i, ci in enumerate(cur):
                merged[i] = ci
            for i, pi in enumerate(prod):
                merged[i] -= pi
            _tp_trim(merged)
            if merged:
                new[ee] = merged
            elif ee in new:
                del new[ee]
        r = {qe: tp for qe, tp in new.items() if tp}
    return r


def _poly_gcd_int(A, B):
    """Primitive gcd over Z[q, t] of nonzero integer-coefficient term dicts."""
    if len(A) == 1 or len(B) == 1:
        qm = min(min(e[0] for e in A), min(e[0] for e in B))
        tm = min(min(e[1] for e in A), min(e[1] for e in B))
        return {(qm, tm): 1}
    a = _bq_from_terms(A)
    b = _bq_from_terms(B)
    ca, pa = _bq_content_pp(a)
    cb, pb = _bq_content_pp(b)
    cg = _tp_gcd(ca, cb)
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        r = _bq_prem(pa, pb)
        if not r:
            g = pb
            break
        pa, pb = pb, _bq_content_pp(r)[1]
        if max(pb) == 0 and pb[0] == [1]:
            g = pb
            break
    out = {}
    for qe, tp in g.items():
        prod = _tp_mul(tp, cg)
        for te, c in enumerate(prod):
            if c:
                out[(qe, te)] = c
    # positive leading grlex coefficient
    lead = max(out, key=_grlex)
    if out[lead] < 0:
        out = {e: -c for e, c in out.items()}
    return out


# ---------------------------------------------------------------------------
# PolyQT
# ---------------------------------------------------------------------------

_F0 = Fraction(0)
_F1 = Fraction(1)


class PolyQT:
    """Sparse polynomial in (q, t) with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = {}

    @staticmethod
    def _raw(terms):
        p = PolyQT.__new__(PolyQT)
        p.terms = terms
        return p

    @staticmethod
    def zero():
        return PolyQT._raw({})

    @staticmethod
    def const(c):
        c = Fraction(c)
        return PolyQT._raw({(0, 0): c} if c else {})

    @staticmethod
    def monomial(qe, te, c=_F1):
        c = Fraction(c)
        return PolyQT._raw({(qe, te): c} if c else {})

    def is_zero(self):
        return not self.terms

    def is_const(self):
        t = self.terms
        return not t or (len(t) == 1 and (0, 0) in t)

    def const_value(self):
        return self.terms.get((0, 0), _F0)

    def is_monomial(self):
        return len(self.terms) == 1

    def __eq__(self, other):
        return isinstance(other, PolyQT) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, _F0) + c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return PolyQT._raw(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, _F0) - c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return PolyQT._raw(out)

    def __neg__(self):
        return PolyQT._raw({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        a, b = self.terms, other.terms
        if not a or not b:
            return PolyQT._raw({})
        if len(a) == 1:
            (ea, ca), = a.items()
            if ea == (0, 0):
                return PolyQT._raw({e: c * ca for e, c in b.items()})
            return PolyQT._raw({(e[0] + ea[0], e[1] + ea[1]): c * ca for e, c in b.items()})
        if len(b) == 1:
            return other.__mul__(self)
        out = {}
        for ea, ca in a.items():
            qa, ta = ea
            for eb, cb in b.items():
                e = (qa + eb[0], ta + eb[1])
                v = out.get(e, _F0) + ca * cb
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return PolyQT._raw(out)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return PolyQT._raw({})
        return PolyQT._raw({e: v * c for e, v in self.terms.items()})

    def leading(self):
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def degrees(self):
        """(max q-degree, max t-degree); (-1, -1) for zero."""
        if not self.terms:
            return (-1, -1)
        return (max(e[0] for e in self.terms), max(e[1] for e in self.terms))

    def rational_content(self):
        """c such that self/c has coprime integer coefficients and positive
        grlex leading coefficient; 0 for the zero polynomial."""
        if not self.terms:
            return _F0
        num_g = 0
        den_l = 1
        for c in self.terms.values():
            num_g = _igcd(num_g, c.numerator)
            den_l = den_l * c.denominator // _igcd(den_l, c.denominator)
        cont = Fraction(num_g, den_l)
        if self.terms[max(self.terms, key=_grlex)] < 0:
            cont = -cont
        return cont

    def divexact_scalar(self, c):
        return PolyQT._raw({e: v / c for e, v in self.terms.items()})

    def divexact(self, other):
        """Exact polynomial division; raises ScalarError if not exact."""
        if other.is_zero():
            raise ScalarError("division by zero polynomial")
        if other.is_const():
            return self.divexact_scalar(other.const_value())
        if not self.terms:
            return PolyQT._raw({})
        if len(other.terms) == 1:
            (eb, cb), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                qe, te = e[0] - eb[0], e[1] - eb[1]
                if qe < 0 or te < 0:
                    raise ScalarError("inexact division in Q[q,t]")
                out[(qe, te)] = c / cb
            return PolyQT._raw(out)
        eb, cb = other.leading()
        rem = dict(self.terms)
        out = {}
        bitems = list(other.terms.items())
        while rem:
            ea = max(rem, key=_grlex)
            qe, te = ea[0] - eb[0], ea[1] - eb[1]
            if qe < 0 or te < 0:
                raise ScalarError("inexact division in Q[q,t]")
            c = rem[ea] / cb
            out[(qe, te)] = c
            for e2, c2 in bitems:
                e = (e2[0] + qe, e2[1] + te)
                v = rem.get(e, _F0) - c * c2
                if v:
                    rem[e] = v
                elif e in rem:
                    del rem[e]
        return PolyQT._raw(out)

    def subst_q0(self):
        """Substitute q := 0."""
        return PolyQT._raw({e: c for e, c in self.terms.items() if e[0] == 0})

    def flip(self, flip_q, flip_t):
        """Replace q by 1/q and/or t by 1/t, then clear by the max degree.

        Returns (poly, qshift, tshift): self(q^±1, t^±1) = poly / (q^qshift t^tshift).
        """
        dq, dt = self.degrees()
        qs = dq if flip_q else 0
        ts = dt if flip_t else 0
        out = {}
        for (qe, te), c in self.terms.items():
            out[(qs - qe if flip_q else qe, ts - te if flip_t else te)] = c
        return PolyQT._raw(out), qs, ts

    def to_json(self):
        return [[e[0], e[1], str(c)] for e, c in sorted(self.terms.items())]

    @staticmethod
    def from_json(data):
        return PolyQT({(int(qe), int(te)): Fraction(c) for qe, te, c in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex):
            c = self.terms[e]
            mon = "".join(
                f"{v}^{p}" if p > 1 else (v if p == 1 else "")
                for v, p in (("q", e[0]), ("t", e[1]))
            )
            parts.append(f"{c}{'*' if mon else ''}{mon}")
        return " + ".join(parts)


_P0 = PolyQT.zero()
_P1 = PolyQT.const(1)


def poly_gcd(a: PolyQT, b: PolyQT) -> PolyQT:
    """Primitive gcd in Q[q, t] (integer coefficients, positive grlex lead)."""
    if a.is_zero() or b.is_zero():
        raise ScalarError("gcd of zero polynomial")
    if a.is_const() or b.is_const():
        return _P1
    ai = {e: c / ca for e, c in a.terms.items()} if (ca := a.rational_content()) != 1 else a.terms
    bi = {e: c / cb for e, c in b.terms.items()} if (cb := b.rational_content()) != 1 else b.terms
    A = {e: int(c) for e, c in ai.items()}
    B = {e: int(c) for e, c in bi.items()}
    g = _poly_gcd_int(A, B)
    return PolyQT._raw({e: Fraction(c) for e, c in g.items()})


# ---------------------------------------------------------------------------
# RatQT
# ---------------------------------------------------------------------------

class RatQT:
    """An element of Q(q, t) in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyQT, den: PolyQT = _P1):
        n, d = _reduce(num, den)
        self.num = n
        self.den = d

    @staticmethod
    def _raw(num, den):
        r = RatQT.__new__(RatQT)
        r.num = num
        r.den = den
        return r

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(n):
        return RatQT._raw(PolyQT.const(n), _P1)

    @staticmethod
    def from_fraction(c):
        return RatQT._raw(PolyQT.const(c), _P1)

    @staticmethod
    def monomial(qe, te, c=1):
        """c * q^qe * t^te with possibly negative exponents."""
        c = Fraction(c)
        if not c:
            return R0
        num = PolyQT.monomial(max(qe, 0), max(te, 0), c)
        den = PolyQT.monomial(max(-qe, 0), max(-te, 0))
        return RatQT._raw(num, den)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.den == _P1 and self.num.terms == {(0, 0): _F1}

    def is_poly(self):
        return self.den == _P1

    def __eq__(self, other):
        if not isinstance(other, RatQT):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if self.den == _P1 and other.den == _P1:
            return RatQT._raw(self.num + other.num, _P1)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatQT(self.num + other.num, self.den)
        return RatQT(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    def __sub__(self, other):
        if self.den == _P1 and other.den == _P1:
            return RatQT._raw(self.num - other.num, _P1)
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatQT(self.num - other.num, self.den)
        return RatQT(self.num * other.den - other.num * self.den,
                     self.den * other.den)

    def __neg__(self):
        return RatQT._raw(-self.num, self.den)

    def __mul__(self, other):
        if self.num.is_zero() or other.num.is_zero():
            return R0
        if self.den == _P1 and other.den == _P1:
            return RatQT._raw(self.num * other.num, _P1)
        # cross-reduce so no further gcd is needed afterwards
        n1, d2 = _cross(self.num, other.den)
        n2, d1 = _cross(other.num, self.den)
        num = n1 * n2
        den = d1 * d2
        cont = den.rational_content()
        if cont != 1:
            num = num.divexact_scalar(cont)
            den = den.divexact_scalar(cont)
        return RatQT._raw(num, den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ScalarError("division by zero in Q(q,t)")
        return self * RatQT._raw(other.den, other.num)._renorm()

    def _renorm(self):
        cont = self.den.rational_content()
        if cont == 1:
            return self
        return RatQT._raw(self.num.divexact_scalar(cont), self.den.divexact_scalar(cont))

    def inverse(self):
        if self.num.is_zero():
            raise ScalarError("inverse of zero in Q(q,t)")
        return RatQT._raw(self.den, self.num)._renorm()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = R1
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return R0
        return RatQT._raw(self.num.scale(c), self.den)

    # -- substitutions -------------------------------------------------------

    def subst_q0(self):
        """Value at q := 0; raises PoleAtQZero if the denominator vanishes."""
        d0 = self.den.subst_q0()
        if d0.is_zero():
            raise PoleAtQZero("pole at q=0")
        return RatQT(self.num.subst_q0(), d0)

    def subst_t_inv(self):
        """Replace t by 1/t and re-canonicalize."""
        return self._subst_flip(False, True)

    def subst_q_inv(self):
        return self._subst_flip(True, False)

    def subst_qt_inv(self):
        """Replace q by 1/q and t by 1/t simultaneously."""
        return self._subst_flip(True, True)

    def _subst_flip(self, fq, ft):
        if self.num.is_zero():
            return R0
        n, nq, nt = self.num.flip(fq, ft)
        d, dq, dt = self.den.flip(fq, ft)
        # self(q^-1, t^-1) = (n / q^nq t^nt) / (d / q^dq t^dt)
        sq, st = dq - nq, dt - nt
        extra_n = PolyQT.monomial(max(sq, 0), max(st, 0))
        extra_d = PolyQT.monomial(max(-sq, 0), max(-st, 0))
        return RatQT(n * extra_n, d * extra_d)

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data):
        return RatQT(PolyQT.from_json(data["num"]), PolyQT.from_json(data["den"]))

    def __repr__(self):
        if self.den == _P1:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _cross(n, d):
    """Reduce the pair (n, d) by their gcd (n from one fraction, d from the other)."""
    if d == _P1 or n.is_zero():
        return n, d
    g = poly_gcd(n, d)
    if g.is_const():
        return n, d
    return n.divexact(g), d.divexact(g)


def _reduce(num, den):
    if den.is_zero():
        raise ScalarError("zero denominator in Q(q,t)")
    if num.is_zero():
        return _P0, _P1
    if den.is_const():
        c = den.const_value()
        return (num if c == 1 else num.divexact_scalar(c)), _P1
    g = poly_gcd(num, den)
    if not g.is_const():
        num = num.divexact(g)
        den = den.divexact(g)
    if den.is_const():
        c = den.const_value()
        return (num if c == 1 else num.divexact_scalar(c)), _P1
    cont = den.rational_content()
    if cont != 1:
        num = num.divexact_scalar(cont)
        den = den.divexact_scalar(cont)
    return num, den


R0 = RatQT._raw(_P0, _P1)
R1 = RatQT._raw(_P1, _P1)
Q = RatQT._raw(PolyQT.monomial(1, 0), _P1)
T = RatQT._raw(PolyQT.monomial(0, 1), _P1)


def qpow(k):
    return RatQT.monomial(k, 0)


def tpow(k):
    return RatQT.monomial(0, k)


def ratqt_arith(a: RatQT, b: RatQT, op: str) -> RatQT:
    """Dispatch wrapper with the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ScalarError(f"unknown op {op!r}")


def ratqt_eval_q0(a: RatQT) -> RatQT:
    return a.subst_q0()


def ratqt_subst_t_inv(a: RatQT) -> RatQT:
    return a.subst_t_inv()
