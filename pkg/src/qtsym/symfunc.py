"""The ring of symmetric functions over Q(q, t) in the power-sum basis,
the Macdonald inner product and adjoints, the specialization homomorphisms
pi^infty_N (plain / hl / interp variants), and lifting finite-alphabet
symmetric polynomials back to the ring.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .partitions import multiplicity, normalize, partitions_of
from .polyengine import EngineError, MPoly, power_sum, xspec
from .scalar import R0, R1, RatQT, qpow, tpow


class SymFuncP:
    """Element of Lambda_{Q(q,t)}: finite map partition -> RatQT on p_mu."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms:
            self.terms = {normalize(mu): c for mu, c in terms.items() if not c.is_zero()}
        else:
            self.terms = {}

    @staticmethod
    def _raw(terms):
        f = SymFuncP.__new__(SymFuncP)
        f.terms = terms
        return f

    @staticmethod
    def zero():
        return SymFuncP._raw({})

    @staticmethod
    def one():
        return SymFuncP._raw({(): R1})

    @staticmethod
    def const(c: RatQT):
        return SymFuncP._raw({(): c} if not c.is_zero() else {})

    @staticmethod
    def from_p(mu, coeff=R1):
        mu = normalize(mu)
        return SymFuncP._raw({mu: coeff} if not coeff.is_zero() else {})

    def is_zero(self):
        return not self.terms

    def deg(self):
        return max((sum(mu) for mu in self.terms), default=0)

    def __eq__(self, other):
        return isinstance(other, SymFuncP) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for mu, c in other.terms.items():
            v = out.get(mu)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(mu, None)
            else:
                out[mu] = v
        return SymFuncP._raw(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for mu, c in other.terms.items():
            v = out.get(mu)
            v = -c if v is None else v - c
            if v.is_zero():
                out.pop(mu, None)
            else:
                out[mu] = v
        return SymFuncP._raw(out)

    def __neg__(self):
        return SymFuncP._raw({mu: -c for mu, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for mu, c in self.terms.items():
            for nu, d in other.terms.items():
                key = tuple(sorted(mu + nu, reverse=True))
                v = out.get(key)
                prod = c * d
                v = prod if v is None else v + prod
                if v.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = v
        return SymFuncP._raw(out)

    def scale(self, c: RatQT):
        if c.is_zero():
            return SymFuncP._raw({})
        return SymFuncP._raw({mu: v * c for mu, v in self.terms.items()})

    def map_coeffs(self, fn):
        out = {}
        for mu, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[mu] = v
        return SymFuncP._raw(out)

    def subst_t_inverse(self):
        return self.map_coeffs(lambda c: c.subst_t_inv())

    def homogeneous_slice(self, d):
        return SymFuncP._raw({mu: c for mu, c in self.terms.items() if sum(mu) == d})

    def top_component(self):
        return self.homogeneous_slice(self.deg())

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "SymFuncP(0)"
        bits = []
        for mu, c in self.sorted_terms():
            name = "p" + "".join(f"[{m}]" for m in mu) if mu else "1"
            bits.append(f"({c!r})*{name}")
        return " + ".join(bits)

    def to_json(self):
        return {"basis": "p",
                "terms": [[list(mu), c.to_json()] for mu, c in self.sorted_terms()]}

    @staticmethod
    def from_json(data):
        if data.get("basis") != "p":
            raise EngineError("unknown SymFuncP basis")
        return SymFuncP({tuple(mu): RatQT.from_json(c) for mu, c in data["terms"]})


def sfp_mul(a, b):
    return a * b


# ---------------------------------------------------------------------------
# Macdonald inner product and adjoints
# ---------------------------------------------------------------------------

def z_mu(mu) -> Fraction:
    out = Fraction(1)
    seen = {}
    for m in mu:
        seen[m] = seen.get(m, 0) + 1
    for m, r in seen.items():
        fact = 1
        for i in range(1, r + 1):
            fact *= i
        out *= Fraction(m) ** r * fact
    return out


@lru_cache(maxsize=None)
def _pn_norm(n) -> RatQT:
    """<p_n, p_n> / n = (1 - q^n)/(1 - t^n)."""
    return (R1 - qpow(n)) / (R1 - tpow(n))


def inner_product_qt(a: SymFuncP, b: SymFuncP) -> RatQT:
    """<p_mu, p_nu> = delta * prod_i i^{m_i} m_i! * prod_j (1-q^{mu_j})/(1-t^{mu_j})."""
    total = R0
    for mu, c in a.terms.items():
        d = b.terms.get(mu)
        if d is None:
            continue
        v = c * d
        v = v.scale(z_mu(mu))
        for m in mu:
            v = v * _pn_norm(m)
        total = total + v
    return total


def _apply_pn_star(n, g: SymFuncP) -> SymFuncP:
    """p_n^* = n (1-q^n)/(1-t^n) d/dp_n."""
    factor = _pn_norm(n).scale(n)
    out = {}
    for mu, c in g.terms.items():
        k = multiplicity(mu, n)
        if not k:
            continue
        lst = list(mu)
        lst.remove(n)
        key = tuple(lst)
        v = c.scale(k) * factor
        prev = out.get(key)
        v = v if prev is None else prev + v
        if v.is_zero():
            out.pop(key, None)
        else:
            out[key] = v
    return SymFuncP._raw(out)


def apply_adjoint(f: SymFuncP, g: SymFuncP) -> SymFuncP:
    """f^*(g), the adjoint of multiplication by f for the (q,t) inner product."""
    total = SymFuncP.zero()
    for mu, c in f.terms.items():
        h = g
        for n in mu:
            h = _apply_pn_star(n, h)
            if h.is_zero():
                break
        if not h.is_zero():
            total = total + h.scale(c)
    return total


# ---------------------------------------------------------------------------
# monomial <-> power-sum transition (degree by degree)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def p_in_m(n):
    """For each partition nu of n: expansion p_nu = sum_mu c m_mu (integer c)."""
    if n == 0:
        return {(): {(): Fraction(1)}}
    spec = xspec(n)
    out = {}
    for nu in partitions_of(n):
        f = MPoly.one(spec)
        for m in nu:
            f = f * power_sum(spec, "x", m)
        out[nu] = {mu: c.num.const_value()
                   for mu, c in f.to_monomial_coeffs("x").items()}
    return out


@lru_cache(maxsize=None)
def m_in_p(n):
    """For each partition mu of n: expansion m_mu = sum_nu c p_nu (rational c)."""
    parts = partitions_of(n)
    fwd = p_in_m(n)
    idx = {mu: i for i, mu in enumerate(parts)}
    size = len(parts)
    # invert the transition matrix over Q
    mat = [[Fraction(0)] * size for _ in range(size)]
    for nu, row in fwd.items():
        for mu, c in row.items():
            mat[idx[nu]][idx[mu]] = c
    inv = [[Fraction(1 if i == j else 0) for j in range(size)] for i in range(size)]
    for col in range(size):
        piv = next(r for r in range(col, size) if mat[r][col])
        mat[col], mat[piv] = mat[piv], mat[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pv = mat[col][col]
        mat[col] = [v / pv for v in mat[col]]
        inv[col] = [v / pv for v in inv[col]]
        for r in range(size):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[col])]
                inv[r] = [v - f * w for v, w in zip(inv[r], inv[col])]
    # p-vector = A . m-vector, hence m_mu = sum_nu (A^{-1})[mu][nu] p_nu
    out = {}
    for mu in parts:
        i = idx[mu]
        out[mu] = {nu: inv[i][idx[nu]] for nu in parts if inv[i][idx[nu]]}
    return out


def monomial_to_p(coeffs) -> SymFuncP:
    """Convert {partition: RatQT} monomial coefficients to the p-basis."""
    total = SymFuncP.zero()
    by_deg = {}
    for mu, c in coeffs.items():
        by_deg.setdefault(sum(mu), {})[mu] = c
    for d, slice_ in by_deg.items():
        table = m_in_p(d)
        acc = {}
        for mu, c in slice_.items():
            for nu, b in table[mu].items():
                v = acc.get(nu)
                w = c.scale(b)
                v = w if v is None else v + w
                if v.is_zero():
                    acc.pop(nu, None)
                else:
                    acc[nu] = v
        total = total + SymFuncP._raw(acc)
    return total


# ---------------------------------------------------------------------------
# specialization homomorphisms pi^infty_N
# ---------------------------------------------------------------------------

class PiMap:
    """Algebra homomorphism Lambda -> Lambda_N determined on power sums:

      plain:   p_m -> p_m(x_1..x_N)
      hl:      p_m -> p_m(x_1..x_N) + t^{-mN} / (1 - t^{-m})
      interp:  p_m -> p_m(x_1..x_N) + t^{mN} / (1 - t^m)
    """

    __slots__ = ("variant", "N")

    VARIANTS = ("plain", "hl", "interp")

    def __init__(self, variant, N):
        if variant not in self.VARIANTS:
            raise EngineError(f"unknown PiMap variant {variant!r}")
        if N < 1:
            raise EngineError("PiMap needs N >= 1")
        self.variant = variant
        self.N = N

    def shift(self, m) -> RatQT:
        if self.variant == "plain":
            return R0
        if self.variant == "hl":
            return tpow(-m * self.N) / (R1 - tpow(-m))
        return tpow(m * self.N) / (R1 - tpow(m))

    def __repr__(self):
        return f"PiMap({self.variant!r}, N={self.N})"


def apply_pi(pimap: PiMap, f: SymFuncP) -> MPoly:
    """Image of f under pi^infty_N as a polynomial in x_1..x_N."""
    spec = xspec(pimap.N)
    images = {}

    def image(m):
        g = images.get(m)
        if g is None:
            g = power_sum(spec, "x", m)
            s = pimap.shift(m)
            if not s.is_zero():
                g = g + MPoly.const(spec, s)
            images[m] = g
        return g

    total = MPoly.zero(spec)
    for mu, c in f.terms.items():
        prod = MPoly.const(spec, c)
        for m in mu:
            prod = prod * image(m)
        total = total + prod
    return total


def lift_to_lambda(f: MPoly, pimap: PiMap) -> SymFuncP:
    """The unique g in Lambda with deg g <= deg f and pi(g) = f.

    Requires the alphabet to be strictly larger than deg f, so the degree
    slice of pi is injective.  Verified by a round trip.
    """
    N = pimap.N
    d = f.total_degree()
    if N <= d:
        raise EngineError("alphabet too small")
    if f.spec.arity("x") != N:
        raise EngineError("PiMap alphabet does not match the polynomial")
    # expand f as a polynomial in the p_m(x); valid because N > deg f
    fin_p = monomial_to_p(f.to_monomial_coeffs("x"))
    # substitute p_m(x) = p_m - shift_m and collect
    total = SymFuncP.zero()
    for nu, c in fin_p.terms.items():
        prod = SymFuncP.const(c)
        for m in nu:
            prod = prod * (SymFuncP.from_p((m,)) - SymFuncP.const(pimap.shift(m)))
        total = total + prod
    back = apply_pi(pimap, total)
    if back != f:
        raise EngineError("lift round trip failed")
    return total


def subst_t_inverse(f: SymFuncP) -> SymFuncP:
    return f.subst_t_inverse()
