"""Sparse multivariate polynomials/series over Q(q, t) in named variable
groups, with per-group total-degree caps, exact division, substitution,
q-shift operators, S_N symmetrization, and monomial-basis extraction.

Variable groups are named ('x', 'y', 'u', 'z', ...); a term is a flat
exponent tuple covering all groups in spec order.  A finite degree cap on
a group turns the ring into a truncated series ring in those variables:
products silently drop terms beyond the cap.

Variable indices in the public API are 1-based, matching x_1, ..., x_N.
"""

from __future__ import annotations

from itertools import permutations

from .scalar import PolyQT, R0, R1, RatQT, ScalarError, poly_gcd, qpow, tpow


class EngineError(ArithmeticError):
    pass


class InexactDivision(EngineError):
    pass


class VarSpec:
    """Ordered list of (group name, arity, degree cap or None)."""

    __slots__ = ("groups", "_index", "nvars", "_capped")

    def __init__(self, groups):
        gs = []
        for name, arity, cap in groups:
            if arity < 0 or (cap is not None and cap < 0):
                raise EngineError("bad VarSpec entry")
            gs.append((str(name), int(arity), cap))
        self.groups = tuple(gs)
        self._index = {}
        off = 0
        for name, arity, cap in self.groups:
            if name in self._index:
                raise EngineError(f"duplicate group {name!r}")
            self._index[name] = (off, arity, cap)
            off += arity
        self.nvars = off
        self._capped = tuple((self._index[n][0], self._index[n][0] + self._index[n][1], c)
                             for n, a, c in self.groups if c is not None)

    def slot(self, group, i):
        """Global index of the i-th (1-based) variable of a group."""
        off, arity, _ = self._index[group]
        if not 1 <= i <= arity:
            raise EngineError(f"variable {group}{i} out of range")
        return off + i - 1

    def span(self, group):
        off, arity, _ = self._index[group]
        return off, off + arity

    def arity(self, group):
        return self._index[group][1]

    def cap(self, group):
        return self._index[group][2]

    def __eq__(self, other):
        return isinstance(other, VarSpec) and self.groups == other.groups

    def __hash__(self):
        return hash(self.groups)

    def __repr__(self):
        return f"VarSpec({list(self.groups)!r})"

    def to_json(self):
        return [[n, a, c] for n, a, c in self.groups]

    @staticmethod
    def from_json(data):
        return VarSpec([(n, a, c) for n, a, c in data])


def xspec(N, cap=None):
    return VarSpec([("x", N, cap)])


def _ordkey(spec):
    spans = [spec.span(g) for g, _, _ in spec.groups]

    def key(e):
        out = []
        for a, b in spans:
            seg = e[a:b]
            out.append(sum(seg))
            out.extend(seg)
        return tuple(out)

    return key


class MPoly:
    """Sparse polynomial over Q(q, t); terms: exponent tuple -> RatQT."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms=None):
        self.spec = spec
        if terms:
            self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        else:
            self.terms = {}

    @staticmethod
    def _raw(spec, terms):
        p = MPoly.__new__(MPoly)
        p.spec = spec
        p.terms = terms
        return p

    @staticmethod
    def zero(spec):
        return MPoly._raw(spec, {})

    @staticmethod
    def const(spec, c: RatQT):
        if c.is_zero():
            return MPoly._raw(spec, {})
        return MPoly._raw(spec, {(0,) * spec.nvars: c})

    @staticmethod
    def one(spec):
        return MPoly.const(spec, R1)

    @staticmethod
    def var(spec, group, i, power=1, coeff=R1):
        e = [0] * spec.nvars
        e[spec.slot(group, i)] = power
        return MPoly._raw(spec, {tuple(e): coeff})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MPoly) and self.spec == other.spec
                and self.terms == other.terms)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return MPoly._raw(self.spec, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = -c if v is None else v - c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return MPoly._raw(self.spec, out)

    def __neg__(self):
        return MPoly._raw(self.spec, {e: -c for e, c in self.terms.items()})

    def _check(self, other):
        if self.spec != other.spec:
            raise EngineError("incompatible VarSpec")

    def _within_caps(self, e):
        for a, b, cap in self.spec._capped:
            if sum(e[a:b]) > cap:
                return False
        return True

    def __mul__(self, other):
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return MPoly._raw(self.spec, {})
        if len(a) > len(b):
            a, b = b, a
        capped = self.spec._capped
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                ok = True
                for s, t, cap in capped:
                    if sum(e[s:t]) > cap:
                        ok = False
                        break
                if not ok:
                    continue
                v = out.get(e)
                prod = ca * cb
                v = prod if v is None else v + prod
                if v.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = v
        return MPoly._raw(self.spec, out)

    def scale(self, c: RatQT):
        if c.is_zero():
            return MPoly._raw(self.spec, {})
        return MPoly._raw(self.spec, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, k):
        out = MPoly.one(self.spec)
        for _ in range(k):
            out = out * self
        return out

    # -- inspection ----------------------------------------------------------

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, group):
        a, b = self.spec.span(group)
        return max((sum(e[a:b]) for e in self.terms), default=0)

    def leading(self):
        key = _ordkey(self.spec)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def sorted_terms(self):
        key = _ordkey(self.spec)
        return sorted(self.terms.items(), key=lambda ec: key(ec[0]), reverse=True)

    def coeff_of(self, e):
        return self.terms.get(tuple(e), R0)

    def constant_term(self):
        return self.terms.get((0,) * self.spec.nvars, R0)

    # -- variable manipulation ------------------------------------------------

    def subst_var(self, group, i, value: RatQT):
        """Substitute x_{group,i} := value (an element of Q(q,t))."""
        j = self.spec.slot(group, i)
        out = {}
        powers = {0: R1}
        for e, c in self.terms.items():
            k = e[j]
            if k:
                if k not in powers:
                    powers[k] = value ** k
                c = c * powers[k]
                if c.is_zero():
                    continue
                e = e[:j] + (0,) + e[j + 1:]
            v = out.get(e)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return MPoly._raw(self.spec, out)

    def q_shift(self, group, i, which="Tq"):
        """T_q multiplies x_i-exponents into q-powers; T_0 sets x_i := 0."""
        j = self.spec.slot(group, i)
        if which == "Tq":
            return MPoly._raw(self.spec,
                              {e: (c * qpow(e[j]) if e[j] else c)
                               for e, c in self.terms.items()})
        if which == "T0":
            return MPoly._raw(self.spec,
                              {e: c for e, c in self.terms.items() if e[j] == 0})
        raise EngineError(f"unknown shift {which!r}")

    def mul_var(self, group, i, k=1):
        """Multiply by x_i^k; k < 0 performs exact monomial division."""
        j = self.spec.slot(group, i)
        out = {}
        for e, c in self.terms.items():
            n = e[j] + k
            if n < 0:
                raise InexactDivision(f"inexact division by {group}{i}")
            out[e[:j] + (n,) + e[j + 1:]] = c
        return MPoly._raw(self.spec, out)

    def permute_group(self, group, perm):
        """Apply w: f(x_1..x_N) -> f(x_w(1)..x_w(N)); perm is 0-based w."""
        a, b = self.spec.span(group)
        n = b - a
        out = {}
        for e, c in self.terms.items():
            seg = e[a:b]
            new = [0] * n
            for j in range(n):
                new[perm[j]] = seg[j]
            out[e[:a] + tuple(new) + e[b:]] = c
        return MPoly._raw(self.spec, out)

    def eval_point(self, assignments) -> RatQT:
        """Full evaluation; assignments: {group: [RatQT, ...] (length=arity)}."""
        spans = {}
        for g, vals in assignments.items():
            a, b = self.spec.span(g)
            if len(vals) != b - a:
                raise EngineError(f"wrong number of values for group {g!r}")
            spans[g] = (a, vals)
        unassigned = [self.spec.span(g) for g, arity, _ in self.spec.groups
                      if g not in spans and arity > 0]
        total = R0
        pcache = {}
        for e, c in self.terms.items():
            for a2, b2 in unassigned:
                if any(e[a2:b2]):
                    raise EngineError("eval_point missing a used group")
            v = c
            for g, (a, vals) in spans.items():
                for j, val in enumerate(vals):
                    k = e[a + j]
                    if k:
                        pk = pcache.get((g, j, k))
                        if pk is None:
                            pk = pcache[(g, j, k)] = val ** k
                        v = v * pk
            total = total + v
        return total

    def split_by_power(self, group, i):
        """dict power -> MPoly (with that variable's exponent reset to 0)."""
        j = self.spec.slot(group, i)
        out = {}
        for e, c in self.terms.items():
            k = e[j]
            d = out.setdefault(k, {})
            d[e[:j] + (0,) + e[j + 1:]] = c
        return {k: MPoly._raw(self.spec, d) for k, d in out.items()}

    def transplant(self, target: VarSpec, group_map=None):
        """Re-home into another spec; group_map maps source group names to
        target group names (identity by default).  Target arities must be
        at least the source arities; exponents pad with zeros."""
        group_map = group_map or {}
        moves = []
        for name, arity, _ in self.spec.groups:
            if arity == 0:
                continue
            tgt = group_map.get(name, name)
            a, b = self.spec.span(name)
            ta, tb = target.span(tgt)
            if tb - ta < arity:
                raise EngineError("target group too small")
            moves.append((a, arity, ta))
        out = {}
        for e, c in self.terms.items():
            new = [0] * target.nvars
            for a, arity, ta in moves:
                for j in range(arity):
                    new[ta + j] = e[a + j]
            out[tuple(new)] = c
        return MPoly._raw(target, out)

    def map_coeffs(self, fn):
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[e] = v
        return MPoly._raw(self.spec, out)

    def clear_denominators(self):
        """Return (g, d) with polynomial-coefficient g and PolyQT d, f = g/d."""
        den = None
        for c in self.terms.values():
            if not c.is_poly():
                if den is None:
                    den = c.den
                else:
                    g = poly_gcd(den, c.den)
                    den = den.divexact(g) * c.den
        if den is None:
            return self, PolyQT.const(1)
        mult = RatQT(den)
        return self.map_coeffs(lambda c: c * mult), den

    # -- division -------------------------------------------------------------

    def exact_divide(self, other):
        """Exact multivariate division; raises InexactDivision otherwise."""
        self._check(other)
        if other.is_zero():
            raise EngineError("division by zero polynomial")
        for a, b, cap in self.spec._capped:
            if any(any(e[a:b]) for e in other.terms):
                raise EngineError("divisor meets a capped group")
        if self.is_zero():
            return self
        key = _ordkey(self.spec)
        eb, cb = other.leading()
        rem = dict(self.terms)
        bitems = [(e, c) for e, c in other.terms.items()]
        out = {}
        while rem:
            ea = max(rem, key=key)
            ca = rem[ea]
            eq = tuple(x - y for x, y in zip(ea, eb))
            if any(x < 0 for x in eq):
                raise InexactDivision("inexact division")
            c = ca / cb
            out[eq] = c
            for e2, c2 in bitems:
                e = tuple(x + y for x, y in zip(eq, e2))
                v = rem.get(e)
                v = -(c * c2) if v is None else v - c * c2
                if v.is_zero():
                    rem.pop(e, None)
                else:
                    rem[e] = v
        return MPoly._raw(self.spec, out)

    def divide_vandermonde(self, group):
        """Exact division by prod_{i<j} (x_i - x_j) of the group."""
        n = self.spec.arity(group)
        out = self
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                fac = (MPoly.var(self.spec, group, i)
                       - MPoly.var(self.spec, group, j))
                out = out.exact_divide(fac)
        return out

    # -- symmetry and monomial basis -------------------------------------------

    def is_symmetric_in(self, group):
        n = self.spec.arity(group)
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.permute_group(group, perm) != self:
                return False
        return True

    def to_monomial_coeffs(self, group):
        """Coefficients on monomial symmetric polynomials m_lambda of the group.

        The input must be symmetric in the group and involve no other group.
        """
        a, b = self.spec.span(group)
        for e in self.terms:
            if any(e[:a]) or any(e[b:]):
                raise EngineError("to_monomial_coeffs: foreign variables present")
        if not self.is_symmetric_in(group):
            raise EngineError("asymmetric input")
        out = {}
        for e, c in self.terms.items():
            seg = e[a:b]
            if seg == tuple(sorted(seg, reverse=True)):
                out[tuple(x for x in seg if x)] = c
        return out

    def __repr__(self):
        if not self.terms:
            return "MPoly(0)"
        names = []
        for g, arity, _ in self.spec.groups:
            for i in range(1, arity + 1):
                names.append(f"{g}{i}" if arity > 1 else g)
        bits = []
        for e, c in self.sorted_terms():
            mon = "*".join(f"{names[k]}^{p}" if p > 1 else names[k]
                           for k, p in enumerate(e) if p)
            bits.append(f"({c!r})" + (f"*{mon}" if mon else ""))
        return " + ".join(bits)

    def to_json(self):
        return {"vars": self.spec.to_json(),
                "terms": [[list(e), c.to_json()] for e, c in self.sorted_terms()]}

    @staticmethod
    def from_json(data):
        spec = VarSpec.from_json(data["vars"])
        return MPoly(spec, {tuple(e): RatQT.from_json(c) for e, c in data["terms"]})


# ---------------------------------------------------------------------------
# module-level constructions
# ---------------------------------------------------------------------------

def monomial_sym(spec, group, lam):
    """Monomial symmetric polynomial m_lambda(group variables)."""
    n = spec.arity(group)
    lam = tuple(lam)
    if len(lam) > n:
        return MPoly.zero(spec)
    a, _ = spec.span(group)
    base = lam + (0,) * (n - len(lam))
    out = {}
    seen = set()
    for p in permutations(base):
        if p in seen:
            continue
        seen.add(p)
        e = [0] * spec.nvars
        e[a:a + n] = p
        out[tuple(e)] = R1
    return MPoly._raw(spec, out)


def from_monomial_coeffs(spec, group, coeffs):
    out = MPoly.zero(spec)
    for lam, c in coeffs.items():
        out = out + monomial_sym(spec, group, lam).scale(c)
    return out


def power_sum(spec, group, m):
    """p_m over the group's variables."""
    n = spec.arity(group)
    a, _ = spec.span(group)
    out = {}
    for i in range(n):
        e = [0] * spec.nvars
        e[a + i] = m
        out[tuple(e)] = R1
    return MPoly._raw(spec, out)


def vandermonde(spec, group):
    out = MPoly.one(spec)
    n = spec.arity(group)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * (MPoly.var(spec, group, i) - MPoly.var(spec, group, j))
    return out


def _sign(perm):
    n = len(perm)
    seen = [False] * n
    sgn = 1
    for i in range(n):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sgn = -sgn
    return sgn


def symmetrize_SN(numerator: MPoly, group="x") -> MPoly:
    """sum_w w(numerator / V) = [sum_w sgn(w) w(numerator)] / V, V the
    Vandermonde of the group.  The final division is exact by theory and
    asserted at runtime.
    """
    spec = numerator.spec
    n = spec.arity(group)
    if n == 0:
        return numerator
    a, b = spec.span(group)
    acc = {}
    for perm in permutations(range(n)):
        sgn = _sign(perm)
        for e, c in numerator.terms.items():
            seg = e[a:b]
            new = [0] * n
            for j in range(n):
                new[perm[j]] = seg[j]
            ee = e[:a] + tuple(new) + e[b:]
            v = acc.get(ee)
            if v is None:
                acc[ee] = c if sgn > 0 else -c
            else:
                v = v + c if sgn > 0 else v - c
                if v.is_zero():
                    del acc[ee]
                else:
                    acc[ee] = v
    summed = MPoly._raw(spec, acc)
    return summed.divide_vandermonde(group)


def geom_series_factor(spec, x_group, x_index, y_group, invert=False) -> MPoly:
    """prod_l (1 - t x_i y_l) / (1 - x_i y_l) over all y-variables (or its
    reciprocal), as a series truncated by the y-group degree cap."""
    D = spec.cap(y_group)
    if D is None:
        raise EngineError("geom_series_factor needs a capped y-group")
    M = spec.arity(y_group)
    t = tpow(1)
    out = MPoly.one(spec)
    for l in range(1, M + 1):
        xy = MPoly.var(spec, x_group, x_index) * MPoly.var(spec, y_group, l)
        geo = MPoly.one(spec)
        pw = MPoly.one(spec)
        for k in range(1, D + 1):
            pw = pw * xy
            if pw.is_zero():
                break
            geo = geo + (pw.scale(tpow(k)) if invert else pw)
        lin = MPoly.one(spec) - (xy if invert else xy.scale(t))
        out = out * (lin * geo)
    return out


def u_pochhammer(spec, k, u_group="u", t_step=1) -> MPoly:
    """prod_{i=0}^{k-1} (1 - t^{i*t_step} u) as an MPoly; t_step=-1 gives the
    (u; t^{-1}) variant."""
    out = MPoly.one(spec)
    u = MPoly.var(spec, u_group, 1)
    for i in range(k):
        out = out * (MPoly.one(spec) - u.scale(tpow(i * t_step)))
    return out


def mpoly_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise EngineError(f"unknown op {op!r}")
