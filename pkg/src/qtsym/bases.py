"""Constructors for the polynomial families: Hall-Littlewood P and Q,
Macdonald functions, interpolation Macdonald polynomials (by their
vanishing characterization), the inhomogeneous Hall-Littlewood family F
(four independent routes), special values, and lifts to the ring of
symmetric functions.

Results are memoized per (family, lambda, N[, route]); set MACD_CACHE_DIR
to persist the cache as JSON files.
"""

from __future__ import annotations

import json
import os
from itertools import combinations, permutations

from .linsolve import LinSolveError, solve_ff
from .partitions import (cells, conjugate, dominance_leq, enumerate_ssyt,
                         is_vertical_strip, normalize, nstat, part,
                         partitions_of, partitions_up_to, phi, psi_weight,
                         tau_coeff)
from .polyengine import (EngineError, MPoly, VarSpec, _sign,
                         from_monomial_coeffs, monomial_sym, symmetrize_SN,
                         vandermonde, xspec)
from .scalar import (PoleAtQZero, R0, R1, RatQT, ScalarError, qpow, tpow)
from .symfunc import PiMap, SymFuncP, apply_pi, inner_product_qt, \
    lift_to_lambda, monomial_to_p


class RouteDisagreement(ArithmeticError):
    """Two construction routes for the same object differ: a falsified
    theorem instance.  Carries both values."""

    def __init__(self, msg, lhs, rhs):
        super().__init__(msg)
        self.lhs = lhs
        self.rhs = rhs


FAMILIES = ("HL_P", "HL_Q", "MACDONALD", "INTERP", "INHOM_F")

_memo = {}


def _cache_path(key):
    root = os.environ.get("MACD_CACHE_DIR")
    if not root:
        return None
    fam, lam, N, route = key
    name = f"{fam}_l{'-'.join(map(str, lam))}_N{N}" + (f"_{route}" if route else "")
    return os.path.join(root, name + ".json")


def _cached(family, lam, N, route, builder):
    key = (family, tuple(lam), N, route)
    if key in _memo:
        return _memo[key]
    path = _cache_path(key)
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        val = MPoly.from_json(data) if "vars" in data else SymFuncP.from_json(data)
        _memo[key] = val
        return val
    val = builder()
    _memo[key] = val
    if path:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w") as fh:
            json.dump(val.to_json(), fh)
    return val


# ---------------------------------------------------------------------------
# Hall-Littlewood
# ---------------------------------------------------------------------------

def v_lambda(lam, N) -> RatQT:
    """v_lam(t) = prod_{i>=0} prod_{j<=m_i} (1-t^j)/(1-t), m_0 = N - len(lam)."""
    mults = {0: N - len(lam)}
    for p in lam:
        mults[p] = mults.get(p, 0) + 1
    out = R1
    one_minus_t = R1 - tpow(1)
    for m in mults.values():
        out = out * phi(m) / one_minus_t ** m
    return out


def b_lambda(lam) -> RatQT:
    """b_lam(t) = prod_{i>=1} phi_{m_i(lam)}(t)."""
    mults = {}
    for p in lam:
        mults[p] = mults.get(p, 0) + 1
    out = R1
    for m in mults.values():
        out = out * phi(m)
    return out


def _assert_t_coeffs(f: MPoly, laurent=False, what=""):
    for c in f.terms.values():
        num_ok = all(e[0] == 0 for e in c.num.terms) and \
            all(v.denominator == 1 for v in c.num.terms.values())
        den_ok = c.is_poly() or (laurent and c.den.is_monomial()
                                 and all(e[0] == 0 for e in c.den.terms))
        if not (num_ok and den_ok):
            raise EngineError(f"{what}: coefficient {c!r} not in the expected ring")


def hl_p(lam, N) -> MPoly:
    """Hall-Littlewood P_lam(x_1..x_N; t) by S_N symmetrization."""
    lam = normalize(lam)

    def build():
        spec = xspec(N)
        if len(lam) > N:
            return MPoly.zero(spec)
        num = MPoly.one(spec)
        for i, p in enumerate(lam, start=1):
            num = num * MPoly.var(spec, "x", i, p)
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                num = num * (MPoly.var(spec, "x", i)
                             - MPoly.var(spec, "x", j).scale(tpow(1)))
        out = symmetrize_SN(num, "x").scale(v_lambda(lam, N).inverse())
        _assert_t_coeffs(out, what="hl_p")
        return out

    return _cached("HL_P", lam, N, None, build)


def hl_p_func(lam) -> SymFuncP:
    """The Hall-Littlewood function (stable lift through x_N = 0)."""
    lam = normalize(lam)
    N = sum(lam) + 1

    def build():
        return lift_to_lambda(hl_p(lam, N), PiMap("plain", N))

    return _cached("HL_P", lam, -1, None, build)


def hl_q_func(lam) -> SymFuncP:
    """Dual Hall-Littlewood function Q_lam = b_lam(t) P_lam."""
    lam = normalize(lam)

    def build():
        return hl_p_func(lam).scale(b_lambda(lam))

    return _cached("HL_Q", lam, -1, None, build)


# ---------------------------------------------------------------------------
# Macdonald functions
# ---------------------------------------------------------------------------

def _m_in_p_sfp(mu) -> SymFuncP:
    return monomial_to_p({normalize(mu): R1})


def macdonald_func(lam) -> SymFuncP:
    """Macdonald function M_lam: monomial-triangular, orthogonal to all
    m_mu with mu < lam in dominance, leading coefficient 1."""
    lam = normalize(lam)

    def build():
        below = [mu for mu in partitions_of(sum(lam))
                 if mu != lam and dominance_leq(mu, lam)]
        m_lam = _m_in_p_sfp(lam)
        if not below:
            return m_lam
        m_others = [_m_in_p_sfp(mu) for mu in below]
        rows = [[inner_product_qt(mj, _m_in_p_sfp(nu)) for mj in m_others]
                for nu in below]
        rhs = [-inner_product_qt(m_lam, _m_in_p_sfp(nu)) for nu in below]
        coeffs = solve_ff(rows, rhs)
        out = m_lam
        for c, mp in zip(coeffs, m_others):
            out = out + mp.scale(c)
        return out

    return _cached("MACDONALD", lam, -1, None, build)


# ---------------------------------------------------------------------------
# interpolation Macdonald polynomials
# ---------------------------------------------------------------------------

def _grid_point(mu, N):
    """The vanishing grid point (q^{-mu_1}, q^{-mu_2} t, ..., q^{-mu_N} t^{N-1})."""
    return [qpow(-part(mu, i)) * tpow(i - 1) for i in range(1, N + 1)]


def interp_support(lam, N):
    """Monomial support allowed for I_{lam|N}: everything of lower degree
    plus dominated partitions at top degree, lengths bounded by N."""
    lam = normalize(lam)
    lower = [mu for mu in partitions_up_to(sum(lam) - 1, N)] if sum(lam) else []
    top = [mu for mu in partitions_of(sum(lam), N) if dominance_leq(mu, lam)]
    return lower + top


def interp_macdonald(lam, N) -> MPoly:
    """I_{lam|N}(x; q, t): unique symmetric polynomial of degree |lam| with
    unit m_lam coefficient vanishing on the grid points of all other mu
    with |mu| <= |lam|."""
    lam = normalize(lam)
    if len(lam) > N:
        raise EngineError("interp_macdonald needs len(lam) <= N")

    def build():
        spec = xspec(N)
        support = interp_support(lam, N)
        unknowns = [mu for mu in support if mu != lam]
        conds = [mu for mu in partitions_up_to(sum(lam), N) if mu != lam]
        m_vals = {}

        def m_at(nu, point_key, point):
            key = (nu, point_key)
            v = m_vals.get(key)
            if v is None:
                v = monomial_sym(spec, "x", nu).eval_point({"x": point})
                m_vals[key] = v
            return v

        rows, rhs = [], []
        for mu in conds:
            point = _grid_point(mu, N)
            rows.append([m_at(nu, mu, point) for nu in unknowns])
            rhs.append(-m_at(lam, mu, point))
        try:
            coeffs = solve_ff(rows, rhs)
        except LinSolveError as exc:
            raise EngineError(f"vanishing system degenerate: {exc}") from exc
        out = monomial_sym(spec, "x", lam)
        for c, nu in zip(coeffs, unknowns):
            if not c.is_zero():
                out = out + monomial_sym(spec, "x", nu).scale(c)
        # the lam-point value must be the closed-form normalization constant
        got = out.eval_point({"x": _grid_point(lam, N)})
        if got != special_values(lam, N, "C_norm"):
            raise EngineError("interpolation solution violates the "
                              "normalization constant")
        return out

    return _cached("INTERP", lam, N, None, build)


def interp_func(lam) -> SymFuncP:
    """Interpolation Macdonald function I_lam (lift along x_N = t^{N-1})."""
    lam = normalize(lam)
    N = sum(lam) + 1

    def build():
        return lift_to_lambda(interp_macdonald(lam, N), PiMap("interp", N))

    return _cached("INTERP", lam, -1, None, build)


def special_values(lam, N, which, a: RatQT = None) -> RatQT:
    """Closed-form special values of I_{lam|N}."""
    lam = normalize(lam)
    if len(lam) > N:
        raise EngineError("special_values needs len(lam) <= N")
    lc = conjugate(lam)
    if which == "C_norm":
        out = qpow(-2 * nstat(lc) - sum(lam)) * tpow(nstat(lam))
        for (i, j) in cells(lam):
            arm = lam[i - 1] - j
            leg = lc[j - 1] - i
            out = out * (R1 - qpow(arm + 1) * tpow(leg))
        return out
    if which == "at_zeros":
        out = qpow(-nstat(lc)) * tpow(2 * nstat(lam))
        if sum(lam) % 2:
            out = -out
        for (i, j) in cells(lam):
            arm, leg = lam[i - 1] - j, lc[j - 1] - i
            coarm, coleg = j - 1, i - 1
            out = out * (R1 - qpow(coarm) * tpow(N - coleg))
            out = out / (R1 - qpow(arm) * tpow(leg + 1))
        return out
    if which == "principal":
        if a is None:
            raise EngineError("principal value needs the argument a")
        out = tpow(nstat(lam))
        for (i, j) in cells(lam):
            arm, leg = lam[i - 1] - j, lc[j - 1] - i
            coarm, coleg = j - 1, i - 1
            out = out * (R1 - qpow(coarm) * tpow(N - coleg))
            out = out * (a - qpow(-coarm) * tpow(coleg))
            out = out / (R1 - qpow(arm) * tpow(leg + 1))
        return out
    raise EngineError(f"unknown special value {which!r}")


# ---------------------------------------------------------------------------
# inhomogeneous Hall-Littlewood polynomials: four routes
# ---------------------------------------------------------------------------

ROUTES = ("definition", "tau_expansion", "tableau", "determinantal")


def _inhom_f_definition(lam, N):
    spec = xspec(N)
    k = len(lam)
    num = MPoly.one(spec)
    for i in range(1, k + 1):
        # (1 - t^{1-N} x_i^{-1}) x_i^{lam_i} = x_i^{lam_i} - t^{1-N} x_i^{lam_i - 1}
        num = num * (MPoly.var(spec, "x", i, lam[i - 1])
                     - MPoly.var(spec, "x", i, lam[i - 1] - 1).scale(tpow(1 - N)))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            num = num * (MPoly.var(spec, "x", i)
                         - MPoly.var(spec, "x", j).scale(tpow(1)))
    return symmetrize_SN(num, "x").scale(v_lambda(lam, N).inverse())


def _vertical_strip_subs(lam):
    """All mu with mu inside lam and lam/mu a vertical strip."""
    k = len(lam)
    seen = set()
    for r in range(k + 1):
        for rows in combinations(range(k), r):
            mu = list(lam)
            for i in rows:
                mu[i] -= 1
            if all(mu[i] >= mu[i + 1] for i in range(k - 1)) and all(m >= 0 for m in mu):
                seen.add(normalize(mu))
    return sorted(seen)


def _inhom_f_tau(lam, N):
    spec = xspec(N)
    out = MPoly.zero(spec)
    for mu in _vertical_strip_subs(lam):
        c = tau_coeff(lam, mu, N)
        if not c.is_zero():
            out = out + hl_p(mu, N).scale(c)
    return out


def _inhom_f_tableau(lam, N):
    spec = xspec(N)
    out = MPoly.zero(spec)
    for T in enumerate_ssyt(lam, N):
        prod = MPoly.const(spec, psi_weight(T))
        for (i, j) in cells(lam):
            v = T.entry(i, j)
            factor = MPoly.var(spec, "x", v)
            if j == 1:
                factor = factor - MPoly.const(spec, tpow(v - N - i + 1))
            prod = prod * factor
        out = out + prod
    return out


def _inhom_f_determinantal(lam, N):
    spec = xspec(N)
    f0 = hl_p(lam, N)
    if f0.is_zero():
        return f0
    total = MPoly.zero(spec)
    for w in permutations(range(N)):  # w[j-1] + 1 = row index assigned to column j
        g = f0
        for j in range(1, N + 1):
            i = w[j - 1] + 1
            # x_j^{N-i-1} { t^{1-i} T_{x_j} + (x_j - t^{1-N}) }
            const_part = g.q_shift("x", j, "T0").scale(tpow(1 - i))
            g = const_part + g.mul_var("x", j, 1) - g.scale(tpow(1 - N))
            g = g.mul_var("x", j, N - i - 1)
            if g.is_zero():
                break
        if _sign(w) < 0:
            total = total - g
        else:
            total = total + g
    return total.divide_vandermonde("x")


def inhom_f(lam, N, route="definition") -> MPoly:
    """Inhomogeneous Hall-Littlewood polynomial F_lam(x_1..x_N; t).

    The four routes are independent constructions of the same object;
    ``inhom_f_all_routes`` cross-validates them.
    """
    lam = normalize(lam)
    if route not in ROUTES:
        raise EngineError(f"unknown route {route!r}")
    if len(lam) > N:
        return MPoly.zero(xspec(N))

    def build():
        out = {
            "definition": _inhom_f_definition,
            "tau_expansion": _inhom_f_tau,
            "tableau": _inhom_f_tableau,
            "determinantal": _inhom_f_determinantal,
        }[route](lam, N)
        _assert_t_coeffs(out, laurent=True, what="inhom_f")
        return out

    return _cached("INHOM_F", lam, N, route, build)


def inhom_f_all_routes(lam, N) -> MPoly:
    """Compute F_lam by all four routes; RouteDisagreement if any differ."""
    vals = {r: inhom_f(lam, N, r) for r in ROUTES}
    ref = vals["definition"]
    for r in ROUTES[1:]:
        if vals[r] != ref:
            raise RouteDisagreement(f"route {r} disagrees with definition "
                                    f"for lam={lam}, N={N}", ref, vals[r])
    return ref


def inhom_f_func(lam, t_variant="t") -> SymFuncP:
    """Inhomogeneous Hall-Littlewood function F_lam(.; t) or F_lam(.; t^{-1})."""
    lam = normalize(lam)
    if t_variant not in ("t", "t_inverse"):
        raise EngineError(f"unknown t_variant {t_variant!r}")
    N = sum(lam) + 1

    def build():
        return lift_to_lambda(inhom_f(lam, N), PiMap("hl", N))

    base = _cached("INHOM_F", lam, -1, None, build)
    if t_variant == "t":
        return base
    return _cached("INHOM_F", lam, -1, "tinv", base.subst_t_inverse)


def limit_q0_interp(lam, N) -> MPoly:
    """lim_{q->0} I_{lam|N}(x; 1/q, 1/t): substitute (q,t) -> (1/q,1/t) in
    the coefficients of the solved polynomial and evaluate at q = 0.

    A pole in any coefficient falsifies the degeneration theorem instance.
    """
    lam = normalize(lam)
    I = interp_macdonald(lam, N)
    flipped = I.map_coeffs(lambda c: c.subst_qt_inv())
    try:
        return flipped.map_coeffs(lambda c: c.subst_q0())
    except PoleAtQZero as exc:
        raise PoleAtQZero(
            f"q->0 limit of I_(lam={lam})|N={N} does not exist: {exc}") from exc


# ---------------------------------------------------------------------------
# CLI-facing basis table
# ---------------------------------------------------------------------------

def basis_element(family, lam, N, route="definition", t_variant="t"):
    """Uniform constructor: finite N gives an MPoly, N=None the function."""
    lam = normalize(lam)
    family = family.upper()
    if family == "HL_P":
        return hl_p(lam, N) if N is not None else hl_p_func(lam)
    if family == "HL_Q":
        if N is not None:
            return hl_p(lam, N).scale(b_lambda(lam))
        return hl_q_func(lam)
    if family == "MACDONALD":
        if N is not None:
            raise EngineError("MACDONALD is a symmetric-function family; use N=inf")
        return macdonald_func(lam)
    if family == "INTERP":
        return interp_macdonald(lam, N) if N is not None else interp_func(lam)
    if family == "INHOM_F":
        if N is not None:
            return inhom_f(lam, N, route)
        return inhom_f_func(lam, t_variant)
    raise EngineError(f"unknown family {family!r}")
