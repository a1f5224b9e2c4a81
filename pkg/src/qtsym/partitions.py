"""Partitions, their statistics, skew predicates, t-analogues, and
semistandard tableau enumeration with Hall-Littlewood weights.

Partitions are plain tuples of weakly decreasing positive integers,
stored without trailing zeros; ``part(lam, i)`` reads 0 past the end.
"""

from __future__ import annotations

from functools import lru_cache

from .scalar import R0, R1, RatQT, ScalarError, T, tpow


def normalize(parts) -> tuple:
    """Validate and trim an iterable of parts into a partition tuple."""
    parts = tuple(int(p) for p in parts if int(p) != 0)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"parts not weakly decreasing: {parts}")
    return parts


def part(lam, i):
    """lam_i with zero padding (1-based)."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def size(lam):
    return sum(lam)


def length(lam):
    return len(lam)


def conjugate(lam) -> tuple:
    if not lam:
        return ()
    out = [0] * lam[0]
    for p in lam:
        for j in range(p):
            out[j] += 1
    return tuple(out)


def nstat(lam):
    """n(lam) = sum (i-1) lam_i."""
    return sum(i * p for i, p in enumerate(lam))


def multiplicity(lam, k):
    return sum(1 for p in lam if p == k)


def cells(lam):
    """Young-diagram cells as 1-based (row, col) pairs."""
    return [(i + 1, j + 1) for i, p in enumerate(lam) for j in range(p)]


def arm(lam, i, j):
    return lam[i - 1] - j


def leg(lam, i, j):
    return conjugate(lam)[j - 1] - i


def partition_stats(lam):
    """Conjugate, n(lam), and per-cell arm/leg/coarm/coleg maps."""
    lam = normalize(lam)
    conj = conjugate(lam)
    arms, legs, coarms, colegs = {}, {}, {}, {}
    for (i, j) in cells(lam):
        arms[(i, j)] = lam[i - 1] - j
        legs[(i, j)] = conj[j - 1] - i
        coarms[(i, j)] = j - 1
        colegs[(i, j)] = i - 1
    return {
        "conjugate": conj,
        "n": nstat(lam),
        "arms": arms,
        "legs": legs,
        "coarms": coarms,
        "colegs": colegs,
    }


def contains(lam, mu):
    """mu_i <= lam_i for all i."""
    return all(part(lam, i + 1) >= p for i, p in enumerate(mu))


def is_vertical_strip(lam, mu):
    """lam/mu is a vertical strip: mu inside lam, at most one box per row."""
    n = max(len(lam), len(mu))
    for i in range(1, n + 1):
        d = part(lam, i) - part(mu, i)
        if d < 0 or d > 1:
            return False
    return True


def is_horizontal_strip(lam, mu):
    """lam/mu is a horizontal strip (at most one box per column)."""
    return is_vertical_strip(conjugate(lam), conjugate(mu))


def dominance_leq(mu, lam):
    """mu <= lam in dominance order (requires equal size)."""
    if sum(mu) != sum(lam):
        return False
    s_m = s_l = 0
    for i in range(1, max(len(mu), len(lam)) + 1):
        s_m += part(mu, i)
        s_l += part(lam, i)
        if s_m > s_l:
            return False
    return True


def skew_predicates(lam, mu):
    return {
        "contains": contains(lam, mu),
        "vertical_strip": is_vertical_strip(lam, mu),
        "horizontal_strip": is_horizontal_strip(lam, mu),
        "dominance_leq": dominance_leq(lam, mu),
    }


def partitions_of(n, max_length=None):
    """All partitions of n, optionally of bounded length, in reverse-lex order."""
    out = []

    def rec(rem, maxpart, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        if max_length is not None and len(acc) == max_length:
            return
        for p in range(min(rem, maxpart), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return out


def partitions_up_to(max_size, max_length=None):
    out = []
    for n in range(max_size + 1):
        out.extend(partitions_of(n, max_length))
    return out


# ---------------------------------------------------------------------------
# t-analogues
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def phi(n) -> RatQT:
    """phi_n(t) = (1 - t)(1 - t^2)...(1 - t^n)."""
    if n < 0:
        raise ValueError("phi of negative index")
    out = R1
    for i in range(1, n + 1):
        out = out * (R1 - tpow(i))
    return out


def t_factorial(n) -> RatQT:
    """[n]! = phi_n(t) / (1 - t)^n."""
    return phi(n) / (R1 - T) ** n


@lru_cache(maxsize=None)
def t_binomial(n, k) -> RatQT:
    """Gaussian binomial [n choose k]_t; zero for k outside 0..n."""
    if n < 0:
        raise ValueError("t_binomial needs n >= 0")
    if k < 0 or k > n:
        return R0
    return phi(n) / (phi(k) * phi(n - k))


def pochhammer(z: RatQT, k: int) -> RatQT:
    """(z; t)_k = prod_{i=0}^{k-1} (1 - t^i z).

    The factors start at t^0: this is the convention forced by every
    eigenvalue expansion downstream (denominators (1-u)(1-tu)...).
    """
    out = R1
    for i in range(k):
        out = out * (R1 - tpow(i) * z)
    return out


def q_analogues(kind, *args) -> RatQT:
    if kind == "phi_n":
        return phi(*args)
    if kind == "t_factorial":
        return t_factorial(*args)
    if kind == "t_binomial":
        return t_binomial(*args)
    if kind == "pochhammer":
        return pochhammer(*args)
    raise ScalarError(f"unknown q-analogue kind {kind!r}")


def tau_coeff(lam, mu, N) -> RatQT:
    """Expansion coefficient of F_lam over Hall-Littlewood P_mu:

    tau_{lam/mu}(t; N) = (-t^{1-N})^{|lam|-|mu|}
        [N - mu'_1 choose lam'_1 - mu'_1]
        prod_i [mu'_i - mu'_{i+1} choose lam'_{i+1} - mu'_{i+1}]

    Vanishes (through the binomials) unless lam/mu is a vertical strip.
    """
    lam, mu = normalize(lam), normalize(mu)
    if len(lam) > N:
        raise ValueError("tau_coeff needs len(lam) <= N")
    lc, mc = conjugate(lam), conjugate(mu)
    out = t_binomial(N - part(mc, 1), part(lc, 1) - part(mc, 1))
    if out.is_zero():
        return R0
    for i in range(1, max(len(lc), len(mc)) + 1):
        f = t_binomial(part(mc, i) - part(mc, i + 1),
                       part(lc, i + 1) - part(mc, i + 1))
        if f.is_zero():
            return R0
        out = out * f
    return out * ((-tpow(1 - N)) ** (sum(lam) - sum(mu)))


# ---------------------------------------------------------------------------
# semistandard Young tableaux
# ---------------------------------------------------------------------------

class Tableau:
    """Semistandard tableau: weakly increasing rows, strictly increasing columns."""

    __slots__ = ("shape", "rows")

    def __init__(self, shape, rows):
        self.shape = normalize(shape)
        self.rows = tuple(tuple(r) for r in rows)
        if tuple(len(r) for r in self.rows) != self.shape:
            raise ValueError("rows do not match shape")

    def entry(self, i, j):
        """1-based cell access."""
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Tableau{self.rows!r}"

    def restricted_shape(self, k):
        """Shape of the cells holding entries <= k."""
        out = []
        for row in self.rows:
            c = 0
            for v in row:
                if v <= k:
                    c += 1
                else:
                    break
            if c:
                out.append(c)
        return tuple(out)


def enumerate_ssyt(mu, N, constraint=None):
    """All SSYT of shape mu with entries in 1..N; empty list if len(mu) > N.

    ``constraint(i, j, v)`` may veto individual entries (1-based cells).
    """
    mu = normalize(mu)
    if len(mu) > N:
        return []
    if not mu:
        return [Tableau((), ())]
    rows = [[0] * p for p in mu]
    out = []
    cells_order = [(i, j) for i in range(len(mu)) for j in range(mu[i])]

    def backtrack(pos):
        if pos == len(cells_order):
            out.append(Tableau(mu, [tuple(r) for r in rows]))
            return
        i, j = cells_order[pos]
        lo = 1
        if j > 0:
            lo = max(lo, rows[i][j - 1])
        if i > 0:
            lo = max(lo, rows[i - 1][j] + 1)
        for v in range(lo, N + 1):
            if constraint is not None and not constraint(i + 1, j + 1, v):
                continue
            rows[i][j] = v
            backtrack(pos + 1)
        rows[i][j] = 0

    backtrack(0)
    return out


def psi_strip(nu, kappa) -> RatQT:
    """HL branching weight of the horizontal strip nu/kappa:
    prod over columns j with theta'_j = 0, theta'_{j+1} = 1 of (1 - t^{m_j(kappa)}).
    """
    if not is_horizontal_strip(nu, kappa):
        raise ValueError("psi_strip needs a horizontal strip")
    nc, kc = conjugate(nu), conjugate(kappa)
    out = R1
    for j in range(1, len(nc) + 1):
        tj = part(nc, j) - part(kc, j)
        tj1 = part(nc, j + 1) - part(kc, j + 1)
        if tj == 0 and tj1 == 1:
            out = out * (R1 - tpow(multiplicity(kappa, j)))
    return out


def psi_weight(T: Tableau) -> RatQT:
    """psi_T(t) = prod_k psi_{mu^(k)/mu^(k-1)}(t) over the entry filtration."""
    if not T.shape:
        return R1
    maxv = max(max(r) for r in T.rows)
    out = R1
    prev = ()
    for k in range(1, maxv + 1):
        cur = T.restricted_shape(k)
        out = out * psi_strip(cur, prev)
        prev = cur
    return out
