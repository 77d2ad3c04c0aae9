"""Security and size calculator.

All costs are log2 values.  Probabilities and the KZ forgery cost are exact
rationals; binomials are exact integers, logged only at the end.
"""
import csv
import io
import json
import math
from dataclasses import dataclass, asdict, field
from fractions import Fraction
from math import comb

from .mpc import false_positive_rate
from .params import HYPERCUBE, THRESHOLD, LEVELS, PARAMS
from .keys import PublicKey
from .rank_metric import log2_int

INF = float("inf")


def C(n, k):
    """Binomial that is 0 outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def flog2(x):
    """log2 of a positive int or Fraction, exact enough at any magnitude."""
    if isinstance(x, Fraction):
        return log2_int(x.numerator) - log2_int(x.denominator)
    return log2_int(x)


# -- Fiat-Shamir ------------------------------------------------------------


def soundness_error(N, p, ell=0, variant=HYPERCUBE):
    p = Fraction(p)
    if variant == HYPERCUBE:
        return Fraction(1, N) + p * (1 - Fraction(1, N))
    if variant == THRESHOLD:
        return Fraction(1, C(N, ell)) + p * Fraction(ell * (N - ell), ell + 1)
    raise ValueError("unknown variant %r" % variant)


def kz_terms(tau, p, B):
    """Cost of each tau' in 0..tau (exact)."""
    p = Fraction(p)
    out = []
    for t in range(tau + 1):
        P1 = sum(C(tau, i) * p ** i * (1 - p) ** (tau - i) for i in range(t, tau + 1))
        first = 1 / P1 if P1 else None
        out.append(None if first is None else first + Fraction(B) ** (tau - t))
    return out


def kz_cost_exact(tau, p, B):
    """(cost, tau') of the optimal split as an exact rational."""
    terms = kz_terms(tau, p, B)
    return min((c, t) for t, c in enumerate(terms) if c is not None)


def kz_cost(tau, p, B):
    """(log2 cost, tau') of the optimal split."""
    c, t = kz_cost_exact(tau, p, B)
    return flog2(c), t


def first_challenge_p(params):
    """Per-repetition probability of passing the first challenge."""
    p = false_positive_rate(params.q, params.m, params.eta)
    if params.variant == THRESHOLD:
        p = min(Fraction(1), p * C(params.N, params.ell + 1))
    return p


def second_challenge_B(params):
    return params.N if params.variant == HYPERCUBE else C(params.N, params.ell)


def _as_variant(params, variant):
    if variant is not None and variant != params.variant:
        params = params.with_(variant=variant, signing=False)
    return params


def kz_forge_cost(params, variant=None):
    params = _as_variant(params, variant)
    return kz_cost(params.tau, first_challenge_p(params), second_challenge_B(params))


def kz_forge_cost_exact(params, variant=None):
    params = _as_variant(params, variant)
    return kz_cost_exact(params.tau, first_challenge_p(params), second_challenge_B(params))


# -- attacks on the Rank-SD instance -----------------------------------------


def enumeration_cost(q, m, n, k, r):
    return 3 * math.log2(n * r + m) + (m - r) * (r - 1) * math.log2(q)


def error_support_cost(q, m, n, k, r):
    return 3 * math.log2((n - k) * m) + (r - 1) * (((k + 1) * m) // n) * math.log2(q)


def _degenerate(q, m, a, r):
    # k - a = 0: the specialised instance is a linear system, poly in m
    return a * r * math.log2(q) + 2 * math.log2(m)


def max_minors_cost(q, m, n, k, r, omega=2.0):
    """(log2 cost, a, p) minimising q^{ar} C(n-a-p, r)^omega."""
    best = (INF, None, None)
    for a in range(k + 1):
        n1, k1 = n - a, k - a
        if k1 == 0:
            best = min(best, (_degenerate(q, m, a, r), a, 0))
            continue
        for p in range(n1 - k1):
            rows = C(n1 - p - k1 - 1, r)
            if rows == 0 or m * rows < C(n1 - p, r) - 1:
                continue
            cost = a * r * math.log2(q) + omega * log2_int(C(n1 - p, r))
            best = min(best, (cost, a, p))
    return best


def support_minors_NM(m, n, k, r, b):
    N = sum(C(n - i, r) * C(k + b - 1 - i, b - 1) for i in range(1, k + 1))
    N -= C(n - k - 1, r) * C(k + b - 1, b)
    N -= (m - 1) * sum((-1) ** (i + 1) * C(k + b - i - 1, b - i) * C(n - k - 1, r + i)
                       for i in range(1, b + 1))
    M = C(k + b - 1, b) * (C(n, r) - m * C(n - k - 1, r))
    return N, M


def support_minors_cost(q, m, n, k, r, omega=2.0, max_b=6):
    """(log2 cost, a, p, b) minimising q^{ar} m^2 N M^{omega-1} with N >= M - 1."""
    best = (INF, None, None, None)
    for b in range(1, max_b + 1):
        for a in range(k + 1):
            for p in range(n - k):
                n2, k2 = n - a - p, k - a
                if k2 == 0:
                    if p == 0:
                        best = min(best, (_degenerate(q, m, a, r), a, p, b))
                    continue
                N, M = support_minors_NM(m, n2, k2, r, b)
                if M <= 0 or N <= 0 or N < M - 1:
                    continue
                cost = a * r * math.log2(q) + 2 * math.log2(m) + log2_int(N) + (omega - 1) * log2_int(M)
                best = min(best, (cost, a, p, b))
    return best


# -- sizes --------------------------------------------------------------------


def hypercube_size_bits(p):
    per = ((p.r - 1) * p.m * p.eta + p.k * p.m + (p.r - 1) * p.m + p.m * p.eta) * p.log2q
    return 6 * p.lam + p.tau * (per + 2 * p.lam + p.lam * int(math.log2(p.N)))


def threshold_size_bound_bits(p):
    """The closed-form upper bound (real valued: the path term uses log2(N/ell))."""
    alpha = (p.r - 1) if p.q == 256 else p.r
    per = (p.k * p.m + alpha * p.m * p.eta + (p.r - 1) * p.m + p.r * p.m * p.eta) * p.log2q
    return 6 * p.lam + p.tau * (p.ell * per + 2 * p.lam * p.ell * math.log2(p.N / p.ell))


def signature_size(params, variant=None):
    """Bytes from the size formula (worst case / bound), rounded up."""
    variant = variant or params.variant
    bits = hypercube_size_bits(params) if variant == HYPERCUBE else threshold_size_bound_bits(params)
    return math.ceil(bits / 8)


# -- reports ------------------------------------------------------------------


@dataclass
class AttackCostReport:
    name: str
    lam: int
    kz_forge: float
    tau_prime: int
    enumeration: float
    error_support: float
    max_minors: float
    mm_a: int
    mm_p: int
    support_minors: float
    sm_a: int
    sm_p: int
    sm_b: int
    binding: str = field(default="")
    minimum: float = field(default=INF)

    def __post_init__(self):
        costs = {"kz_forge": self.kz_forge, "enumeration": self.enumeration,
                 "error_support": self.error_support, "max_minors": self.max_minors,
                 "support_minors": self.support_minors}
        self.binding = min(costs, key=costs.get)
        self.minimum = costs[self.binding]


def attack_costs(params, omega=2.0):
    code = (params.q, params.m, params.n, params.k, params.r)
    kz, tp = kz_forge_cost(params)
    mm, a, p = max_minors_cost(*code, omega=omega)
    sm, sa, sp, sb = support_minors_cost(*code, omega=omega)
    return AttackCostReport(params.name, params.lam, kz, tp, enumeration_cost(*code),
                            error_support_cost(*code), mm, a, p, sm, sa, sp, sb)


COLUMNS = ["name", "q", "m", "n", "k", "r", "N", "eta", "tau", "ell", "pk_bytes", "sig_bytes",
           "table_kB", "soundness_log2", "kz_forge", "tau_prime", "enumeration", "error_support",
           "max_minors", "mm_a", "mm_p", "support_minors", "sm_a", "sm_p", "sm_b", "binding"]


def table_rows(level, omega=2.0):
    if level not in LEVELS:
        raise ValueError("level must be one of %s" % ", ".join(LEVELS))
    lam = LEVELS[level]
    rows = []
    for p in PARAMS.values():
        if p.lam != lam:
            continue
        rep = attack_costs(p, omega)
        err = soundness_error(p.N, first_challenge_p(p) if p.variant == HYPERCUBE
                              else false_positive_rate(p.q, p.m, p.eta), p.ell, p.variant)
        row = dict(name=p.name, q=p.q, m=p.m, n=p.n, k=p.k, r=p.r, N=p.N, eta=p.eta, tau=p.tau,
                   ell=p.ell, pk_bytes=PublicKey.nbytes(p), sig_bytes=signature_size(p),
                   table_kB=p.table_kb, soundness_log2=flog2(err))
        d = asdict(rep)
        row.update({c: d[c] for c in COLUMNS if c in d})
        rows.append(row)
    return rows


def _fmt(v):
    if isinstance(v, float):
        return "inf" if v == INF else "%.2f" % v
    return str(v)


def table_report(level, fmt="text", omega=2.0):
    rows = table_rows(level, omega)
    if fmt == "json":
        return json.dumps(rows, indent=2, default=str)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({c: _fmt(row[c]) for c in COLUMNS})
        return buf.getvalue()
    if fmt != "text":
        raise ValueError("unknown format %r" % fmt)
    cells = [COLUMNS] + [[_fmt(row[c]) for c in COLUMNS] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(COLUMNS))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells) + "\n"
