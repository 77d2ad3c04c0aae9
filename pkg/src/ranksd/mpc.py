"""The Pi^eta check on shares of (x_B, beta, a, c).

All functions broadcast over leading batch axes, so one call evaluates many
parties (and repetitions) at once.  Shapes, with es/ms the element shapes of
F_{q^{m eta}} / F_{q^m}:

    x_B   (..., k, *ms)        beta (..., r-1, *ms)
    a     (..., r-1, *es)      c    (..., *es)
    gamma (..., n, *es)        eps  (..., *es)
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .keys import syndrome_AB


@dataclass
class WitnessBundle:
    x_B: np.ndarray
    beta: np.ndarray
    a: np.ndarray
    c: np.ndarray

    def map(self, fn):
        return WitnessBundle(fn(self.x_B), fn(self.beta), fn(self.a), fn(self.c))


@dataclass
class MpcChallenge:
    gamma: np.ndarray
    eps: np.ndarray


def _bexp(F, x, n=1):
    """Insert n batch axes just before the element axes of x."""
    x = np.asarray(x)
    for _ in range(n):
        x = np.expand_dims(x, x.ndim - F.elem_ndim)
    return x


def bundle_add(tower, u, w):
    return WitnessBundle(tower.Fqm.add(u.x_B, w.x_B), tower.Fqm.add(u.beta, w.beta),
                         tower.Fqme.add(u.a, w.a), tower.Fqme.add(u.c, w.c))


def bundle_sum(tower, b, axis):
    """Sum shares along a batch axis (counted from the left)."""
    Fm, Fe = tower.Fqm, tower.Fqme
    return WitnessBundle(Fm.sum(b.x_B, axis), Fm.sum(b.beta, axis),
                         Fe.sum(b.a, axis), Fe.sum(b.c, axis))


def full_x(tower, H, y, x_B, delta):
    """(x_A || x_B) share with x_A = delta*y - H' x_B; delta in {0, 1} per party."""
    Fm = tower.Fqm
    x_B = np.asarray(x_B)
    lead = x_B.shape[:x_B.ndim - Fm.elem_ndim - 1]
    d = np.broadcast_to(np.asarray(delta, dtype=np.uint8), lead)
    yy = tower.scale(Fm, d[..., None], np.asarray(y))
    x_A = syndrome_AB(tower, H, yy, x_B)  # char 2: minus == plus
    return np.concatenate([x_A, x_B], axis=x_B.ndim - Fm.elem_ndim - 1)


def omega_z(tower, x, gamma, r):
    """omega_k = sum_j gamma_j (x_j^{q^k} - x_j), k = 1..r-1, and
    z = -sum_j gamma_j (x_j^{q^r} - x_j)."""
    Fm, Fe = tower.Fqm, tower.Fqme
    x = np.asarray(x)
    diffs = np.stack([Fm.sub(Fm.frob(x, kk), x) for kk in range(1, r + 1)],
                     axis=x.ndim - Fm.elem_ndim - 1)          # (..., r, n, *ms)
    gamma = np.asarray(gamma)
    g = np.expand_dims(gamma, gamma.ndim - Fe.elem_ndim - 1)  # (..., 1, n, *es)
    terms = tower.mul_base(g, diffs)                          # (..., r, n, *es)
    s = Fe.sum(terms, -1)                                     # (..., r, *es)
    omega = s[(Ellipsis, slice(0, r - 1)) + (slice(None),) * Fe.elem_ndim]
    z = Fe.neg(s[(Ellipsis, r - 1) + (slice(None),) * Fe.elem_ndim])
    return omega, z


def inner_alpha_beta(tower, alpha, beta):
    """<alpha, beta> with alpha in F_{q^{m eta}}, beta in F_{q^m}."""
    return tower.Fqme.sum(tower.mul_base(alpha, beta), -1)


def party_alpha(tower, H, y, share, ch, delta, r):
    """Phase 1: the party's alpha share, plus its z share for phase 2."""
    Fe = tower.Fqme
    x = full_x(tower, H, y, share.x_B, delta)
    omega, z = omega_z(tower, x, ch.gamma, r)
    alpha = Fe.add(Fe.mul(_bexp(Fe, ch.eps), omega), share.a)
    return alpha, z


def party_v(tower, share, ch, z, alpha_opened):
    """Phase 2: v share = eps z - <alpha, beta share> - c share."""
    Fe = tower.Fqme
    t = Fe.mul(ch.eps, z)
    t = Fe.sub(t, inner_alpha_beta(tower, alpha_opened, share.beta))
    return Fe.sub(t, share.c)


def party_compute(tower, params, pk, share, ch, is_offset_party, alpha_opened=None):
    """Alpha share (phase 1) when alpha_opened is None, else the v share."""
    alpha, z = party_alpha(tower, pk.H, pk.y, share, ch, is_offset_party, params.r)
    if alpha_opened is None:
        return alpha
    alpha_opened = np.asarray(alpha_opened)
    Fe = tower.Fqme
    if alpha_opened.shape[alpha_opened.ndim - Fe.elem_ndim - 1] != params.r - 1:
        raise ValueError("opened alpha must have r - 1 entries")
    return party_v(tower, share, ch, z, alpha_opened)


def plain_check(tower, x, beta, a, c, ch):
    """Unshared reference run: (alpha, v) with alpha = eps omega + a and
    v = eps z - <alpha, beta> - c."""
    Fe = tower.Fqme
    r = np.asarray(beta).shape[0] + 1
    omega, z = omega_z(tower, x, ch.gamma, r)
    alpha = Fe.add(Fe.mul(_bexp(Fe, ch.eps), omega), a)
    v = Fe.sub(Fe.sub(Fe.mul(ch.eps, z), inner_alpha_beta(tower, alpha, beta)), c)
    return alpha, v


def false_positive_rate(q, m, eta):
    Q = Fraction(q) ** (m * eta)
    return 2 / Q - 1 / Q ** 2
