"""(ell+1, N) Shamir sharing over a small binary field F_q.

Secrets are arrays of any field whose raw entries are F_q elements (F_q
itself, or an extension tower built on it); scalars act entrywise.  Party i
evaluates P(X) = s + r_1 X + .. + r_ell X^ell at the field element with byte
value i, for i < q; when N = q the last party takes the point at infinity,
whose share is the leading coefficient r_ell.  The secret sits at point 0.
"""
import numpy as np

from .rank_metric import fq_inverse, fq_matmul

INF = -1  # point at infinity


def party_points(N, q):
    if N > q:
        raise ValueError("at most q parties")
    return [i if i < q else INF for i in range(1, N + 1)]


def eval_rows(Fq, points, ell):
    """Rows (1, p, .., p^ell) for finite p and (0, .., 0, 1) at infinity."""
    rows = np.zeros((len(points), ell + 1), dtype=np.uint8)
    for t, pt in enumerate(points):
        if pt == INF:
            rows[t, ell] = 1
            continue
        acc = 1
        for j in range(ell + 1):
            rows[t, j] = acc
            acc = int(Fq.MUL[acc, pt])
    return rows


def interpolation_matrix(Fq, src, dst, ell):
    """W with values(dst) = W . values(src) for degree-ell polynomials."""
    if len(src) != ell + 1:
        raise ValueError("need exactly ell + 1 source points")
    if len(set(src)) != len(src):
        raise ValueError("duplicate points")
    V = eval_rows(Fq, src, ell)
    return fq_matmul(eval_rows(Fq, dst, ell), fq_inverse(V, Fq), Fq)


def apply_matrix(Fq, W, vals):
    """out[t] = sum_s W[t, s] vals[s]; vals has the point axis first."""
    vals = np.asarray(vals)
    W = np.asarray(W, dtype=np.uint8)
    s = W.reshape(W.shape + (1,) * (vals.ndim - 1))
    return np.bitwise_xor.reduce(Fq.MUL[s, vals[None]], axis=1)


def shamir_share(Fq, secret, coeffs, points):
    """Shares at ``points``; coeffs holds r_1..r_ell stacked on axis 0."""
    ell = len(coeffs)
    poly = np.concatenate([np.asarray(secret)[None], np.asarray(coeffs)], axis=0)
    return apply_matrix(Fq, eval_rows(Fq, points, ell), poly)


def shamir_reconstruct(Fq, shares, J, ell):
    return apply_matrix(Fq, interpolation_matrix(Fq, list(J), [0], ell), shares)[0]


def shamir_expand(Fq, shares, J, dst, ell):
    return apply_matrix(Fq, interpolation_matrix(Fq, list(J), list(dst), ell), shares)
