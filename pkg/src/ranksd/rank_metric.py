"""Rank metric over F_{q^m}: coordinate matrices, rank weight, supports,
annihilator q-polynomials and Gaussian binomials."""
import math

import numpy as np


# ---------------------------------------------------------------------------
# linear algebra over a small field given by MUL/INV tables


def row_echelon(M, Fq):
    """Reduced row echelon form of M over Fq; returns (R, pivot columns)."""
    R = np.array(M, dtype=np.uint8, copy=True)
    rows, cols = R.shape
    MUL, INV = Fq.MUL, Fq.INV
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        p = row + nz[0]
        if p != row:
            R[[row, p]] = R[[p, row]]
        R[row] = MUL[INV[R[row, col]], R[row]]
        f = R[:, col].copy()
        f[row] = 0
        R ^= MUL[f[:, None], R[row][None, :]]
        pivots.append(col)
        row += 1
    return R, pivots


def fq_rank(M, Fq):
    return len(row_echelon(M, Fq)[1])


def fq_inverse(M, Fq):
    n = M.shape[0]
    aug = np.concatenate([np.asarray(M, dtype=np.uint8), np.eye(n, dtype=np.uint8)], axis=1)
    R, piv = row_echelon(aug, Fq)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def fq_matmul(A, B, Fq):
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    return np.bitwise_xor.reduce(Fq.MUL[A[:, :, None], B[None, :, :]], axis=1)


# ---------------------------------------------------------------------------


def matrix_of(tower, x):
    """m x n matrix over F_q whose column j holds the coordinates of x_j."""
    return np.swapaxes(tower.Fqm.to_coords(x), -1, -2)


def from_matrix(tower, M):
    return tower.Fqm.from_coords(np.swapaxes(np.asarray(M), -1, -2))


def rank_weight(tower, x):
    return fq_rank(matrix_of(tower, x), tower.Fq)


def support_basis(tower, x):
    """Coordinates of x at the pivot columns of M(x), in column order."""
    x = np.asarray(x)
    _, piv = row_echelon(matrix_of(tower, x), tower.Fq)
    if not piv:
        raise ValueError("zero vector has empty support")
    return x[piv]


def in_span(tower, U, w):
    U = np.asarray(U)
    base = fq_rank(matrix_of(tower, U), tower.Fq) if len(U) else 0
    both = np.concatenate([U, np.asarray(w)[None]], axis=0) if len(U) else np.asarray(w)[None]
    return fq_rank(matrix_of(tower, both), tower.Fq) == base


def span_elements(tower, U):
    """All q^r elements of the F_q-span of U (small cases only)."""
    Fm, q = tower.Fqm, tower.q
    U = np.asarray(U)
    r = len(U)
    out = Fm.zeros((1,))
    for i in range(r):
        layers = [Fm.add(out, tower.scale(Fm, np.full(len(out), c), np.broadcast_to(U[i], out.shape)))
                  for c in range(q)]
        out = np.concatenate(layers, axis=0)
    return out


# ---------------------------------------------------------------------------
# q-polynomials L(X) = sum_i l_i X^{q^i}


def qpoly_eval(tower, coeffs, x):
    """Evaluate sum_i coeffs[i] * x^{q^i} at (batched) x."""
    Fm = tower.Fqm
    x = np.asarray(x)
    acc = Fm.zeros(x.shape[:x.ndim - Fm.elem_ndim])
    for i in range(len(coeffs)):
        acc = Fm.add(acc, Fm.mul(coeffs[i], Fm.frob(x, i)))
    return acc


def annihilator_full(tower, U):
    """Coefficients l_0..l_r of the monic q-polynomial vanishing on span(U).

    L_0 = X, L_{i+1} = L_i^q - L_i(u)^{q-1} L_i.
    """
    Fm, q = tower.Fqm, tower.q
    U = np.asarray(U)
    if fq_rank(matrix_of(tower, U), tower.Fq) != len(U):
        raise ValueError("support basis is linearly dependent")
    L = Fm.one((1,))
    for u in U:
        val = qpoly_eval(tower, L, u)
        # val^(q-1) = val^q / val
        lam = Fm.mul(Fm.frob(val, 1), Fm.inv(val)) if q != 2 else val
        shifted = np.concatenate([Fm.zeros((1,)), Fm.frob(L, 1)], axis=0)
        scaled = np.concatenate([Fm.mul(lam, L), Fm.zeros((1,))], axis=0)
        L = Fm.sub(shifted, scaled)
    return L


def annihilator(tower, U):
    """beta_1..beta_{r-1} with
    L(X) = (X^{q^r} - X) + sum_k beta_k (X^{q^k} - X) vanishing on span(U).
    Requires 1 in span(U)."""
    Fm = tower.Fqm
    L = annihilator_full(tower, U)
    r = len(L) - 1
    beta = L[1:r]
    # with 1 in the span, L(1) = sum l_i = 0 forces l_0 = -1 - sum beta
    expect = Fm.add(Fm.one(), Fm.sum(beta, 0)) if r > 1 else Fm.one()
    if not bool(Fm.eq(L[0], expect)):
        raise ValueError("1 is not in the span of U")
    return beta


def annihilator_eval(tower, beta, x):
    """L(x) for the normalized form held in beta (r - 1 coefficients)."""
    Fm = tower.Fqm
    x = np.asarray(x)
    r = len(beta) + 1
    acc = Fm.sub(Fm.frob(x, r), x)
    for kk in range(1, r):
        acc = Fm.add(acc, Fm.mul(beta[kk - 1], Fm.sub(Fm.frob(x, kk), x)))
    return acc


# ---------------------------------------------------------------------------


def gaussian_binomial(m, r, q):
    """Number of r-dimensional subspaces of F_q^m (exact integer)."""
    if r < 0 or r > m:
        raise ValueError("need 0 <= r <= m")
    num = den = 1
    for i in range(r):
        num *= q ** m - q ** i
        den *= q ** r - q ** i
    return num // den


def log2_int(v):
    """log2 of a positive integer of any size."""
    if v <= 0:
        raise ValueError("log2 of non-positive value")
    return math.log2(v)


def gaussian_binomial_log2(m, r, q):
    return log2_int(gaussian_binomial(m, r, q))
