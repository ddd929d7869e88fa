"""Hot numeric kernels with numba and pure-numpy twins.

Two inner loops dominate runtime: the block back-substitution that solves
T^T Y + Y T = -Q for a real-Schur T, and the multi-start ascent over the
unit lp sphere used by the norm estimators. Each has a numba ``@njit``
version and a numpy fallback; ``CAREKIT_DISABLE_NUMBA=1`` selects the
fallback at import time. ``carekit bench --kernels`` times both.
"""

import numpy as np

from ._accel import HAVE_NUMBA, USE_NUMBA

if HAVE_NUMBA:
    from numba import njit


# ---------------------------------------------------------------------------
# quasi-triangular Lyapunov back-substitution
# ---------------------------------------------------------------------------

def _block_starts(T: np.ndarray) -> list[int]:
    # LAPACK real Schur: subdiagonal entry is exactly zero outside 2x2 blocks
    n = T.shape[0]
    starts = [0]
    i = 0
    while i < n:
        if i + 1 < n and T[i + 1, i] != 0.0:
            i += 2
        else:
            i += 1
        starts.append(i)
    return starts


def _small_sylvester(Tii: np.ndarray, Tjj: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    # Tii^T X + X Tjj = rhs with blocks no larger than 2x2
    a, b = rhs.shape
    M = np.kron(np.eye(b), Tii.T) + np.kron(Tjj.T, np.eye(a))
    w = np.linalg.solve(M, rhs.reshape(-1, order="F"))
    return w.reshape(a, b, order="F")


def backsub_numpy(T: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Solve T^T Y + Y T = -Q, T quasi-upper-triangular, Q symmetric."""
    n = T.shape[0]
    starts = _block_starts(T)
    nb = len(starts) - 1
    Y = np.zeros((n, n))
    for bi in range(nb):
        i0, i1 = starts[bi], starts[bi + 1]
        for bj in range(bi, nb):
            j0, j1 = starts[bj], starts[bj + 1]
            rhs = -Q[i0:i1, j0:j1].astype(float, copy=True)
            if i0:
                rhs -= T[:i0, i0:i1].T @ Y[:i0, j0:j1]
            if j0:
                rhs -= Y[i0:i1, :j0] @ T[:j0, j0:j1]
            X = _small_sylvester(T[i0:i1, i0:i1], T[j0:j1, j0:j1], rhs)
            Y[i0:i1, j0:j1] = X
            if bj > bi:
                Y[j0:j1, i0:i1] = X.T
            elif i1 - i0 == 2:
                s = 0.5 * (Y[i0, i0 + 1] + Y[i0 + 1, i0])
                Y[i0, i0 + 1] = s
                Y[i0 + 1, i0] = s
    return Y


def _backsub_loops(T, Q):
    # identical recurrence to backsub_numpy, written with explicit loops so
    # numba can compile it without allocating temporaries in the k-sums
    n = T.shape[0]
    starts = np.empty(n + 1, np.int64)
    starts[0] = 0
    nb = 0
    i = 0
    while i < n:
        if i + 1 < n and T[i + 1, i] != 0.0:
            i += 2
        else:
            i += 1
        nb += 1
        starts[nb] = i
    Y = np.zeros((n, n))
    for bi in range(nb):
        i0 = starts[bi]
        a = starts[bi + 1] - i0
        for bj in range(bi, nb):
            j0 = starts[bj]
            b = starts[bj + 1] - j0
            ab = a * b
            M = np.zeros((ab, ab))
            z = np.empty((ab, 1))
            for r in range(a):
                for c in range(b):
                    acc = -Q[i0 + r, j0 + c]
                    for k in range(i0):
                        acc -= T[k, i0 + r] * Y[k, j0 + c]
                    for k in range(j0):
                        acc -= Y[i0 + r, k] * T[k, j0 + c]
                    row = r + c * a
                    z[row, 0] = acc
                    for k in range(a):
                        M[row, k + c * a] += T[i0 + k, i0 + r]
                    for k in range(b):
                        M[row, r + k * a] += T[j0 + k, j0 + c]
            w = np.linalg.solve(M, z)
            for r in range(a):
                for c in range(b):
                    Y[i0 + r, j0 + c] = w[r + c * a, 0]
            if bj > bi:
                for r in range(a):
                    for c in range(b):
                        Y[j0 + c, i0 + r] = Y[i0 + r, j0 + c]
            elif a == 2:
                s = 0.5 * (Y[i0, i0 + 1] + Y[i0 + 1, i0])
                Y[i0, i0 + 1] = s
                Y[i0 + 1, i0] = s
    return Y


backsub_numba = njit(cache=True)(_backsub_loops) if HAVE_NUMBA else None


def backsub(T: np.ndarray, Q: np.ndarray) -> np.ndarray:
    T = np.ascontiguousarray(T, dtype=np.float64)
    Q = np.ascontiguousarray(Q, dtype=np.float64)
    if USE_NUMBA:
        return backsub_numba(T, Q)
    return backsub_numpy(T, Q)


# ---------------------------------------------------------------------------
# multi-start ascent over the unit lp sphere
# ---------------------------------------------------------------------------
#
# mode 0 maximizes ||P x||_q, mode 1 maximizes |x^T P x|, over ||x||_p = 1
# with 1/p + 1/q = 1. Each step proposes the duality-map fixed point and a
# mixed half-step, keeps the better, and stalls when the restart's best
# value stops improving. All values ever evaluated feed the returned best,
# so the result is a witness-certified lower bound by construction.


def _lp_norm_vec(x, p):
    m = np.max(np.abs(x))
    if m == 0.0:
        return 0.0
    if np.isinf(p):
        return m
    return m * np.sum(np.abs(x / m) ** p) ** (1.0 / p)


def _power_map_vec(v, q):
    # direction of the unit-lp maximizer of <v, .>; q is the dual exponent
    n = v.shape[0]
    out = np.zeros(n)
    m = np.max(np.abs(v))
    if m == 0.0:
        out[0] = 1.0
        return out
    if np.isinf(q):
        k = int(np.argmax(np.abs(v)))
        out[k] = 1.0 if v[k] >= 0.0 else -1.0
        return out
    if q == 1.0:
        for i in range(n):
            out[i] = 1.0 if v[i] > 0.0 else (-1.0 if v[i] < 0.0 else 0.0)
        return out
    for i in range(n):
        s = v[i] / m
        out[i] = np.sign(s) * np.abs(s) ** (q - 1.0)
    return out


def _normalize_p_vec(x, p):
    nrm = _lp_norm_vec(x, p)
    out = np.empty_like(x)
    if nrm <= 0.0 or not np.isfinite(nrm):
        out[:] = 0.0
        out[0] = 1.0
        return out
    out[:] = x / nrm
    return out


def _ascent_impl(P, starts, p, q, mode, max_steps, stall_tol):
    nr, n = starts.shape
    best_val = -1.0
    best_x = np.zeros(n)
    for r in range(nr):
        x = starts[r].copy()
        if mode == 0:
            rbest = _lp_norm_vec(P @ x, q)
        else:
            rbest = abs(x @ (P @ x))
        rx = x.copy()
        for _ in range(max_steps):
            if mode == 0:
                y = P @ x
                g = _power_map_vec(y, q)
                z = P.T @ g
            else:
                y = P @ x
                s = x @ y
                sg = 1.0 if s >= 0.0 else -1.0
                z = sg * y
            xfp = _normalize_p_vec(_power_map_vec(z, q), p)
            xmx = _normalize_p_vec(x + xfp, p)
            if mode == 0:
                vfp = _lp_norm_vec(P @ xfp, q)
                vmx = _lp_norm_vec(P @ xmx, q)
            else:
                vfp = abs(xfp @ (P @ xfp))
                vmx = abs(xmx @ (P @ xmx))
            if vfp >= vmx:
                x = xfp
                vtop = vfp
                xtop = xfp
            else:
                x = xmx
                vtop = vmx
                xtop = xmx
            if vtop > rbest + stall_tol * max(1.0, rbest):
                rbest = vtop
                rx = xtop.copy()
            else:
                if vtop > rbest:
                    rbest = vtop
                    rx = xtop.copy()
                break
        if rbest > best_val:
            best_val = rbest
            best_x = rx.copy()
    return best_val, best_x


ascent_numba = njit(cache=True)(_ascent_impl) if HAVE_NUMBA else None


def ascent_numpy(P, starts, p, q, mode, max_steps, stall_tol):
    """Batched twin of the per-restart ascent; rows of ``starts`` evolve in
    lockstep with a per-row active mask so stalled restarts stop updating."""
    P = np.asarray(P, dtype=float)
    X = np.array(starts, dtype=float, copy=True)
    nr, n = X.shape

    def rows_obj(Xr):
        if mode == 0:
            Y = Xr @ P.T
            return _lp_rows(Y, q)
        return np.abs(np.einsum("ij,ij->i", Xr @ P.T, Xr))

    def _lp_rows(Y, e):
        m = np.max(np.abs(Y), axis=1)
        if np.isinf(e):
            return m
        safe = np.where(m == 0.0, 1.0, m)
        return m * np.sum(np.abs(Y / safe[:, None]) ** e, axis=1) ** (1.0 / e)

    def _power_rows(V, e):
        m = np.max(np.abs(V), axis=1)
        out = np.zeros_like(V)
        nz = m > 0.0
        if np.isinf(e):
            idx = np.argmax(np.abs(V), axis=1)
            rows = np.arange(nr)
            out[rows, idx] = np.where(V[rows, idx] >= 0.0, 1.0, -1.0)
            out[~nz] = 0.0
            out[~nz, 0] = 1.0
            return out
        if e == 1.0:
            out[nz] = np.sign(V[nz])
            out[~nz, 0] = 1.0
            return out
        S = V[nz] / m[nz, None]
        out[nz] = np.sign(S) * np.abs(S) ** (e - 1.0)
        out[~nz, 0] = 1.0
        return out

    def _norm_rows(V):
        nrm = _lp_rows(V, p)
        bad = (nrm <= 0.0) | ~np.isfinite(nrm)
        safe = np.where(bad, 1.0, nrm)
        out = V / safe[:, None]
        if np.any(bad):
            out[bad] = 0.0
            out[bad, 0] = 1.0
        return out

    rbest = rows_obj(X)
    RX = X.copy()
    active = np.ones(nr, dtype=bool)
    for _ in range(max_steps):
        if not np.any(active):
            break
        Y = X @ P.T
        if mode == 0:
            G = _power_rows(Y, q)
            Z = G @ P
        else:
            s = np.einsum("ij,ij->i", Y, X)
            Z = np.where(s >= 0.0, 1.0, -1.0)[:, None] * Y
        Xfp = _norm_rows(_power_rows(Z, q))
        Xmx = _norm_rows(X + Xfp)
        vfp = rows_obj(Xfp)
        vmx = rows_obj(Xmx)
        take_fp = vfp >= vmx
        Xtop = np.where(take_fp[:, None], Xfp, Xmx)
        vtop = np.where(take_fp, vfp, vmx)
        upd = active & (vtop > rbest)
        RX[upd] = Xtop[upd]
        improved = active & (vtop > rbest + stall_tol * np.maximum(1.0, rbest))
        rbest = np.where(upd, vtop, rbest)
        X = np.where(active[:, None], Xtop, X)
        active = improved
    k = int(np.argmax(rbest))
    return float(rbest[k]), RX[k].copy()


def ascent(P, starts, p, q, mode, max_steps=200, stall_tol=1e-12):
    P = np.ascontiguousarray(P, dtype=np.float64)
    starts = np.ascontiguousarray(starts, dtype=np.float64)
    if USE_NUMBA:
        val, x = ascent_numba(P, starts, float(p), float(q), int(mode),
                              int(max_steps), float(stall_tol))
        return float(val), x
    return ascent_numpy(P, starts, float(p), float(q), int(mode),
                        int(max_steps), float(stall_tol))
