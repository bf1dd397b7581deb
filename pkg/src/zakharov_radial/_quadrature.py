"""Compiled trapezoid kernel for radial bilinear multipliers.

With ``F[l] = t_l fhat(t_l)`` and ``G[j] = s_j ghat(s_j)`` on the nodes
``0..N`` (node 0 is the zero frequency), the output at ``rho_i`` is

    (1 / (4 pi^2 rho_i)) * drho^2 * sum_j G[j] sum_l w_l m(l, j, i) F[l]

where ``l`` runs over ``|i-j| .. i+j`` with half weights at both ends and
nodes past ``N`` treated as zero.  Because the frequency nodes are uniform
and start at ``drho``, both ends of every ``t``-interval are grid nodes.

The inner rule carries the Euler-Maclaurin endpoint correction
``-(h^2/12)(phi'(b) - phi'(a))`` with one-sided second-order differences,
which lifts it to fourth order.  The outer sum needs no correction: its
integrand is even at ``s = 0`` and only loses smoothness in the second
derivative at ``s = rho``.

The weight table ``W`` only covers rows ``r0 .. r0 + W.shape[0] - 1`` and
columns ``c0 .. c0 + W.shape[1] - 1``; it is zero elsewhere.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _phi(l, j, F, W, r0, c0, den, use_den, s, rho, drho, n):
    if l > n or l < r0 or l >= r0 + W.shape[0]:
        return 0.0 + 0.0j
    w = W[l - r0, j - c0]
    if w == 0.0:
        return 0.0 + 0.0j
    if use_den:
        t = l * drho
        w = w / (den[0] * t * t + den[1] * s * s + den[2] * rho * rho
                 + den[3] * t + den[4] * s + den[5] * rho)
    return w * F[l]


@njit(cache=True)
def bilinear_trapezoid(F, G, W, r0, c0, den, use_den, lo, hi, out_nodes, drho):
    n = F.shape[0] - 1
    c1 = min(c0 + W.shape[1] - 1, n)
    out = np.zeros(out_nodes.shape[0], dtype=np.complex128)
    for q in range(out_nodes.shape[0]):
        i = out_nodes[q]
        rho = i * drho
        acc = 0.0 + 0.0j
        for j in range(max(c0, 1), c1 + 1):
            g = G[j]
            if g == 0.0:
                continue
            a = abs(i - j)
            b = i + j
            l0 = max(a, lo[j])
            l1 = min(b, hi[j])
            if l0 > l1:
                continue
            s = j * drho
            jj = j - c0
            inner = 0.0 + 0.0j
            if use_den:
                c = den[1] * s * s + den[2] * rho * rho + den[4] * s + den[5] * rho
                for l in range(l0, l1 + 1):
                    t = l * drho
                    inner += W[l - r0, jj] * F[l] / (den[0] * t * t + den[3] * t + c)
            else:
                for l in range(l0, l1 + 1):
                    inner += W[l - r0, jj] * F[l]
            inner -= 0.5 * (_phi(a, j, F, W, r0, c0, den, use_den, s, rho, drho, n)
                            + _phi(b, j, F, W, r0, c0, den, use_den, s, rho, drho, n))
            da = 0.5 * (-3.0 * _phi(a, j, F, W, r0, c0, den, use_den, s, rho, drho, n)
                        + 4.0 * _phi(a + 1, j, F, W, r0, c0, den, use_den, s, rho, drho, n)
                        - _phi(a + 2, j, F, W, r0, c0, den, use_den, s, rho, drho, n))
            db = 0.5 * (3.0 * _phi(b, j, F, W, r0, c0, den, use_den, s, rho, drho, n)
                        - 4.0 * _phi(b - 1, j, F, W, r0, c0, den, use_den, s, rho, drho, n)
                        + _phi(b - 2, j, F, W, r0, c0, den, use_den, s, rho, drho, n))
            inner -= (db - da) / 12.0
            acc += g * inner
        out[q] = acc * drho * drho / (4.0 * np.pi * np.pi * rho)
    return out


@njit(cache=True)
def support_bounds(W, r0, c0, F):
    """For each column ``j`` the first/last row where both ``W`` and ``F`` are nonzero."""
    n = F.shape[0] - 1
    lo = np.full(n + 1, n + 1, dtype=np.int64)
    hi = np.full(n + 1, -1, dtype=np.int64)
    for jj in range(W.shape[1]):
        j = c0 + jj
        if j > n:
            break
        for ll in range(W.shape[0]):
            l = r0 + ll
            if l > n:
                break
            if W[ll, jj] != 0.0 and F[l] != 0.0:
                if l < lo[j]:
                    lo[j] = l
                hi[j] = l
    return lo, hi
