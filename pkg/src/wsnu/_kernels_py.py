"""Pure-Python reference kernels.

Same signatures and floating-point operation order as ``_kernels.pyx`` so the
two backends agree to the last bit on IEEE hardware.
"""

from __future__ import annotations

_PIVMIN = 1e-300
_BIG = 1e150
_SHRINK = 1e-150


def sturm_count(d, e2, x):
    """Number of eigenvalues of the symmetric tridiagonal matrix below ``x``.

    ``d`` is the diagonal, ``e2`` the squared off-diagonal (length ``len(d) - 1``).
    """
    count = 0
    piv = d[0] - x
    if piv == 0.0:
        piv = _PIVMIN
    if piv < 0.0:
        count += 1
    for i in range(1, len(d)):
        piv = d[i] - x - e2[i - 1] / piv
        if piv == 0.0:
            piv = _PIVMIN
        if piv < 0.0:
            count += 1
    return count


def bisect_eigenvalue(d, e2, k, lo, hi, maxiter=200):
    """k-th smallest (0-based) eigenvalue inside ``[lo, hi]`` by Sturm bisection."""
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if sturm_count(d, e2, mid) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def numerov_march(g, h, i0, i_end):
    """March u'' = -g u with Numerov from a node at ``i0`` towards ``i_end``.

    Starts from u[i0] = 0, u[i0 + step] = h. Returns ``(u[i_end - step],
    u[i_end], nodes)`` where ``nodes`` counts sign changes along the way. The
    pair is rescaled by positive factors whenever it grows past 1e150, so only
    its direction is meaningful.
    """
    step = 1 if i_end > i0 else -1
    c = h * h / 12.0
    u_prev = 0.0
    u_cur = h
    nodes = 0
    i = i0 + step
    while i != i_end:
        a_prev = 0.0 if u_prev == 0.0 else (1.0 + c * g[i - step]) * u_prev
        u_next = (2.0 * (1.0 - 5.0 * c * g[i]) * u_cur - a_prev) / (1.0 + c * g[i + step])
        if (u_next < 0.0) != (u_cur < 0.0) and u_next != 0.0:
            nodes += 1
        u_prev = u_cur
        u_cur = u_next
        if abs(u_cur) > _BIG:
            u_prev *= _SHRINK
            u_cur *= _SHRINK
        i += step
    return u_prev, u_cur, nodes
