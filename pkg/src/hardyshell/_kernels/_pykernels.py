"""Pure numpy implementation of the hot loops.

Every function here has an identical twin in ``_ckernels.pyx``; the package
chooses one at import time (see ``hardyshell._kernels``).
"""

import numpy as np

_BLOCK = 512


def _chi_block(r, k, kappa, s_a, kc_a, c_in, c_out, a, b):
    rr = r[:, None]
    out = np.empty((r.shape[0], k.shape[0]), dtype=complex)
    m1 = r <= a
    m3 = r > b
    m2 = ~(m1 | m3)
    if m1.any():
        out[m1] = np.sin(rr[m1] * k)
    if m2.any():
        x = rr[m2] - a
        zero = kappa == 0
        safe = np.where(zero, 1.0, kappa)
        sinc = np.where(zero, x, np.sin(kappa * x) / safe)
        out[m2] = s_a * np.cos(kappa * x) + kc_a * sinc
    if m3.any():
        e = np.exp(1j * k * rr[m3])
        out[m3] = c_in / e + c_out * e
    return out


def chi_matrix(r, k, kappa, s_a, kc_a, c_in, c_out, a, b):
    """Regular solution chi(r_i, k_j) as an (len(r), len(k)) matrix."""
    return _chi_block(np.asarray(r, float), *map(np.asarray, (k, kappa, s_a, kc_a, c_in, c_out)), a, b)


def chi_apply_k(r, coeff_r, k, kappa, s_a, kc_a, c_in, c_out, a, b):
    """sum_i coeff_r[i] * chi(r_i, k_j) for every j."""
    out = np.zeros(k.shape[0], dtype=complex)
    for s in range(0, r.shape[0], _BLOCK):
        blk = _chi_block(r[s:s + _BLOCK], k, kappa, s_a, kc_a, c_in, c_out, a, b)
        out += coeff_r[s:s + _BLOCK] @ blk
    return out


def chi_apply_r(r, coeff_k, k, kappa, s_a, kc_a, c_in, c_out, a, b):
    """sum_j coeff_k[j] * chi(r_i, k_j) for every i."""
    out = np.empty(r.shape[0], dtype=complex)
    for s in range(0, r.shape[0], _BLOCK):
        blk = _chi_block(r[s:s + _BLOCK], k, kappa, s_a, kc_a, c_in, c_out, a, b)
        out[s:s + _BLOCK] = blk @ coeff_k
    return out


def laplace_sum(t, amp, z):
    """sum_i amp[i] * exp(-1j * z_j * t_i) for arbitrary complex z."""
    out = np.empty(z.shape[0], dtype=complex)
    for s in range(0, z.shape[0], _BLOCK):
        zz = z[s:s + _BLOCK, None]
        out[s:s + _BLOCK] = np.exp(-1j * zz * t[None, :]) @ amp
    return out


def laplace_sum_uniform(t, amp, x0, dx, n, y):
    """laplace_sum on the horizontal line z_j = x0 + j*dx + 1j*y, j < n."""
    z = x0 + dx * np.arange(n) + 1j * y
    return laplace_sum(t, amp, z)
