"""Pure numpy gate kernels.

Every kernel mutates a C-contiguous ``(batch, 2**m)`` complex128 array in
place. Qubit ``k`` is bit ``k`` of the basis index (little-endian).
"""

import numpy as np


def apply_1q(states, u, q):
    b, d = states.shape
    v = states.reshape(b, d >> (q + 1), 2, 1 << q)
    a0 = v[:, :, 0, :].copy()
    a1 = v[:, :, 1, :].copy()
    v[:, :, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    v[:, :, 1, :] = u[1, 0] * a0 + u[1, 1] * a1


def apply_cnot(states, control, target):
    b, d = states.shape
    m = d.bit_length() - 1
    v = states.reshape((b,) + (2,) * m)
    # axis 1 is the most significant qubit (m - 1)
    c_ax = m - control
    t_ax = m - target
    idx1 = [slice(None)] * (m + 1)
    idx1[c_ax] = 1
    sub = v[tuple(idx1)]
    t_sub = t_ax - 1 if t_ax > c_ax else t_ax
    i0 = [slice(None)] * m
    i1 = [slice(None)] * m
    i0[t_sub] = 0
    i1[t_sub] = 1
    tmp = sub[tuple(i0)].copy()
    sub[tuple(i0)] = sub[tuple(i1)]
    sub[tuple(i1)] = tmp


def apply_2q(states, u, q1, q2):
    """Apply a 4x4 ``u`` whose row/column index is ``2*bit(q1) + bit(q2)``."""
    b, d = states.shape
    m = d.bit_length() - 1
    v = states.reshape((b,) + (2,) * m)
    a1 = m - q1
    a2 = m - q2
    moved = np.moveaxis(v, (a1, a2), (1, 2)).reshape(b, 4, -1)
    out = np.einsum("ij,bjk->bik", u.reshape(4, 4), moved)
    back = np.moveaxis(out.reshape((b, 2, 2) + (2,) * (m - 2)), (1, 2), (a1, a2))
    v[...] = back
