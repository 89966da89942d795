"""Cached collective spin operators on the Dicke index k = number of -z satellites.

All matrices act on the (n+1)-dimensional spin-n/2 multiplet.  The expensive
pieces (the J_x eigendecomposition and the half-period rotation operators
exp(i*angle*J_x)) are built once per satellite count / angle and memoized;
the rotation operators are polished to exact unitarity so that long
evolutions accumulate only unbiased matvec rounding.
"""

from __future__ import annotations

import functools

import numpy as np

from .kernels import unitary_matvec

_JX: dict[int, np.ndarray] = {}
_EIG: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def jz_values(n: int) -> np.ndarray:
    """J_z eigenvalues m = n/2 - k along the Dicke index."""
    return n / 2.0 - np.arange(n + 1)


def jx_matrix(n: int) -> np.ndarray:
    """Collective J_x, real symmetric tridiagonal in the Dicke basis."""
    if n not in _JX:
        k = np.arange(n)
        # <k+1| J- |k> = sqrt((n-k)(k+1)); J_x = (J+ + J-)/2
        off = 0.5 * np.sqrt((n - k) * (k + 1.0))
        jx = np.zeros((n + 1, n + 1))
        jx[k + 1, k] = off
        jx[k, k + 1] = off
        _JX[n] = jx
    return _JX[n]


def jx_eigensystem(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and orthogonal eigenvectors of J_x, cached per n.

    The eigenvector matrix is polished to exact orthogonality (polar
    projection via SVD); the raw eigh output carries an O(n*eps) bias that
    would otherwise drift the norm over ~1e4 rotations.
    """
    if n not in _EIG:
        vals, vecs = np.linalg.eigh(jx_matrix(n))
        left, _, right = np.linalg.svd(vecs)
        _EIG[n] = (vals, np.ascontiguousarray(left @ right))
    return _EIG[n]


@functools.lru_cache(maxsize=128)
def exp_jx_planes(n: int, angle: float) -> tuple[np.ndarray, np.ndarray]:
    """Unitary exp(1j * angle * J_x), cached as (real, imag) planes.

    Polished to exact unitarity (polar projection) so that only matvec
    rounding, not operator error, enters long evolutions.
    """
    vals, vecs = jx_eigensystem(n)
    op = (vecs * np.exp(1j * angle * vals)[None, :]) @ vecs.T
    left, _, right = np.linalg.svd(op)
    op = left @ right
    return (np.ascontiguousarray(op.real), np.ascontiguousarray(op.imag))


def rotate_exp_jx(vec: np.ndarray, angle: float, n: int) -> np.ndarray:
    """Apply exp(1j * angle * J_x) to a Dicke vector (compensated matvec)."""
    w_re, w_im = exp_jx_planes(n, float(angle))
    out = np.empty_like(vec)
    unitary_matvec(w_re, w_im, vec, out)
    return out
