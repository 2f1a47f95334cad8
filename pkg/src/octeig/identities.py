"""Associators of octonionic column vectors and the commuting 3-Psi rule.

All functions broadcast over leading axes; vectors have shape (..., n, 8).
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatch
from .linalg import inner, matvec, outer, tilde, trace, vec_scale_right
from .octonion import mul

_CONJ = np.array([1.0, -1, -1, -1, -1, -1, -1, -1])


def _same_length(*vs):
    lengths = {np.shape(v)[-2] for v in vs}
    if len(lengths) != 1:
        raise ShapeMismatch(f"vectors have different lengths {sorted(lengths)}")


def vector_associator(u, v, w):
    """[U, V, W] = (U V^dagger) W - U (V^dagger W)."""
    _same_length(u, v, w)
    return matvec(outer(u, v), w) - vec_scale_right(u, inner(v, w))


def scalar_vector_associator(lam, v, w):
    """[lam, V, W] = (lam V^dagger) W - lam (V^dagger W).

    lam V^dagger is the row vector with entries lam conj(V_i).
    """
    _same_length(v, w)
    lam = np.asarray(lam, dtype=float)
    row = mul(np.expand_dims(lam, -2), np.asarray(v)[..., :, :] * _CONJ)
    return mul(row, w).sum(axis=-2) - mul(lam, inner(v, w))


def hermitian_conjugate_residual(v, lam):
    """V^dagger (V conj(lam)) - (V^dagger V) conj(lam)."""
    lb = np.asarray(lam, dtype=float) * _CONJ
    return inner(v, vec_scale_right(v, lb)) - mul(inner(v, v), lb)


def lemma_polarized(u, v, w):
    """[U, V, W] + [U, W, V]."""
    return vector_associator(u, v, w) + vector_associator(u, w, v)


def six_term(u, v, w):
    """Sum of [.,.,.] over all six orderings of (U, V, W)."""
    return (
        vector_associator(u, v, w) + vector_associator(u, w, v)
        + vector_associator(v, w, u) + vector_associator(v, u, w)
        + vector_associator(w, u, v) + vector_associator(w, v, u)
    )


def trace_identity_residual(v):
    """tr(V V^dagger) - V^dagger V, which must vanish (and be real)."""
    return trace(outer(v, v)) - inner(v, v)


def three_psis_residual(v):
    """tilde(V V^dagger) V for a 2-component spinor."""
    if np.shape(v)[-2] != 2:
        raise ShapeMismatch("the 3-Psi rule is stated for 2-component spinors")
    return matvec(tilde(outer(v, v)), v)


def three_psis_trace_path(v):
    """The same quantity via (V V^dagger) V - V (V^dagger V)."""
    return matvec(outer(v, v), v) - vec_scale_right(v, inner(v, v))


def three_psis_polarized_residual(u, v, w):
    """(~(U V^) + ~(V U^)) W + (~(V W^) + ~(W V^)) U + (~(W U^) + ~(U W^)) V."""
    for x in (u, v, w):
        if np.shape(x)[-2] != 2:
            raise ShapeMismatch("the 3-Psi rule is stated for 2-component spinors")

    def term(p, q, r):
        return matvec(tilde(outer(p, q)) + tilde(outer(q, p)), r)

    return term(u, v, w) + term(v, w, u) + term(w, u, v)
