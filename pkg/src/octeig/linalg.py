"""Vectors and matrices with octonion entries.

A vector of length n is an array of shape (..., n, 8); an m x n matrix has
shape (..., m, n, 8).  Every summand of a product is formed as
(left-factor entry) * (right-factor entry) with no re-association, so the
order in which an expression is written is the order in which it is
evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch
from .octonion import Octonion, conj, dot, mul, norm, parse, real


def as_octonion(value):
    """Coerce a name expression, real, Octonion or 8-array to an 8-array."""
    if isinstance(value, str):
        return parse(value)
    if isinstance(value, Octonion):
        return np.array(value.coeffs)
    if np.ndim(value) == 0:
        return real(float(value))
    arr = np.asarray(value, dtype=float)
    if arr.shape[-1] != 8:
        raise ShapeMismatch(f"octonion needs 8 coefficients, got shape {arr.shape}")
    return arr


def vector(*entries):
    """vector("1", "k") -> array of shape (2, 8)."""
    return np.stack([as_octonion(e) for e in entries])


def matrix(rows):
    return np.stack([np.stack([as_octonion(e) for e in row]) for row in rows])


def identity(n):
    out = np.zeros((n, n, 8))
    out[np.arange(n), np.arange(n), 0] = 1.0
    return out


def scalar_matrix(lam, n):
    """lam * I with lam an octonion."""
    out = np.zeros(np.shape(lam)[:-1] + (n, n, 8))
    for i in range(n):
        out[..., i, i, :] = lam
    return out


def fro(x):
    """Frobenius norm over all octonion entries (trailing axes collapsed)."""
    x = np.asarray(x, dtype=float)
    return np.sqrt(np.sum(x * x))


def _check_vec(v):
    if np.ndim(v) < 2 or np.shape(v)[-1] != 8:
        raise ShapeMismatch(f"expected an octonion vector, got shape {np.shape(v)}")


def _check_mat(a):
    if np.ndim(a) < 3 or np.shape(a)[-1] != 8:
        raise ShapeMismatch(f"expected an octonion matrix, got shape {np.shape(a)}")


def dagger(m):
    _check_mat(m)
    return np.swapaxes(conj(m), -3, -2)


def matvec(a, v):
    _check_mat(a)
    _check_vec(v)
    if a.shape[-2] != v.shape[-2]:
        raise ShapeMismatch(f"matrix with {a.shape[-2]} columns times vector of length {v.shape[-2]}")
    return mul(a, np.expand_dims(v, -3)).sum(axis=-2)


def vec_scale_right(v, lam):
    """Component-wise v_i * lam."""
    _check_vec(v)
    return mul(v, np.expand_dims(lam, -2))


def vec_scale_left(lam, v):
    """Component-wise lam * v_i."""
    _check_vec(v)
    return mul(np.expand_dims(lam, -2), v)


def mat_scale_left(lam, m):
    """Entry-wise lam * m_ij."""
    _check_mat(m)
    return mul(np.expand_dims(np.expand_dims(lam, -2), -2), m)


def inner(v, w):
    """v^dagger w = sum_i conj(v_i) w_i."""
    _check_vec(v)
    _check_vec(w)
    if v.shape[-2] != w.shape[-2]:
        raise ShapeMismatch("inner product of vectors with different lengths")
    return mul(conj(v), w).sum(axis=-2)


def outer(v, w):
    """v w^dagger, entry (i, j) = v_i conj(w_j)."""
    _check_vec(v)
    _check_vec(w)
    if v.shape[-2] != w.shape[-2]:
        raise ShapeMismatch("outer product of vectors with different lengths")
    return mul(np.expand_dims(v, -2), np.expand_dims(conj(w), -3))


def matmul(a, b):
    _check_mat(a)
    _check_mat(b)
    if a.shape[-2] != b.shape[-3]:
        raise ShapeMismatch(f"cannot multiply {a.shape[-3:-1]} by {b.shape[-3:-1]}")
    return mul(np.expand_dims(a, -2), np.expand_dims(b, -4)).sum(axis=-3)


def trace(a):
    _check_mat(a)
    if a.shape[-3] != a.shape[-2]:
        raise ShapeMismatch("trace of a non-square matrix")
    return np.diagonal(a, axis1=-3, axis2=-2).sum(axis=-1)


def tilde(a):
    """a - (tr a) I, with tr a multiplying the identity."""
    return a - scalar_matrix(trace(a), a.shape[-2])


def is_hermitian(a, tol=1e-12):
    _check_mat(a)
    if a.shape[-3] != a.shape[-2]:
        return False
    return bool(fro(a - dagger(a)) <= tol)


@dataclass(frozen=True, eq=False)
class Hermitian2Params:
    """[[p, a], [conj(a), m]] with p, m real."""

    p: float
    m: float
    a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "m", float(self.m))
        a = as_octonion(self.a).copy()
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    def matrix(self):
        return np.stack([
            np.stack([real(self.p), self.a]),
            np.stack([conj(self.a), real(self.m)]),
        ])

    @classmethod
    def from_matrix(cls, a, tol=1e-12):
        a = np.asarray(a, dtype=float)
        if a.shape != (2, 2, 8):
            raise ShapeMismatch(f"expected a 2x2 octonion matrix, got {a.shape}")
        if not is_hermitian(a, tol):
            raise ValueError("matrix is not Hermitian")
        return cls(a[0, 0, 0], a[1, 1, 0], a[0, 1])

    @property
    def trace(self):
        return self.p + self.m

    def __repr__(self):
        return f"Hermitian2Params(p={self.p!r}, m={self.m!r}, a={Octonion(self.a)})"


@dataclass(frozen=True, eq=False)
class Hermitian3Params:
    """[[p, a, conj(b)], [conj(a), m, c], [b, conj(c), n]]."""

    p: float
    m: float
    n: float
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        for name in ("p", "m", "n"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ("a", "b", "c"):
            v = as_octonion(getattr(self, name)).copy()
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    def matrix(self):
        p, m, n = real(self.p), real(self.m), real(self.n)
        a, b, c = self.a, self.b, self.c
        return np.stack([
            np.stack([p, a, conj(b)]),
            np.stack([conj(a), m, c]),
            np.stack([b, conj(c), n]),
        ])

    @classmethod
    def from_matrix(cls, a, tol=1e-12):
        a = np.asarray(a, dtype=float)
        if a.shape != (3, 3, 8):
            raise ShapeMismatch(f"expected a 3x3 octonion matrix, got {a.shape}")
        if not is_hermitian(a, tol):
            raise ValueError("matrix is not Hermitian")
        return cls(a[0, 0, 0], a[1, 1, 0], a[2, 2, 0], a[0, 1], a[2, 0], a[1, 2])

    def __repr__(self):
        return (f"Hermitian3Params(p={self.p!r}, m={self.m!r}, n={self.n!r}, "
                f"a={Octonion(self.a)}, b={Octonion(self.b)}, c={Octonion(self.c)})")


def det2(h):
    """pm - |a|^2."""
    return h.p * h.m - float(dot(h.a, h.a))


def invariants3(h):
    """(tr, sigma, det) of a 3x3 Hermitian matrix; all three are real."""
    a, b, c = h.a, h.b, h.c
    na, nb, nc = (float(dot(x, x)) for x in (a, b, c))
    tr = h.p + h.m + h.n
    sigma = h.p * h.m + h.p * h.n + h.m * h.n - na - nb - nc
    bac = mul(b, mul(a, c))
    det = h.p * h.m * h.n + 2.0 * float(bac[0]) - h.n * na - h.m * nb - h.p * nc
    return tr, sigma, det


def vec_norm(v):
    """sqrt(v^dagger v)."""
    return np.sqrt(np.sum(norm(v) ** 2, axis=-1))
