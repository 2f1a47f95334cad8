"""Right eigenpairs of 3x3 octonionic Hermitian matrices.

There is no closed form for non-real eigenvalues here, so the module offers
residual oracles (the associator-corrected cubic, the Rayleigh quotient and
the Re/Im formulas derived from it) together with a multi-start
Levenberg-Marquardt search for eigenpairs whose output is certified by all
three oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotNormalized, ShapeMismatch, ZeroComponent
from .linalg import (
    Hermitian2Params,
    Hermitian3Params,
    as_octonion,
    fro,
    inner,
    invariants3,
    matvec,
    vec_norm,
    vec_scale_right,
)
from .octonion import (
    DEFAULT_TOL,
    associator,
    conj,
    dot,
    im,
    left_matrix,
    mul,
    norm,
    real,
    right_matrix,
)

BLOCKS = ("12", "23", "13")


@dataclass(frozen=True, eq=False)
class EigenPair3:
    v: np.ndarray
    lam: np.ndarray
    residual: float
    certificates: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 20
    max_iterations: int = 200
    tol: float = 1e-9
    seed: int = 42
    constrain_imaginary: bool = False
    min_imag: float = 0.1

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")


def _matrix(h):
    if isinstance(h, (Hermitian2Params, Hermitian3Params)):
        return h.matrix()
    return np.asarray(h, dtype=float)


def embed2(h2, n, block="12"):
    """Place a 2x2 Hermitian matrix in a principal block of a 3x3 one."""
    if block == "12":
        return Hermitian3Params(h2.p, h2.m, n, h2.a, np.zeros(8), np.zeros(8))
    if block == "23":
        return Hermitian3Params(n, h2.p, h2.m, np.zeros(8), np.zeros(8), h2.a)
    if block == "13":
        # entry (1, 3) of the 3x3 layout is conj(b)
        return Hermitian3Params(h2.p, n, h2.m, np.zeros(8), conj(h2.a), np.zeros(8))
    raise ValueError(f"block must be one of {BLOCKS}")


def lift_vector(v2, block="12"):
    """Zero-pad a 2-vector to match embed2(..., block)."""
    x, y = np.asarray(v2, dtype=float)
    zero = np.zeros(8)
    slots = {"12": (x, y, zero), "23": (zero, x, y), "13": (x, zero, y)}
    try:
        return np.stack(slots[block])
    except KeyError:
        raise ValueError(f"block must be one of {BLOCKS}") from None


def _cyclic(h, v, shift):
    """Relabel indices cyclically so component (2 - shift) % 3 ends up last."""
    if shift == 0:
        return h, v
    a = np.roll(np.roll(h.matrix(), shift, axis=0), shift, axis=1)
    return Hermitian3Params.from_matrix(a), np.roll(v, shift, axis=0)


def char3_residual(h, v, lam, tol=DEFAULT_TOL.eps_identity, pivot=False):
    """LHS minus RHS of the associator-corrected characteristic cubic.

    With pivot=True the components are cyclically relabeled so that the
    largest one plays the role of z; the shift used is returned alongside.
    Otherwise a vanishing z raises ZeroComponent.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (3, 8):
        raise ShapeMismatch(f"expected a 3-vector, got {v.shape}")
    shift = 0
    if pivot:
        shift = (2 - int(np.argmax(norm(v)))) % 3
        h, v = _cyclic(h, v, shift)
    x, y, z = v
    if float(norm(z)) <= tol:
        raise ZeroComponent("third component of v vanishes")
    lam = as_octonion(lam)
    tr, sigma, det = invariants3(h)
    a, b, c = h.a, h.b, h.c
    ab, cb = conj(a), conj(c)
    lam2 = mul(lam, lam)
    poly = mul(lam, lam2) - tr * lam2 + sigma * lam - real(det)
    lhs = mul(z, poly)
    rhs = (
        mul(b, mul(a, mul(c, z)))
        + mul(cb, mul(ab, mul(conj(b), z)))
        - mul(mul(b, mul(a, c)) + mul(mul(cb, ab), conj(b)), z)
        + mul(b, associator(a, y, lam))
        + associator(b, mul(a, y), lam)
        + mul(associator(b, x, lam), lam - real(h.m))
        + mul(cb, associator(ab, x, lam))
        + associator(cb, mul(ab, x), lam)
        + mul(associator(cb, y, lam), lam - real(h.p))
    )
    if pivot:
        return lhs - rhs, shift
    return lhs - rhs


def char3_associator_terms(h, v, lam):
    """The six associator terms on the right of the cubic, in printed order."""
    x, y, _ = np.asarray(v, dtype=float)
    lam = as_octonion(lam)
    a, b, c = h.a, h.b, h.c
    ab, cb = conj(a), conj(c)
    return [
        mul(b, associator(a, y, lam)),
        associator(b, mul(a, y), lam),
        mul(associator(b, x, lam), lam - real(h.m)),
        mul(cb, associator(ab, x, lam)),
        associator(cb, mul(ab, x), lam),
        mul(associator(cb, y, lam), lam - real(h.p)),
    ]


def rayleigh3(h, v, tol=DEFAULT_TOL.eps_solve):
    """v^dagger (A v) for a normalized v."""
    v = np.asarray(v, dtype=float)
    if abs(float(vec_norm(v)) - 1.0) > tol:
        raise NotNormalized(f"v^dagger v = {float(vec_norm(v)) ** 2:.6g}, expected 1")
    return inner(v, matvec(_matrix(h), v))


@dataclass(frozen=True)
class ReLambda:
    value: float
    variants: tuple
    deviation: float


def re_lambda(h, v, tol=DEFAULT_TOL.eps_solve):
    """Re(lam) from the first row, plus the two cyclic variants.

    variants[k] uses row k + 1 and is None when that component vanishes.
    """
    x, y, z = np.asarray(v, dtype=float)
    a, b, c = h.a, h.b, h.c

    def row(u, w1, o1, w2, o2, diag):
        nu = float(dot(u, u))
        if math.sqrt(nu) <= tol:
            return None
        return (float(dot(w1, mul(o1, w2))) + float(dot(o2, mul(diag[1], diag[2]))) + diag[0] * nu) / nu

    v1 = row(x, x, a, y, z, (h.p, b, x))
    v2 = row(y, y, c, z, x, (h.m, a, y))
    v3 = row(z, z, b, x, y, (h.n, c, z))
    if v1 is None:
        raise ZeroComponent("first component of v vanishes")
    vals = [t for t in (v1, v2, v3) if t is not None]
    dev = max(abs(s - t) for s in vals for t in vals)
    return ReLambda(v1, (v1, v2, v3), dev)


def im_lambda(h, v):
    """[x, a, y] + [z, b, x] + [y, c, z]."""
    x, y, z = np.asarray(v, dtype=float)
    return associator(x, h.a, y) + associator(z, h.b, x) + associator(y, h.c, z)


def app_residual(v, lam):
    """(v^dagger v) lam - v^dagger (v lam); identically zero."""
    v = np.asarray(v, dtype=float)
    lam = np.asarray(lam, dtype=float)
    return mul(inner(v, v), lam) - inner(v, vec_scale_right(v, lam))


# -- numerical search ------------------------------------------------------


def _unpack(params, n):
    return params[: 8 * n].reshape(n, 8), params[8 * n:]


class _Problem:
    """Residual r(v, lam) = (A v - v lam, v^dagger v - 1) and its Jacobian.

    A v is the constant 8n x 8n block matrix of left multiplications by the
    entries of A applied to the stacked coordinates of v.
    """

    def __init__(self, a):
        self.n = a.shape[0]
        la = left_matrix(a)
        self.big_a = la.transpose(0, 2, 1, 3).reshape(8 * self.n, 8 * self.n)

    def residual(self, params):
        n = self.n
        v = params[: 8 * n]
        r_lam = right_matrix(params[8 * n:])
        av = self.big_a @ v - (v.reshape(n, 8) @ r_lam.T).ravel()
        return np.append(av, v @ v - 1.0)

    def jacobian(self, params):
        n = self.n
        v = params[: 8 * n]
        jac = np.empty((8 * n + 1, 8 * n + 8))
        jac[: 8 * n, : 8 * n] = self.big_a
        r_lam = right_matrix(params[8 * n:])
        for i in range(n):
            jac[8 * i: 8 * i + 8, 8 * i: 8 * i + 8] -= r_lam
        jac[: 8 * n, 8 * n:] = -left_matrix(v.reshape(n, 8)).reshape(8 * n, 8)
        jac[8 * n, : 8 * n] = 2.0 * v
        jac[8 * n, 8 * n:] = 0.0
        return jac


def residual_vector(a, params):
    """Stacked residual: the 8n coordinates of A v - v lam, then v^dagger v - 1."""
    return _Problem(np.asarray(a, dtype=float)).residual(np.asarray(params, dtype=float))


def residual_jacobian(a, params):
    """Analytic Jacobian of residual_vector, assembled from multiplication matrices."""
    return _Problem(np.asarray(a, dtype=float)).jacobian(np.asarray(params, dtype=float))


def objective(a, params):
    r = residual_vector(a, params)
    return float(r @ r)


def objective_gradient(a, params):
    """Gradient of ||r||^2, i.e. 2 J^T r."""
    return 2.0 * residual_jacobian(a, params).T @ residual_vector(a, params)


def _project(x, n, min_imag):
    """Renormalize v and, if requested, push |Im lam| up to min_imag."""
    v, lam = _unpack(x, n)
    v /= np.sqrt(np.sum(v * v))
    if min_imag is not None:
        nl = float(np.linalg.norm(lam[1:]))
        if nl < min_imag:
            if nl == 0.0:
                lam[1] = min_imag
            else:
                lam[1:] *= min_imag / nl
    return x


_STALL_WINDOW = 20


def _levenberg_marquardt(a, x0, cfg, min_imag):
    prob = _Problem(a)
    n = prob.n
    x = _project(x0.copy(), n, min_imag)
    r = prob.residual(x)
    f = float(r @ r)
    mu = 1e-3
    history = [f]
    for _ in range(cfg.max_iterations):
        if math.sqrt(f) <= 1e-3 * cfg.tol:
            break
        jac = prob.jacobian(x)
        g = jac.T @ r
        jtj = jac.T @ jac
        improved = False
        while mu < 1e12:
            step = np.linalg.solve(jtj + mu * np.eye(len(x)), -g)
            trial = _project(x + step, n, min_imag)
            rt = prob.residual(trial)
            ft = float(rt @ rt)
            if ft < f:
                improved = True
                rel = (f - ft) / max(f, 1e-300)
                x, r, f = trial, rt, ft
                mu = max(mu / 3.0, 1e-12)
                break
            mu *= 4.0
        if not improved or rel < 1e-12:
            break
        history.append(f)
        # stalled on a positive plateau: under 0.1% progress in the last 20 steps
        if len(history) > _STALL_WINDOW and history[-1] > (1.0 - 1e-3) * history[-1 - _STALL_WINDOW]:
            break
    return x


@dataclass
class SearchResult:
    pairs: list
    best_residual: float
    converged: int
    rejected: int
    restarts: int

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


def certify(h, v, lam, tol):
    """Cross-check a candidate pair with the cubic and the Rayleigh quotient."""
    a = _matrix(h)
    certs = {"residual": float(fro(matvec(a, v) - vec_scale_right(v, lam)))}
    if isinstance(h, Hermitian3Params):
        res, shift = char3_residual(h, v, lam, pivot=True)
        certs["char3"] = float(norm(res))
        certs["pivot_shift"] = shift
    certs["rayleigh"] = float(norm(inner(v, matvec(a, v)) - lam))
    ok = certs["residual"] <= tol and certs.get("char3", 0.0) <= 10 * tol and certs["rayleigh"] <= 10 * tol
    return ok, certs


def _duplicate(p, q):
    if float(norm(p.lam - q.lam)) > 1e-6:
        return False
    return abs(float(norm(inner(p.v, q.v))) - 1.0) <= 1e-6


def gershgorin_interval(a):
    """Real interval containing Re(lambda) for every normalized right eigenpair."""
    n = a.shape[0]
    idx = np.arange(n)
    norms = np.sqrt(np.sum(a * a, axis=-1))
    radius = norms.sum(axis=1) - norms[idx, idx]
    diag = a[idx, idx, 0]
    return float((diag - radius).min()), float((diag + radius).max())


def _initial_points(a, cfg, min_imag, starts):
    n = a.shape[0]
    lo, hi = gershgorin_interval(a)
    for v0, lam0 in starts:
        yield np.concatenate([np.asarray(v0, dtype=float).ravel(), as_octonion(lam0)])
    for child in np.random.SeedSequence(cfg.seed).spawn(cfg.restarts):
        rng = np.random.default_rng(child)
        v0 = rng.standard_normal((n, 8))
        v0 /= np.sqrt(np.sum(v0 * v0))
        # Re(lambda) spread over the whole spectrum; a Rayleigh quotient of a
        # random v sits near the mean and keeps finding the middle eigenvalue
        lam0 = real(rng.uniform(lo, hi))
        if min_imag is not None:
            u = rng.standard_normal(8)
            u[0] = 0.0
            lam0 = lam0 + (min_imag + rng.uniform(0, 1)) * u / np.linalg.norm(u)
        yield np.concatenate([v0.ravel(), lam0])


def eigensearch(h, cfg=SearchConfig(), starts=()):
    """Multi-start search for right eigenpairs A v = v lam.

    Each restart runs a projected Levenberg-Marquardt iteration on
    ||A v - v lam||^2 + (v^dagger v - 1)^2 from a seeded random point;
    optional (v, lam) warm starts run first.  Returns a SearchResult whose
    pairs satisfy the residual tolerance and pass certify(); an empty result
    is how non-convergence is reported.
    """
    a = _matrix(h)
    n = a.shape[0]
    min_imag = cfg.min_imag if cfg.constrain_imaginary else None
    found, best, converged, rejected = [], math.inf, 0, 0
    for x0 in _initial_points(a, cfg, min_imag, starts):
        x = _levenberg_marquardt(a, x0, cfg, min_imag)
        v, lam = _unpack(x, n)
        v = v / np.sqrt(np.sum(v * v))
        res = float(fro(matvec(a, v) - vec_scale_right(v, lam)))
        best = min(best, res)
        if res > cfg.tol:
            continue
        converged += 1
        ok, certs = certify(h, v, lam, cfg.tol)
        if not ok:
            rejected += 1
            continue
        pair = EigenPair3(v.copy(), lam.copy(), res, certs)
        if not any(_duplicate(pair, q) for q in found):
            found.append(pair)
    found.sort(key=lambda p: (round(float(p.lam[0]), 9), float(norm(im(p.lam)))))
    return SearchResult(found, best, converged, rejected, cfg.restarts + len(starts))
