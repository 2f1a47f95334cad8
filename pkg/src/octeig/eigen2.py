"""Left and right eigenpairs of 2x2 octonionic Hermitian matrices.

Matrices admitting non-real eigenvalues (on either side) are exactly those of
the form p*I + q*J(r) with J(r) = [[0, -r], [r, 0]], r a unit imaginary and
q != 0.  This module classifies matrices, constructs eigenpairs for that
family, evaluates the associator-corrected characteristic equation, and
checks the decomposition and orthogonality statements on explicit pairs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSample,
    InadmissibleLambda,
    InvalidPair,
    NotInA,
    NotInV,
    NotQuaternionic,
    PreconditionViolated,
    ShapeMismatch,
    ZeroComponent,
)
from .linalg import (
    Hermitian2Params,
    as_octonion,
    dagger,
    det2,
    fro,
    identity,
    inner,
    mat_scale_left,
    matmul,
    matvec,
    outer,
    scalar_matrix,
    vec_norm,
    vec_scale_left,
    vec_scale_right,
)
from .octonion import (
    DEFAULT_TOL,
    associator,
    basis,
    conj,
    dot,
    im,
    mul,
    norm,
    real,
    unit_complex,
)


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True, eq=False)
class EigenPair2:
    v: np.ndarray
    lam: np.ndarray
    side: Side
    residual: float


@dataclass(frozen=True, eq=False)
class AMembership:
    in_A: bool
    p: float
    q: float
    r_hat: np.ndarray | None
    defect: float


def _matrix(h):
    return h.matrix() if isinstance(h, Hermitian2Params) else np.asarray(h, dtype=float)


def eigen_residual(a, v, lam, side=Side.RIGHT):
    """||A v - v lam|| (right) or ||A v - lam v|| (left)."""
    av = matvec(_matrix(a), v)
    scaled = vec_scale_right(v, lam) if Side(side) is Side.RIGHT else vec_scale_left(lam, v)
    return float(fro(av - scaled))


def classify_in_A(h, tol=DEFAULT_TOL.eps_solve):
    """Decide whether h = p*I + q*J(r_hat) and recover (p, q, r_hat).

    The sign of r_hat is fixed so that the top off-diagonal entry is
    -q*r_hat with q > 0.
    """
    defect = max(abs(h.p - h.m), abs(float(h.a[0])))
    ia = im(h.a)
    q = float(norm(ia))
    if defect <= tol and float(norm(h.a)) > tol:
        return AMembership(True, h.p, q, -ia / q, defect)
    return AMembership(False, h.p, q, None, defect)


def _membership(h, tol):
    cls = classify_in_A(h, tol)
    if not cls.in_A:
        raise NotInA(
            "matrix admits no non-real eigenvalues: need p = m and Re(a) = 0 with a != 0 "
            f"(|p - m| = {abs(h.p - h.m):.3e}, |Re(a)| = {abs(float(h.a[0])):.3e}, |a| = {float(norm(h.a)):.3e})"
        )
    return cls


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def sample_V(seed=None):
    """Random (x, y) with |x| = |y| = 1 and x.y = 0 in R^8."""
    rng = _rng(seed)
    for _ in range(100):
        x, y = rng.standard_normal((2, 8))
        nx = np.linalg.norm(x)
        if nx < 1e-8:
            continue
        x /= nx
        y -= np.dot(x, y) * x
        ny = np.linalg.norm(y)
        if ny < 1e-8:
            continue
        return np.stack([x, y / ny])
    raise DegenerateSample("could not draw two independent directions in 100 attempts")


def in_V(v, tol=DEFAULT_TOL.eps_solve):
    x, y = v
    return abs(float(dot(x, x) - dot(y, y))) <= tol and abs(float(dot(x, y))) <= tol


def left_pair_from_V(h, v, tol=DEFAULT_TOL.eps_solve):
    """Left eigenpair A v = lam v for h in A and v in V."""
    cls = _membership(h, tol)
    v = np.asarray(v, dtype=float)
    if v.shape != (2, 8):
        raise ShapeMismatch(f"expected a 2-vector, got {v.shape}")
    if not in_V(v, tol) or float(norm(v[0])) <= tol:
        raise NotInV("left eigenvectors need |x| = |y| != 0 and x.y = 0")
    x, y = v
    r, p, q = cls.r_hat, cls.p, cls.q
    lam = real(p) + q * (-mul(mul(r, y), conj(x))) / float(dot(x, x))
    lam_alt = real(p) + q * mul(mul(r, x), conj(y)) / float(dot(y, y))
    if float(norm(lam - lam_alt)) > tol:
        raise NotInV(f"the two left eigenvalue formulas disagree by {float(norm(lam - lam_alt)):.3e}")
    return EigenPair2(v, lam, Side.LEFT, eigen_residual(h, v, lam, Side.LEFT))


def _orthonormal(vectors):
    basis_out = []
    for vec in vectors:
        w = np.array(vec, dtype=float)
        for b in basis_out:
            w -= np.dot(b, w) * b
        n = np.linalg.norm(w)
        if n > 1e-8:
            basis_out.append(w / n)
    return basis_out


def check_right_lambda(h, lam, tol=DEFAULT_TOL.eps_solve):
    """Raise InadmissibleLambda unless lam is a non-real right eigenvalue of h."""
    cls = _membership(h, tol)
    lam = as_octonion(lam)
    d = abs(float(norm(lam - real(cls.p))) - cls.q)
    if d > tol:
        raise InadmissibleLambda("|lambda - p| = |a|", d)
    d = abs(float(dot(im(lam), h.a)))
    if d > tol:
        raise InadmissibleLambda("lambda . a = 0", d)
    if float(norm(im(lam))) <= tol:
        raise InadmissibleLambda("Im(lambda) != 0", float(norm(im(lam))))
    return cls


def right_pair_for_lambda(h, lam, tol=DEFAULT_TOL.eps_solve):
    """Right eigenpair A v = v lam for an admissible non-real lam.

    x is the first imaginary basis direction (in basis order) left over after
    projecting out the quaternionic subalgebra generated by a and Im(lam);
    y = conj(a)(x(lam - p)) / q^2; v is normalized to v^dagger v = 1.
    """
    cls = check_right_lambda(h, lam, tol)
    lam = as_octonion(lam)
    a_hat = h.a / float(norm(h.a))
    u = im(lam) / float(norm(im(lam)))
    span = _orthonormal([basis("1"), a_hat, u, mul(a_hat, u)])
    x = None
    for q in range(1, 8):
        e = np.zeros(8)
        e[q] = 1.0
        for b in span:
            e -= np.dot(b, e) * b
        if np.linalg.norm(e) > 0.5:
            x = e / np.linalg.norm(e)
            break
    y = mul(conj(h.a), mul(x, lam - real(cls.p))) / cls.q**2
    v = np.stack([x, y])
    v /= vec_norm(v)
    return EigenPair2(v, lam, Side.RIGHT, eigen_residual(h, v, lam, Side.RIGHT))


def right_family(p, q, theta):
    """The one-parameter family of right pairs for [[p, -iq], [iq, p]].

    Returns ((v, lam_v), (w, lam_w)) with v = (j, k conj(s))/sqrt2,
    lam_v = p + q s, w the flip of v and lam_w = p - q s, where
    s = cos(theta) + kl sin(theta).  At theta = pi/2, p = q = 1 this is
    A (j, l) = (j, l)(1 + kl).
    """
    s = unit_complex(basis("kl"), theta)
    v = np.stack([basis("j"), mul(basis("k"), conj(s))]) / math.sqrt(2.0)
    return (v, real(p) + q * s), (flip(v), real(p) - q * s)


def verify_pair(h, pair):
    return eigen_residual(h, pair.v, pair.lam, pair.side)


@dataclass(frozen=True)
class Char2Residual:
    primary: np.ndarray
    symmetric: np.ndarray | None

    @property
    def deviation(self):
        """Largest disagreement between the two equivalent forms."""
        if self.symmetric is None:
            return 0.0
        return float(norm(self.primary - self.symmetric))

    @property
    def size(self):
        vals = [float(norm(self.primary))]
        if self.symmetric is not None:
            vals.append(float(norm(self.symmetric)))
        return max(vals)


def char2_residual(h, v, lam, tol=DEFAULT_TOL.eps_identity):
    """lam^2 - lam tr + det - [conj(a), x, y](lam - p)/|y|^2.

    The symmetric form with [a, y, x](lam - m)/|x|^2 is evaluated too.
    """
    x, y = np.asarray(v, dtype=float)
    lam = as_octonion(lam)
    ny2, nx2 = float(dot(y, y)), float(dot(x, x))
    if math.sqrt(ny2) <= tol:
        raise ZeroComponent("second component of v vanishes")
    lhs = mul(lam, lam) - (h.p + h.m) * lam + real(det2(h))
    primary = lhs - mul(associator(conj(h.a), x, y), lam - real(h.p)) / ny2
    symmetric = None
    if math.sqrt(nx2) > tol:
        symmetric = lhs - mul(associator(h.a, y, x), lam - real(h.m)) / nx2
    return Char2Residual(primary, symmetric)


def char2_constraints(h, v, lam, tol=DEFAULT_TOL.eps_identity):
    """Residuals of the real/imaginary split of the characteristic equation.

    Keys: char_real (Re-part equation), alt (associator = 2 Im lam),
    lambda_dot_a, x_dot (lam.x, a.x, lam.y, a.y), quaternionic ((a lam).x and
    (a lam).y) and im_bound (|Im lam| <= |a|).  The x/y orthogonality checks
    are vacuous (reported as 0) when lam is real.
    """
    x, y = np.asarray(v, dtype=float)
    lam = as_octonion(lam)
    a = h.a
    rl = float(lam[0])
    im_l = im(lam)
    n_im = float(norm(im_l))
    out = {
        "char_real": abs(rl * rl - rl * (h.p + h.m) + det2(h) + n_im**2),
        "lambda_dot_a": abs(float(dot(lam, a))),
        "im_bound": max(0.0, n_im - float(norm(a))),
    }
    nxy = float(norm(x) * norm(y))
    alt = associator(conj(a), x, y) / nxy if nxy > tol else np.zeros(8)
    out["alt"] = float(norm(alt - 2.0 * im_l))
    if n_im > tol:
        out["x_dot"] = max(abs(float(dot(lam, c))) for c in (x, y))
        out["x_dot"] = max(out["x_dot"], *(abs(float(dot(a, c))) for c in (x, y)))
        al = mul(a, lam)
        out["quaternionic"] = max(abs(float(dot(al, c))) for c in (x, y))
    else:
        out["x_dot"] = 0.0
        out["quaternionic"] = 0.0
    return out


def dieudonne_residual(h, lam, tol=DEFAULT_TOL.eps_solve):
    """|det(Q Q^dagger)| for Q = A - lam I.

    Vanishes exactly when |lam - p| = |a| for h in A with lam . a = 0.
    """
    if not classify_in_A(h, tol).in_A:
        raise PreconditionViolated("matrix is not of the form p I + q J(r)")
    lam = as_octonion(lam)
    if abs(float(dot(lam, h.a))) > tol:
        raise PreconditionViolated("lambda . a != 0")
    qm = h.matrix() - scalar_matrix(lam, 2)
    sq = matmul(qm, dagger(qm))
    herm = Hermitian2Params(sq[0, 0, 0], sq[1, 1, 0], sq[0, 1])
    return abs(det2(herm))


def flip(v):
    v = np.asarray(v, dtype=float)
    return v[..., ::-1, :].copy()


def rayleigh(a, v):
    """v^dagger (A v); equals lam for a normalized right eigenvector."""
    return inner(v, matvec(_matrix(a), v))


@dataclass(frozen=True, eq=False)
class Decomposition:
    w: np.ndarray
    lambda_v: np.ndarray
    lambda_w: np.ndarray
    residuals: dict
    witness: float | None = None


def _require_normalized(v, tol):
    n = float(vec_norm(v))
    if abs(n - 1.0) > tol:
        raise InvalidPair(f"eigenvector must satisfy v^dagger v = 1 (has norm {n:.6g})")


def decompose_right(h, pair, tol=DEFAULT_TOL.eps_solve):
    """Check both expansions of A built from a right pair and its flip.

    residuals:
      expand_left         ||A - lam_v (v v^) - lam_w (w w^)||, scalars on the left
      expand_right        ||A - (v lam_v) v^ - (w lam_w) w^||
      flip_orthogonality  ||((v lam_v) v^) w||
      w_pair              ||A w - w lam_w||
    witness is ||(lam_v (v v^)) w||, nonzero for genuinely octonionic pairs.
    """
    if Side(pair.side) is not Side.RIGHT:
        raise InvalidPair("decompose_right needs a right eigenpair")
    if not classify_in_A(h, tol).in_A:
        raise InvalidPair("matrix is not of the form p I + q J(r)")
    if verify_pair(h, pair) > tol:
        raise InvalidPair(f"pair residual {verify_pair(h, pair):.3e} exceeds {tol:.1e}")
    _require_normalized(pair.v, tol)
    a = h.matrix()
    v, lv = pair.v, pair.lam
    w = flip(v)
    lw = rayleigh(a, w)
    vv, ww = outer(v, v), outer(w, w)
    expand_left = a - mat_scale_left(lv, vv) - mat_scale_left(lw, ww)
    vl, wl = vec_scale_right(v, lv), vec_scale_right(w, lw)
    expand_right = a - outer(vl, v) - outer(wl, w)
    residuals = {
        "expand_left": float(fro(expand_left)),
        "expand_right": float(fro(expand_right)),
        "flip_orthogonality": float(fro(matvec(outer(vl, v), w))),
        "w_pair": eigen_residual(a, w, lw, Side.RIGHT),
    }
    witness = float(fro(matvec(mat_scale_left(lv, vv), w)))
    return Decomposition(w, lv, lw, residuals, witness)


def decompose_left_quaternionic(h, pair, other=None, tol=DEFAULT_TOL.eps_solve):
    """A = lam_v v v^ + lam_w w w^ for a left pair with [r, x, y] = 0.

    w defaults to the flip of v with lam_w from the left eigenvalue formula;
    a second pair can be passed explicitly instead (e.g. for real diagonal
    matrices, which are outside A).
    """
    if Side(pair.side) is not Side.LEFT:
        raise InvalidPair("decompose_left_quaternionic needs a left eigenpair")
    if verify_pair(h, pair) > tol:
        raise InvalidPair(f"pair residual {verify_pair(h, pair):.3e} exceeds {tol:.1e}")
    _require_normalized(pair.v, tol)
    if other is None:
        cls = _membership(h, tol)
        x, y = pair.v
        obstruction = float(norm(associator(cls.r_hat, x, y)))
        if obstruction > tol:
            raise NotQuaternionic(f"[r, x, y] = {obstruction:.3e} != 0; the construction does not apply")
        other = left_pair_from_V(h, flip(pair.v), tol)
    w, lw = other.v, other.lam
    a = h.matrix()
    rec = a - mat_scale_left(pair.lam, outer(pair.v, pair.v)) - mat_scale_left(lw, outer(w, w))
    residuals = {"decomp": float(fro(rec)), "w_pair": eigen_residual(a, w, lw, Side.LEFT)}
    return Decomposition(w, pair.lam, lw, residuals)


def real_eigen2(h):
    """The two real eigenvalues (ascending) with eigenvectors in C(1, a)."""
    tr, det = h.p + h.m, det2(h)
    disc = math.sqrt(max(tr * tr - 4.0 * det, 0.0))
    lams = ((tr - disc) / 2.0, (tr + disc) / 2.0)
    na = float(norm(h.a))
    pairs = []
    if na == 0.0:
        order = (0, 1) if h.p <= h.m else (1, 0)
        for lam, idx in zip(lams, order):
            v = np.zeros((2, 8))
            v[idx, 0] = 1.0
            pairs.append(v)
    else:
        for lam in lams:
            # (a, lam - p) and (lam - m, conj(a)) both solve the system; keep the better conditioned one
            v1 = np.stack([h.a, real(lam - h.p)])
            v2 = np.stack([real(lam - h.m), conj(h.a)])
            v = v1 if vec_norm(v1) >= vec_norm(v2) else v2
            pairs.append(v / vec_norm(v))
    return tuple(
        EigenPair2(v, real(lam), Side.RIGHT, eigen_residual(h, v, real(lam), Side.RIGHT))
        for v, lam in zip(pairs, lams)
    )


def real_decomposition(h, pairs):
    """Residuals of A = lam_v v v^ + lam_w w w^ and (v v^) w = 0."""
    pv, pw = pairs
    a = h.matrix()
    rec = a - mat_scale_left(pv.lam, outer(pv.v, pv.v)) - mat_scale_left(pw.lam, outer(pw.v, pw.v))
    return {
        "decomp": float(fro(rec)),
        "ortho": float(fro(matvec(outer(pv.v, pv.v), pw.v))),
    }


def matrix_form_check(h, pairs):
    """Residuals of U U^ = I, A U = U D, A = (U D) U^ and (A U) U^ = A (U U^)."""
    if len(pairs) != 2:
        raise ShapeMismatch("matrix_form_check needs exactly two pairs")
    if any(Side(p.side) is not Side.RIGHT for p in pairs):
        raise ShapeMismatch("matrix_form_check works with right eigenpairs")
    a = h.matrix() if isinstance(h, Hermitian2Params) else np.asarray(h, dtype=float)
    u = np.stack([p.v for p in pairs], axis=1)
    d = np.zeros((2, 2, 8))
    for i, p in enumerate(pairs):
        d[i, i] = p.lam
    uh = dagger(u)
    au = matmul(a, u)
    return {
        "unitary": float(fro(matmul(u, uh) - identity(2))),
        "eigen": float(fro(au - matmul(u, d))),
        "decomposition": float(fro(a - matmul(matmul(u, d), uh))),
        "associativity": float(fro(matmul(au, uh) - matmul(a, matmul(u, uh)))),
    }


def lambda_from_pair(a, v, side=Side.RIGHT):
    """Solve v_i lam = (A v)_i (or lam v_i = ...) on the largest component."""
    av = matvec(_matrix(a), v)
    i = int(np.argmax(norm(v)))
    vi = v[i]
    n2 = float(dot(vi, vi))
    if Side(side) is Side.RIGHT:
        return mul(conj(vi), av[i]) / n2
    return mul(av[i], conj(vi)) / n2
