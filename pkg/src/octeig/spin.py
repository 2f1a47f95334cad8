"""Spin operators on 2-component octonionic spinors.

L_alpha psi = -(r_alpha psi) l, where r_alpha are the Pauli matrices times
l/2.  The operators are self-adjoint for <psi, chi> = pi(psi^dagger chi),
with pi projecting onto the complex subalgebra spanned by {1, l}.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import ShapeMismatch
from .linalg import inner, matrix, matvec, vec_scale_right, vector
from .octonion import DEFAULT_TOL, basis, conj, dot, mul, norm, unit_complex

ELL = basis("l")


class SpinAxis(str, enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"

    @property
    def generator(self):
        return GENERATORS[self]


GENERATORS = {
    SpinAxis.X: 0.5 * matrix([["0", "l"], ["l", "0"]]),
    SpinAxis.Y: 0.5 * matrix([["0", "1"], ["-1", "0"]]),
    SpinAxis.Z: 0.5 * matrix([["l", "0"], ["0", "-l"]]),
}
for _g in GENERATORS.values():
    _g.setflags(write=False)

PSI_PLUS = vector("1", "k")
PSI_MINUS = vector("-k", "1")
PSI_PLUS.setflags(write=False)
PSI_MINUS.setflags(write=False)


def apply_L(axis, psi):
    """-(r_axis psi) l, component by component."""
    psi = np.asarray(psi, dtype=float)
    if psi.shape[-2:] != (2, 8):
        raise ShapeMismatch(f"spinors have two octonion components, got {psi.shape}")
    return -vec_scale_right(matvec(GENERATORS[SpinAxis(axis)], psi), ELL)


def pi_project(q):
    """(q + l q conj(l)) / 2, products taken left to right."""
    q = np.asarray(q, dtype=float)
    return 0.5 * (q + mul(mul(ELL, q), conj(ELL)))


def spin_inner(psi, chi):
    return pi_project(inner(psi, chi))


def phase_state(theta):
    """Psi+ right-multiplied by exp(l theta)."""
    return vec_scale_right(np.array(PSI_PLUS), unit_complex(ELL, theta))


def eigenvalue_of(axis, psi, tol=DEFAULT_TOL.eps_identity):
    """Solve psi_i lam = (L psi)_i for each component.

    Returns (lam, disagreement); lam is taken from the larger component and
    disagreement is how far the other component's solution is from it.  A
    state is an eigenstate when the disagreement and the residual vanish.
    """
    lpsi = apply_L(axis, psi)
    sols = []
    for c, t in zip(psi, lpsi):
        n2 = float(dot(c, c))
        sols.append(mul(conj(c), t) / n2 if math.sqrt(n2) > tol else None)
    order = np.argsort([-float(norm(c)) for c in psi])
    lam = sols[order[0]]
    other = sols[order[1]]
    disagreement = 0.0 if other is None else float(norm(lam - other))
    return lam, disagreement


def eigen_table(thetas=()):
    """Eigenvalues of L_x, L_y, L_z on Psi+, Psi- and phase states."""
    states = [("psi_plus", PSI_PLUS), ("psi_minus", PSI_MINUS)]
    states += [(f"phase[{t:.6g}]", phase_state(t)) for t in thetas]
    rows = []
    for name, psi in states:
        for axis in SpinAxis:
            lam, dis = eigenvalue_of(axis, psi)
            res = float(np.linalg.norm(apply_L(axis, psi) - vec_scale_right(psi, lam)))
            rows.append({"state": name, "axis": axis.value, "lambda": lam, "residual": max(res, dis)})
    return rows
