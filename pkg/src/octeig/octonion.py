"""Octonion arithmetic on arrays whose trailing axis holds 8 real coefficients.

Basis order is (1, i, j, k, kl, jl, il, l).  Every function here broadcasts
over leading axes, so the same code path serves single values and the large
seeded samples used by the verification suites.
"""

from __future__ import annotations

import math
import re as _regex
from dataclasses import dataclass, field

import numpy as np

from .errors import DivisionByZero, NotUnitImaginary, ParseError, TableInvalid

BASIS_NAMES = ("1", "i", "j", "k", "kl", "jl", "il", "l")
_INDEX = {name: q for q, name in enumerate(BASIS_NAMES)}

# Oriented lines of the projective plane; (a, b, c) means ab = c, bc = a, ca = b.
TRIPLES = (
    ("i", "j", "k"),
    ("i", "l", "il"),
    ("j", "l", "jl"),
    ("k", "l", "kl"),
    ("i", "kl", "jl"),
    ("j", "il", "kl"),
    ("k", "jl", "il"),
)


@dataclass(frozen=True)
class Tolerance:
    eps_identity: float = 1e-12
    eps_solve: float = 1e-9

    def __post_init__(self):
        if not (self.eps_identity > 0 and self.eps_solve > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.eps_identity > self.eps_solve:
            raise ValueError("eps_identity must not exceed eps_solve")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True, eq=False)
class MultiplicationTable:
    """Signed basis products: e_p e_q = sign[p, q] * e_{index[p, q]}."""

    sign: np.ndarray
    index: np.ndarray
    triples: tuple = TRIPLES
    structure: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        # structure[p*8 + q, r] is the coefficient of e_r in e_p e_q
        c = np.zeros((64, 8))
        for p in range(8):
            for q in range(8):
                c[p * 8 + q, self.index[p, q]] = self.sign[p, q]
        c.setflags(write=False)
        object.__setattr__(self, "structure", c)

    def product(self, p, q):
        return int(self.sign[p, q]), int(self.index[p, q])


def _raw_table(triples):
    sign = np.zeros((8, 8), dtype=int)
    index = np.zeros((8, 8), dtype=int)
    for q in range(8):
        sign[0, q] = sign[q, 0] = 1
        index[0, q] = index[q, 0] = q
    for q in range(1, 8):
        sign[q, q] = -1
        index[q, q] = 0
    for names in triples:
        a, b, c = (_INDEX[n] for n in names)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if sign[x, y] != 0 and x != y:
                raise TableInvalid(f"pair ({BASIS_NAMES[x]}, {BASIS_NAMES[y]}) lies on two lines")
            sign[x, y], index[x, y] = 1, z
            sign[y, x], index[y, x] = -1, z
    return sign, index


def _check_table(table):
    sign, index = table.sign, table.index
    if np.any(sign == 0):
        missing = [(BASIS_NAMES[p], BASIS_NAMES[q]) for p, q in zip(*np.nonzero(sign == 0))]
        raise TableInvalid(f"basis products undefined: {missing}")
    for q in range(8):
        if table.product(0, q) != (1, q) or table.product(q, 0) != (1, q):
            raise TableInvalid(f"e1 is not a two-sided identity for {BASIS_NAMES[q]}")
    for q in range(1, 8):
        if table.product(q, q) != (-1, 0):
            raise TableInvalid(f"{BASIS_NAMES[q]}^2 != -1")
    for names in table.triples:
        a, b, c = (_INDEX[n] for n in names)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if table.product(x, y) != (1, z):
                raise TableInvalid(f"line {names} not closed: {BASIS_NAMES[x]}{BASIS_NAMES[y]}")
    # a signed permutation row per basis unit is what |e_p e_q| = 1 means for every q
    for p in range(8):
        if sorted(index[p]) != list(range(8)):
            raise TableInvalid(f"left multiplication by {BASIS_NAMES[p]} is not norm preserving")
    # alternativity of the bilinear extension is equivalent to the associator
    # being antisymmetric on every basis triple
    e = np.eye(8)
    rows = _mul(table, e[:, None, :], e[None, :, :])
    left = _mul(table, rows[:, :, None, :], e[None, None, :, :])
    right = _mul(table, e[:, None, None, :], rows[None, :, :, :])
    assoc = left - right
    for perm in ((1, 0, 2, 3), (0, 2, 1, 3)):
        bad = np.argwhere(np.any(assoc + assoc.transpose(perm) != 0, axis=-1))
        if len(bad):
            p, q, r = bad[0]
            raise TableInvalid(
                f"not alternative: associator of ({BASIS_NAMES[p]}, {BASIS_NAMES[q]}, {BASIS_NAMES[r]}) is not antisymmetric"
            )
    _check_worked_examples(table)


def _check_worked_examples(table):
    def o(expr):
        return parse(expr)

    def mv(rows, vec):
        return [sum(_mul(table, rows[r][c], vec[c]) for c in range(2)) for r in range(2)]

    a = [[o("1"), o("-i")], [o("i"), o("1")]]
    # left eigenpair: A (1, k) = (1 + j)(1, k)
    got = mv(a, [o("1"), o("k")])
    want = [_mul(table, o("1+j"), x) for x in (o("1"), o("k"))]
    if not all(np.array_equal(g, w) for g, w in zip(got, want)):
        raise TableInvalid("left eigenpair (1, k) with eigenvalue 1+j not reproduced")
    # right eigenpair: A (j, l) = (j, l)(1 + kl)
    got = mv(a, [o("j"), o("l")])
    want = [_mul(table, x, o("1+kl")) for x in (o("j"), o("l"))]
    if not all(np.array_equal(g, w) for g, w in zip(got, want)):
        raise TableInvalid("right eigenpair (j, l) with eigenvalue 1+kl not reproduced")
    # spin: -(r_x Psi+) l = Psi+ (-k/2) with r_x = [[0, l], [l, 0]]/2, Psi+ = (1, k)
    rx = [[o("0"), 0.5 * o("l")], [0.5 * o("l"), o("0")]]
    psi = [o("1"), o("k")]
    got = [-_mul(table, x, o("l")) for x in mv(rx, psi)]
    want = [_mul(table, x, -0.5 * o("k")) for x in psi]
    if not all(np.array_equal(g, w) for g, w in zip(got, want)):
        raise TableInvalid("L_x Psi+ = Psi+ (-k/2) not reproduced")


def _mul(table, a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    outer = a[..., :, None] * b[..., None, :]
    return outer.reshape(outer.shape[:-2] + (64,)) @ table.structure


def build_table(triples=TRIPLES) -> MultiplicationTable:
    """Generate the basis product table from oriented lines and certify it.

    Raises TableInvalid if any axiom or any of the worked eigenpair checks
    fails.
    """
    sign, index = _raw_table(triples)
    sign.setflags(write=False)
    index.setflags(write=False)
    table = MultiplicationTable(sign, index, tuple(tuple(t) for t in triples))
    _check_table(table)
    return table



# -- elementwise operations ------------------------------------------------


def mul(a, b):
    """Octonion product ab, broadcasting over leading axes."""
    return _mul(TABLE, a, b)


def conj(a):
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1
    return out


def re(a):
    return np.asarray(a, dtype=float)[..., 0]


def im(a):
    out = np.array(a, dtype=float, copy=True)
    out[..., 0] = 0.0
    return out


def dot(a, b):
    """Euclidean inner product inherited from R^8."""
    return np.sum(np.asarray(a, dtype=float) * np.asarray(b, dtype=float), axis=-1)


def norm(a):
    return np.sqrt(dot(a, a))


def real(x):
    """Embed real numbers as octonions."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape + (8,))
    out[..., 0] = x
    return out


def inverse(a, tol=DEFAULT_TOL.eps_identity):
    a = np.asarray(a, dtype=float)
    n2 = dot(a, a)
    if np.any(np.sqrt(n2) <= tol):
        raise DivisionByZero("octonion has (numerically) zero norm")
    return conj(a) / n2[..., None]


def associator(a, b, c):
    """[a, b, c] = (ab)c - a(bc)."""
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def commutator(a, b):
    return mul(a, b) - mul(b, a)


def unit_complex(u, theta, tol=DEFAULT_TOL.eps_identity):
    """cos(theta) + u sin(theta) for a unit imaginary u."""
    u = np.asarray(u, dtype=float)
    if abs(u[0]) > tol or abs(norm(u) - 1.0) > tol:
        raise NotUnitImaginary("expected a pure imaginary octonion of unit norm")
    return math.cos(theta) * basis("1") + math.sin(theta) * u


def left_matrix(a):
    """8x8 real matrix M with M @ b == mul(a, b)."""
    c = TABLE.structure.reshape(8, 8, 8)
    return np.einsum("...p,pqr->...rq", np.asarray(a, dtype=float), c)


def right_matrix(b):
    """8x8 real matrix M with M @ a == mul(a, b)."""
    c = TABLE.structure.reshape(8, 8, 8)
    return np.einsum("...q,pqr->...rp", np.asarray(b, dtype=float), c)


# -- names and the text mini-syntax ----------------------------------------


def basis(name):
    name = name.replace("ℓ", "l")
    try:
        q = _INDEX[name]
    except KeyError:
        raise ParseError(f"unknown basis unit {name!r}") from None
    out = np.zeros(8)
    out[q] = 1.0
    return out


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_UNIT = r"kl|jl|il|k|j|i|l"
_TERM = _regex.compile(rf"\s*([+-])?\s*({_NUM})?\s*\*?\s*({_UNIT})?\s*")


def parse(text):
    """Parse signed terms such as ``1+kl``, ``-0.5i + 2jl`` or ``3``."""
    src = text.replace("ℓ", "l")
    if not src.strip():
        raise ParseError("empty octonion expression")
    out = np.zeros(8)
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        sign, num, unit = m.groups()
        if m.end() == pos or (num is None and unit is None):
            raise ParseError(f"cannot parse octonion {text!r} at column {pos}")
        if sign is None and not first:
            raise ParseError(f"missing operator in {text!r} at column {pos}")
        coeff = float(num) if num is not None else 1.0
        if sign == "-":
            coeff = -coeff
        out[_INDEX[unit] if unit else 0] += coeff
        pos = m.end()
        first = False
    return out


def format_octonion(a, precision=12):
    """Inverse of parse(); zero coefficients are dropped."""
    a = np.asarray(a, dtype=float)
    parts = []
    for q, c in enumerate(a):
        if c == 0:
            continue
        mag = f"{abs(c):.{precision}g}"
        if q:
            mag = BASIS_NAMES[q] if mag == "1" else mag + BASIS_NAMES[q]
        parts.append(("-" if c < 0 else "+") + mag)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


class Octonion:
    """Immutable scalar wrapper with operator syntax.

    >>> Octonion("i") * Octonion("j")
    Octonion('k')
    """

    __slots__ = ("_c",)
    __array_priority__ = 20

    def __init__(self, value=0.0):
        if isinstance(value, Octonion):
            c = value._c
        elif isinstance(value, str):
            c = parse(value)
        elif np.ndim(value) == 0:
            c = real(float(value))
        else:
            c = np.array(value, dtype=float)
            if c.shape != (8,):
                raise ValueError(f"octonion needs 8 coefficients, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("octonion coefficients must be finite")
        c = np.array(c, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Octonion is immutable")

    @property
    def coeffs(self):
        return self._c

    def __array__(self, dtype=None, copy=None):
        return np.array(self._c, dtype=dtype)

    def __iter__(self):
        return iter(self._c.tolist())

    def __repr__(self):
        return f"Octonion({format_octonion(self._c)!r})"

    def __str__(self):
        return format_octonion(self._c)

    def __eq__(self, other):
        try:
            other = Octonion(other)
        except (TypeError, ValueError, ParseError):
            return NotImplemented
        return bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash(tuple(self._c))

    def isclose(self, other, tol=DEFAULT_TOL.eps_identity):
        return bool(norm(self._c - Octonion(other)._c) <= tol)

    def __add__(self, other):
        return Octonion(self._c + Octonion(other)._c)

    __radd__ = __add__

    def __sub__(self, other):
        return Octonion(self._c - Octonion(other)._c)

    def __rsub__(self, other):
        return Octonion(Octonion(other)._c - self._c)

    def __neg__(self):
        return Octonion(-self._c)

    def __mul__(self, other):
        if np.ndim(other) == 0 and not isinstance(other, (Octonion, str)):
            return Octonion(self._c * float(other))
        return Octonion(mul(self._c, Octonion(other)._c))

    def __rmul__(self, other):
        return Octonion(mul(Octonion(other)._c, self._c))

    def __truediv__(self, other):
        if np.ndim(other) == 0 and not isinstance(other, (Octonion, str)):
            return Octonion(self._c / float(other))
        return Octonion(mul(self._c, inverse(Octonion(other)._c)))

    def conj(self):
        return Octonion(conj(self._c))

    @property
    def real(self):
        return float(self._c[0])

    @property
    def imag(self):
        return Octonion(im(self._c))

    def __abs__(self):
        return float(norm(self._c))

    def inverse(self):
        return Octonion(inverse(self._c))


TABLE = build_table()
