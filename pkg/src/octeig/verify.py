"""Seeded randomized verification suites.

Each suite draws from its own generator, seeded by (seed, suite index), so a
suite produces the same report whether it runs alone or inside "all".
Reports carry no timestamps and are byte-for-byte reproducible.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import eigen2, eigen3, identities, spin
from .linalg import Hermitian2Params, Hermitian3Params, fro, matvec, vec_scale_right
from .octonion import (
    DEFAULT_TOL,
    TABLE,
    associator,
    basis,
    conj,
    dot,
    im,
    mul,
    norm,
    parse,
    real,
    unit_complex,
)

SUITES = ("core", "eigen2", "spin", "eigen3", "appendix")
TOLERANCE_ENV = "OCTEIG_TOLERANCE"
CHUNK = 10_000


def identity_tolerance():
    """eps_identity, overridable through the OCTEIG_TOLERANCE variable."""
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return DEFAULT_TOL.eps_identity
    value = float(raw)
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{TOLERANCE_ENV} must be a positive number, got {raw!r}")
    return value


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.residual <= self.tolerance)

    def record(self, suite):
        return {"record": "check", "suite": suite, "name": self.name,
                "residual": self.residual, "tolerance": self.tolerance, "pass": self.passed}


@dataclass
class VerificationReport:
    suite: str
    samples: int
    seed: int
    tolerance: float
    per_check: list = field(default_factory=list)

    @property
    def max_residual(self):
        return max((c.residual for c in self.per_check), default=0.0)

    @property
    def passed(self):
        return all(c.passed for c in self.per_check)

    def records(self):
        out = [c.record(self.suite) for c in self.per_check]
        out.append({"record": "summary", "suite": self.suite, "samples": self.samples,
                    "seed": self.seed, "tolerance": self.tolerance,
                    "max_residual": self.max_residual, "checks": len(self.per_check),
                    "pass": self.passed})
        return out

    def lines(self):
        return [json.dumps(r) for r in self.records()]


def _rng(seed, suite):
    return np.random.default_rng([seed, SUITES.index(suite)])


def _oct(rng, *shape):
    return rng.uniform(-1.0, 1.0, shape + (8,))


def _chunks(total):
    done = 0
    while done < total:
        step = min(CHUNK, total - done)
        yield step
        done += step


def _max(x, axis=-1):
    """Largest octonion norm in a batch."""
    x = np.asarray(x, dtype=float)
    return float(np.sqrt(np.sum(x * x, axis=axis)).max()) if x.size else 0.0


class _Acc:
    """Running maxima keyed by check name, preserving first-seen order."""

    def __init__(self):
        self.values = {}

    def add(self, name, value):
        self.values[name] = max(self.values.get(name, 0.0), float(value))

    def checks(self, tol, overrides=None):
        overrides = overrides or {}
        return [Check(k, v, overrides.get(k, tol)) for k, v in self.values.items()]


def _table_check():
    """Zero-tolerance comparison of the product table against a Cayley-Dickson doubling."""

    def qmul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return np.array([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])

    def qconj(p):
        return p * np.array([1, -1, -1, -1])

    # (q0, q1) <-> q0 + q1 l; index q of our basis maps to (quaternion part, unit)
    units = {"1": (0, 0), "i": (0, 1), "j": (0, 2), "k": (0, 3),
             "l": (1, 0), "il": (1, 1), "jl": (1, 2), "kl": (1, 3)}

    def to_pair(x):
        pair = np.zeros((2, 4))
        for name, (half, u) in units.items():
            pair[half, u] += x[["1", "i", "j", "k", "kl", "jl", "il", "l"].index(name)]
        return pair

    bad = 0
    for p in range(8):
        for q in range(8):
            ep, eq = np.eye(8)[p], np.eye(8)[q]
            (a, b), (c, d) = to_pair(ep), to_pair(eq)
            ref = np.stack([qmul(a, c) - qmul(qconj(d), b), qmul(d, a) + qmul(b, qconj(c))])
            sign, index = TABLE.product(p, q)
            bad += int(not np.array_equal(to_pair(sign * np.eye(8)[index]), ref))
    return bad


def suite_core(samples, rng, tol):
    acc = _Acc()
    for n in _chunks(samples):
        a, b, c, d, x = (_oct(rng, n) for _ in range(5))
        ab = mul(a, b)
        acc.add("antiautomorphism", _max(conj(ab) - mul(conj(b), conj(a))))
        na, nb = norm(a), norm(b)
        acc.add("norm_composition", np.max(np.abs(norm(ab) - na * nb) / (na * nb)))
        acc.add("dot_product_form", np.max(np.abs(dot(a, b) - 0.5 * (mul(a, conj(b)) + mul(b, conj(a)))[..., 0])))
        acc.add("dot_id", np.max(np.abs(dot(a, mul(x, b)) - dot(b, mul(conj(x), a)))))
        acc.add("dot_id_ii", np.max(np.abs(dot(mul(a, x), mul(b, x)) - dot(x, x) * dot(a, b))))
        acc.add("alternativity", max(_max(associator(b, a, a)), _max(associator(b, a, conj(a)))))
        lhs = mul(associator(a, b, c), d) + mul(a, associator(b, c, d))
        rhs = associator(ab, c, d) - associator(a, mul(b, c), d) + associator(a, b, mul(c, d))
        acc.add("assoc_identity", _max(lhs - rhs))
        abc = associator(a, b, c)
        acc.add("associator_antisymmetry", max(_max(abc + associator(b, a, c)), _max(abc + associator(a, c, b))))
        acc.add("associator_real_part", np.max(np.abs(abc[..., 0])))
        acc.add("associator_conjugate_flip", _max(associator(conj(a), b, c) + abc))
        # Artin: all bracketings of the length-4 word abab agree
        words = [
            mul(mul(mul(a, b), a), b), mul(mul(a, mul(b, a)), b), mul(mul(a, b), mul(a, b)),
            mul(a, mul(mul(b, a), b)), mul(a, mul(b, mul(a, b))),
        ]
        acc.add("artin_words", max(_max(w - words[0]) for w in words[1:]))
        nz = norm(a) > 1e-3
        inv = conj(a[nz]) / (norm(a[nz]) ** 2)[..., None]
        acc.add("inverse", _max(mul(a[nz], inv) - real(1.0)))
    checks = [Check("table_vs_doubling_mismatches", float(_table_check()), 0.0)]
    checks += acc.checks(tol, {"artin_words": 1e-10})
    return checks


def _random_A(rng):
    p = rng.uniform(-2, 2)
    q = rng.uniform(0.2, 2.0)
    r = rng.standard_normal(8)
    r[0] = 0.0
    r /= np.linalg.norm(r)
    return Hermitian2Params(p, p, -q * r), p, q, r


def _admissible_lambda(rng, p, q, r):
    u = rng.standard_normal(8)
    u[0] = 0.0
    u -= np.dot(u, r) * r
    u /= np.linalg.norm(u)
    return real(p) + q * u


def suite_eigen2(samples, rng, tol):
    tol_solve = max(1e-10, tol)
    acc = _Acc()
    for _ in range(samples):
        h, p, q, r = _random_A(rng)
        cls = eigen2.classify_in_A(h)
        acc.add("classify_recovers_params", max(abs(cls.q - q), float(norm(cls.r_hat - r))))
        left = eigen2.left_pair_from_V(h, eigen2.sample_V(rng))
        acc.add("left_residual", left.residual)
        acc.add("left_modulus", abs(float(norm(left.lam - real(p))) - q))
        acc.add("left_orthogonal", abs(float(dot(left.lam, r))))
        lam = _admissible_lambda(rng, p, q, r)
        right = eigen2.right_pair_for_lambda(h, lam)
        acc.add("right_residual", right.residual)
        for key, val in eigen2.char2_constraints(h, right.v, right.lam).items():
            acc.add(f"right_{key}", val)
        c2 = eigen2.char2_residual(h, right.v, right.lam)
        acc.add("char2", c2.size)
        dec = eigen2.decompose_right(h, right)
        for key, val in dec.residuals.items():
            acc.add(f"decompose_{key}", val)
        g = Hermitian2Params(rng.uniform(-2, 2), rng.uniform(-2, 2), _oct(rng))
        pairs = eigen2.real_eigen2(g)
        acc.add("real_pair_residual", max(pr.residual for pr in pairs))
        for key, val in eigen2.real_decomposition(g, pairs).items():
            acc.add(f"real_{key}", val)
        for key, val in eigen2.matrix_form_check(g, pairs).items():
            acc.add(f"matrix_form_real_{key}", val)

    h_i = Hermitian2Params(1, 1, parse("-i"))
    v = np.stack([real(1.0), basis("k")]) / math.sqrt(2.0)
    pair = eigen2.left_pair_from_V(h_i, v)
    acc.add("example_left_pair", max(pair.residual, float(norm(pair.lam - parse("1+j")))))
    acc.add("example_left_decomposition", eigen2.decompose_left_quaternionic(h_i, pair).residuals["decomp"])

    h_i = h_i
    for theta in np.linspace(0.0, 2 * math.pi, 16, endpoint=False):
        (v, lv), (w, lw) = eigen2.right_family(1.0, 1.0, theta)
        pv = eigen2.EigenPair2(v, lv, eigen2.Side.RIGHT, eigen2.eigen_residual(h_i, v, lv))
        pw = eigen2.EigenPair2(w, lw, eigen2.Side.RIGHT, eigen2.eigen_residual(h_i, w, lw))
        acc.add("family_residual", max(pv.residual, pw.residual))
        for key, val in eigen2.decompose_right(h_i, pv).residuals.items():
            acc.add(f"family_{key}", val)
        for key, val in eigen2.matrix_form_check(h_i, (pv, pw)).items():
            acc.add(f"matrix_form_family_{key}", val)
    return acc.checks(tol_solve)


def suite_spin(samples, rng, tol):
    acc = _Acc()
    expected = {
        ("psi_plus", "x"): "-0.5k", ("psi_plus", "y"): "-0.5kl", ("psi_plus", "z"): "0.5",
        ("psi_minus", "x"): "0.5k", ("psi_minus", "y"): "-0.5kl", ("psi_minus", "z"): "-0.5",
    }
    for (state, axis), lam in expected.items():
        psi = spin.PSI_PLUS if state == "psi_plus" else spin.PSI_MINUS
        lam = parse(lam)
        acc.add("spin_eigenvalues", fro(spin.apply_L(axis, psi) - vec_scale_right(psi, lam)))
    psi = np.array(spin.PSI_PLUS)
    lhs = 4 * spin.apply_L("x", spin.apply_L("y", psi)) - 4 * spin.apply_L("y", spin.apply_L("x", psi))
    acc.add("commutator", fro(lhs - 2 * vec_scale_right(psi, spin.ELL)))
    for theta in np.linspace(0.0, 2 * math.pi, 64, endpoint=False):
        phi = spin.phase_state(theta)
        e2 = unit_complex(spin.ELL, 2 * theta)
        targets = {"x": -0.5 * mul(basis("k"), e2), "y": -0.5 * mul(basis("kl"), e2), "z": real(0.5)}
        for axis, lam in targets.items():
            acc.add("phase_family", fro(spin.apply_L(axis, phi) - vec_scale_right(phi, lam)))
    # self-adjointness of L_alpha for the projected inner product on random spinors
    for _ in range(min(samples, 1000)):
        a, b = _oct(rng, 2), _oct(rng, 2)
        for axis in "xyz":
            d = spin.spin_inner(a, spin.apply_L(axis, b)) - spin.spin_inner(spin.apply_L(axis, a), b)
            acc.add("self_adjoint", norm(d))
    return acc.checks(tol)


def _jl_pairs():
    h_i = Hermitian2Params(1, 1, parse("-i"))
    (v, lv), (w, lw) = eigen2.right_family(1.0, 1.0, math.pi / 2)
    return h_i, ((v, lv), (w, lw))


def suite_eigen3(samples, rng, tol):
    acc = _Acc()
    for n in _chunks(samples):
        v = _oct(rng, n, 3)
        lam = _oct(rng, n)
        acc.add("app_identity", _max(eigen3.app_residual(v, lam)))
    h_i, pairs = _jl_pairs()
    for block in eigen3.BLOCKS:
        h3 = eigen3.embed2(h_i, 5.0, block)
        for v2, lam in pairs:
            v3 = eigen3.lift_vector(v2, block)
            res, _ = eigen3.char3_residual(h3, v3, lam, pivot=True)
            acc.add("char3_embedded", norm(res))
            acc.add("embedded_pair", fro(matvec(h3.matrix(), v3) - vec_scale_right(v3, lam)))
    diag = Hermitian3Params(1, 2, 3, np.zeros(8), np.zeros(8), np.zeros(8))
    found = eigen3.eigensearch(diag, eigen3.SearchConfig(restarts=20, seed=int(rng.integers(2**31))))
    errs = [float(norm(p.lam - real(round(float(p.lam[0]))))) for p in found]
    recovered = sorted(round(float(p.lam[0])) for p in found) == [1, 2, 3]
    acc.add("diag_recovery", max(errs) if recovered else 1.0)
    h3 = eigen3.embed2(h_i, 5.0, "12")
    warm = [(eigen3.lift_vector(v2, "12"), lam) for v2, lam in pairs]
    cfg = eigen3.SearchConfig(restarts=5, seed=int(rng.integers(2**31)), constrain_imaginary=True, min_imag=0.3)
    certified = list(eigen3.eigensearch(h3, cfg, starts=warm))
    acc.add("search_certified_found", 0.0 if certified else 1.0)
    for pair in certified:
        acc.add("char3_certified", pair.certificates["char3"])
        acc.add("rayleigh3_agreement", norm(eigen3.rayleigh3(h3, pair.v) - pair.lam))
        rl = eigen3.re_lambda(h3, pair.v) if float(norm(pair.v[0])) > 1e-6 else None
        if rl is not None:
            acc.add("re_lambda_agreement", abs(rl.value - float(pair.lam[0])))
        acc.add("im_lambda_agreement", norm(im(pair.lam) - eigen3.im_lambda(h3, pair.v)))
    acc.add("search_in_family", max(
        max(abs(float(norm(p.lam - real(1.0))) - 1.0), abs(float(dot(p.lam, h3.a)))) for p in certified
    ) if certified else 1.0)
    return acc.checks(max(tol, 1e-9), {"app_identity": tol, "char3_embedded": 1e-10, "char3_certified": 1e-10})


def suite_appendix(samples, rng, tol):
    acc = _Acc()
    for dim in (2, 3):
        for n in _chunks(samples):
            u, v, w = (_oct(rng, n, dim) for _ in range(3))
            lam = _oct(rng, n)
            tag = f"_n{dim}"
            acc.add("master" + tag, _max(identities.vector_associator(w, v, v)))
            acc.add("cube" + tag, _max(identities.vector_associator(v, v, v)))
            acc.add("lemma_polarized" + tag, _max(identities.lemma_polarized(u, v, w)))
            acc.add("lemma_special" + tag, _max(identities.lemma_polarized(v, v, w)))
            six = identities.six_term(u, v, w)
            acc.add("six" + tag, _max(six))
            acc.add("scalar_vvv" + tag, _max(identities.scalar_vector_associator(lam, v, v)))
            acc.add("scalar_real" + tag, _max(identities.scalar_vector_associator(real(1.0), v, w)))
            acc.add("hermitian_conjugate" + tag, _max(identities.hermitian_conjugate_residual(v, lam)))
            acc.add("trace_identity" + tag, _max(identities.trace_identity_residual(v)))
            if dim == 2:
                three = identities.three_psis_residual(v)
                acc.add("three_psis", _max(three))
                acc.add("three_psis_vs_cube", _max(three - identities.vector_associator(v, v, v)))
                acc.add("three_psis_trace_path", _max(three - identities.three_psis_trace_path(v)))
                pol = identities.three_psis_polarized_residual(u, v, w)
                acc.add("three_psis_polarized", _max(pol))
                acc.add("six_routes_agree", _max(pol - six))
    return acc.checks(tol)


_RUNNERS = {
    "core": suite_core,
    "eigen2": suite_eigen2,
    "spin": suite_spin,
    "eigen3": suite_eigen3,
    "appendix": suite_appendix,
}


def run_suite(suite, samples=1000, seed=42, tol=None):
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    tol = identity_tolerance() if tol is None else tol
    checks = _RUNNERS[suite](samples, _rng(seed, suite), tol)
    return VerificationReport(suite, samples, seed, tol, checks)


def run(suite="all", samples=1000, seed=42, tol=None):
    names = SUITES if suite == "all" else (suite,)
    return [run_suite(name, samples, seed, tol) for name in names]
