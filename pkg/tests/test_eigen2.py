import math

import numpy as np
import pytest

from octeig import eigen2, errors
from octeig.eigen2 import Side
from octeig.eigen3 import SearchConfig, eigensearch
from octeig.linalg import Hermitian2Params, fro, inner, matrix, vec_norm, vec_scale_right, vector
from octeig.octonion import associator, basis, conj, dot, mul, norm, parse, real, unit_complex
from oracles import left_scale, matvec as oracle_matvec, right_scale

H_I = Hermitian2Params(1, 1, parse("-i"))
SQ2 = math.sqrt(2.0)


def random_A(rng):
    p, q = rng.uniform(-2, 2), rng.uniform(0.2, 2)
    r = rng.standard_normal(8)
    r[0] = 0
    r /= np.linalg.norm(r)
    return Hermitian2Params(p, p, -q * r), p, q, r


def admissible(rng, p, q, r):
    u = rng.standard_normal(8)
    u[0] = 0
    u -= np.dot(u, r) * r
    return real(p) + q * u / np.linalg.norm(u)


def pair(h, v, lam, side=Side.RIGHT):
    return eigen2.EigenPair2(v, lam, side, eigen2.eigen_residual(h, v, lam, side))


# -- classification ---------------------------------------------------------


def test_classify():
    c = eigen2.classify_in_A(H_I)
    assert c.in_A and c.p == 1 and c.q == 1 and np.array_equal(c.r_hat, parse("i"))
    assert not eigen2.classify_in_A(Hermitian2Params(1, 2, parse("-i"))).in_A
    assert not eigen2.classify_in_A(Hermitian2Params(1, 1, np.zeros(8))).in_A
    assert not eigen2.classify_in_A(Hermitian2Params(1, 1, parse("0.5-i"))).in_A


def test_not_in_A_diagnostic():
    with pytest.raises(errors.NotInA, match="p = m and Re\\(a\\) = 0"):
        eigen2.left_pair_from_V(Hermitian2Params(1, 2, parse("-i")), vector("1", "k"))


def test_sample_V(rng):
    for _ in range(100):
        x, y = eigen2.sample_V(rng)
        assert abs(dot(x, x) - dot(y, y)) <= 1e-12 and abs(dot(x, y)) <= 1e-12
    assert eigen2.in_V(vector("1", "k") / SQ2)
    assert eigen2.in_V(vector("j", "l") / SQ2)
    assert not eigen2.in_V(vector("1", "2k"))


# -- left pairs -------------------------------------------------------------


def test_left_example_left_pairs():
    p = eigen2.left_pair_from_V(H_I, vector("1", "k") / SQ2)
    assert np.allclose(p.lam, parse("1+j"), atol=1e-15) and p.residual <= 1e-12
    w = eigen2.left_pair_from_V(H_I, vector("k", "1") / SQ2)
    assert np.allclose(w.lam, parse("1-j"), atol=1e-15) and w.residual <= 1e-12
    # independent check with the doubling oracle
    v = vector("1", "k")
    assert np.allclose(oracle_matvec(H_I.matrix(), v), left_scale(parse("1+j"), v), atol=1e-15)


def test_left_multiplication_closure(rng):
    v = vector("1", "k") / SQ2
    for _ in range(20):
        o = rng.uniform(-1, 1, 8)
        w = np.stack([mul(o, v[0]), mul(o, v[1])]) / norm(o)
        assert eigen2.in_V(w)
        assert eigen2.left_pair_from_V(H_I, w).residual <= 1e-12


def test_left_pairs_random(rng):
    for _ in range(200):
        h, p, q, r = random_A(rng)
        lp = eigen2.left_pair_from_V(h, eigen2.sample_V(rng))
        assert lp.residual <= 1e-12
        assert abs(norm(lp.lam - real(p)) - q) <= 1e-12
        assert abs(dot(lp.lam, r)) <= 1e-12


def test_left_pair_rejects_non_V():
    with pytest.raises(errors.NotInV):
        eigen2.left_pair_from_V(H_I, vector("1", "2k"))
    with pytest.raises(errors.NotInV):
        eigen2.left_pair_from_V(H_I, vector("1", "1"))


# -- right pairs ------------------------------------------------------------


def test_jl_right_pair():
    rp = eigen2.right_pair_for_lambda(H_I, parse("1+kl"))
    assert rp.residual <= 1e-12
    assert abs(vec_norm(rp.v) - 1) <= 1e-12
    # the frame picks x = j, giving exactly (j, l)/sqrt2
    assert np.allclose(rp.v, vector("j", "l") / SQ2, atol=1e-15)
    v = vector("j", "l")
    assert np.allclose(oracle_matvec(H_I.matrix(), v), right_scale(v, parse("1+kl")), atol=1e-15)


@pytest.mark.parametrize("lam, constraint", [
    ("1+2kl", "|lambda - p| = |a|"),
    ("1+0.6i+0.8kl", "lambda . a = 0"),
    ("2", "Im(lambda) != 0"),
])
def test_inadmissible_lambda(lam, constraint):
    with pytest.raises(errors.InadmissibleLambda) as info:
        eigen2.right_pair_for_lambda(H_I, parse(lam))
    assert info.value.constraint == constraint


def test_right_pairs_random(rng):
    for _ in range(200):
        h, p, q, r = random_A(rng)
        rp = eigen2.right_pair_for_lambda(h, admissible(rng, p, q, r))
        assert rp.residual <= 1e-12
        x, y = rp.v
        assert x[0] == 0 and abs(y[0]) <= 1e-12
        cons = eigen2.char2_constraints(h, rp.v, rp.lam)
        assert max(cons.values()) <= 1e-10
        c2 = eigen2.char2_residual(h, rp.v, rp.lam)
        assert c2.size <= 1e-10 and c2.deviation <= 1e-10


@pytest.mark.parametrize("theta", np.linspace(0, 2 * math.pi, 13))
def test_right_family_sign(theta):
    (v, lv), (w, lw) = eigen2.right_family(1.0, 1.0, theta)
    s = unit_complex(basis("kl"), theta)
    assert np.allclose(lv, real(1) + s) and np.allclose(lw, real(1) - s)
    assert eigen2.eigen_residual(H_I, v, lv) <= 1e-12
    assert eigen2.eigen_residual(H_I, w, lw) <= 1e-12
    # the printed conjugate only works where s is real or s = +-kl
    if abs(math.sin(theta)) > 0.1 and abs(math.cos(theta)) > 0.1:
        assert eigen2.eigen_residual(H_I, v, real(1) + conj(s)) > 0.1
    assert max(eigen2.char2_constraints(H_I, v, lv).values()) <= 1e-12


def test_right_family_general_p_q():
    (v, lv), _ = eigen2.right_family(-0.5, 2.5, 0.4)
    h = Hermitian2Params(-0.5, -0.5, -2.5 * basis("i"))
    assert eigen2.eigen_residual(h, v, lv) <= 1e-12


def test_verify_pair():
    v = vector("j", "l") / SQ2
    assert eigen2.verify_pair(H_I, pair(H_I, v, parse("1+kl"))) <= 1e-12
    stale = eigen2.EigenPair2(v, parse("1.1+kl"), Side.RIGHT, 0.0)
    assert eigen2.verify_pair(H_I, stale) >= 0.05


# -- characteristic equation ------------------------------------------------


def test_char2_jl():
    v, lam = vector("j", "l"), parse("1+kl")
    assert eigen2.char2_residual(H_I, v, lam).size <= 1e-12
    assert max(eigen2.char2_constraints(H_I, v, lam).values()) <= 1e-12
    # [conj(a), x, y] = [i, j, l] = 2kl, and (2kl)(kl) = -2 = lam^2 - 2 lam
    assert np.array_equal(associator(parse("i"), basis("j"), basis("l")), parse("2kl"))
    assert np.array_equal(mul(parse("2kl"), parse("kl")), real(-2))
    assert np.array_equal(mul(lam, lam) - 2 * lam, real(-2))


def test_char2_real_pair_quaternionic(rng):
    h = Hermitian2Params(0.3, -1.2, parse("0.2+0.5i-0.7j+0.1k"))
    for rp in eigen2.real_eigen2(h):
        x, y = rp.v
        assert norm(associator(conj(h.a), x, y)) <= 1e-15
        assert eigen2.char2_residual(h, rp.v, rp.lam).size <= 1e-12
        cons = eigen2.char2_constraints(h, rp.v, rp.lam)
        assert cons["x_dot"] == 0 and cons["quaternionic"] == 0 and cons["char_real"] <= 1e-12


def test_char2_non_eigen(rng):
    v = rng.uniform(-1, 1, (2, 8))
    assert eigen2.char2_residual(H_I, v, parse("1+0.5j")).size > 1e-3
    with pytest.raises(errors.ZeroComponent):
        eigen2.char2_residual(H_I, vector("1", "0"), parse("1+j"))


def test_dieudonne():
    assert eigen2.dieudonne_residual(H_I, parse("1+kl")) <= 1e-12
    assert eigen2.dieudonne_residual(H_I, parse("1+2kl")) > 1
    assert eigen2.dieudonne_residual(H_I, real(2.0)) <= 1e-12
    with pytest.raises(errors.PreconditionViolated):
        eigen2.dieudonne_residual(Hermitian2Params(1, 2, parse("i")), real(2.0))
    with pytest.raises(errors.PreconditionViolated):
        eigen2.dieudonne_residual(H_I, parse("1+i"))


# -- decompositions ---------------------------------------------------------


def test_flip():
    v = vector("j", "l")
    assert np.array_equal(eigen2.flip(v), vector("l", "j"))
    assert np.array_equal(eigen2.flip(eigen2.flip(v)), v)
    u = eigen2.sample_V(3)
    assert norm(inner(u, eigen2.flip(u))) <= 1e-12


def test_decompose_right_jl():
    v = vector("j", "l") / SQ2
    dec = eigen2.decompose_right(H_I, pair(H_I, v, parse("1+kl")))
    assert np.allclose(dec.lambda_w, parse("1-kl"), atol=1e-15)
    assert max(dec.residuals.values()) <= 1e-12
    assert dec.witness > 0.5


def test_decompose_right_explicit_coefficients():
    # A = (1+kl)/2 (j,l)(j,l)^ + (1-kl)/2 (l,j)(l,j)^, scalars on the left
    from octeig.linalg import mat_scale_left, outer

    v, w = vector("j", "l"), vector("l", "j")
    rec = mat_scale_left(parse("0.5+0.5kl"), outer(v, v)) + mat_scale_left(parse("0.5-0.5kl"), outer(w, w))
    assert fro(rec - matrix([["1", "-i"], ["i", "1"]])) <= 1e-12


def test_decompose_right_rejects_left_pair():
    lp = eigen2.left_pair_from_V(H_I, vector("1", "k") / SQ2)
    with pytest.raises(errors.InvalidPair):
        eigen2.decompose_right(H_I, lp)


@pytest.mark.parametrize("theta", np.linspace(0, 2 * math.pi, 9))
def test_decompose_right_family(theta):
    (v, lv), (w, lw) = eigen2.right_family(1.0, 1.0, theta)
    dec = eigen2.decompose_right(H_I, pair(H_I, v, lv))
    assert max(dec.residuals.values()) <= 1e-12
    assert np.allclose(dec.lambda_w, lw, atol=1e-12)


def test_decompose_left_left_example():
    lp = eigen2.left_pair_from_V(H_I, vector("1", "k") / SQ2)
    dec = eigen2.decompose_left_quaternionic(H_I, lp)
    assert dec.residuals["decomp"] <= 1e-12
    assert np.allclose(dec.lambda_w, parse("1-j"), atol=1e-15)


def test_decompose_left_obstruction(rng):
    v = vector("j", "l") / SQ2
    assert norm(associator(parse("i"), basis("j"), basis("l"))) > 0
    lp = eigen2.left_pair_from_V(H_I, v)
    with pytest.raises(errors.NotQuaternionic):
        eigen2.decompose_left_quaternionic(H_I, lp)


def test_decompose_left_diagonal():
    h = Hermitian2Params(2, 3, np.zeros(8))
    e1, e2 = vector("1", "0"), vector("0", "1")
    p1, p2 = pair(h, e1, real(2), Side.LEFT), pair(h, e2, real(3), Side.LEFT)
    assert eigen2.decompose_left_quaternionic(h, p1, other=p2).residuals["decomp"] == 0


def test_real_eigen2():
    lams = [float(p.lam[0]) for p in eigen2.real_eigen2(H_I)]
    assert lams == pytest.approx([0, 2], abs=1e-15)
    pairs = eigen2.real_eigen2(Hermitian2Params(2, 3, np.zeros(8)))
    assert [float(p.lam[0]) for p in pairs] == [2, 3]
    assert np.array_equal(pairs[0].v, vector("1", "0"))


def test_real_eigen2_random(rng):
    for _ in range(100):
        h = Hermitian2Params(*rng.uniform(-2, 2, 2), rng.uniform(-1, 1, 8))
        pairs = eigen2.real_eigen2(h)
        assert max(p.residual for p in pairs) <= 1e-12
        assert max(eigen2.real_decomposition(h, pairs).values()) <= 1e-12
        assert max(eigen2.matrix_form_check(h, pairs).values()) <= 1e-10


def test_matrix_form_jl_family():
    for theta in np.linspace(0, 2 * math.pi, 8):
        (v, lv), (w, lw) = eigen2.right_family(1.0, 1.0, theta)
        checks = eigen2.matrix_form_check(H_I, (pair(H_I, v, lv), pair(H_I, w, lw)))
        assert max(checks.values()) <= 1e-12


def test_matrix_form_non_orthogonal_columns():
    v = vector("j", "l") / SQ2
    bad = pair(H_I, v, parse("1+kl")), pair(H_I, v, parse("1+kl"))
    checks = eigen2.matrix_form_check(H_I, bad)
    assert checks["unitary"] > 0.5
    assert set(checks) == {"unitary", "eigen", "decomposition", "associativity"}


def test_app_identity(rng):
    for _ in range(100):
        v, lam = rng.uniform(-1, 1, (2, 8)), rng.uniform(-1, 1, 8)
        from octeig.linalg import matvec, outer

        lhs = matvec(outer(vec_scale_right(v, lam), v), v)
        rhs = vec_scale_right(vec_scale_right(v, lam), inner(v, v))
        assert fro(lhs - rhs) <= 1e-12


def test_lambda_from_pair():
    v = vector("j", "l") / SQ2
    assert np.allclose(eigen2.lambda_from_pair(H_I, v), parse("1+kl"), atol=1e-15)
    u = vector("1", "k") / SQ2
    assert np.allclose(eigen2.lambda_from_pair(H_I, u, Side.LEFT), parse("1+j"), atol=1e-15)


def test_necessity_right_side_2x2(rng):
    """Outside A, no right eigenvalue with |Im lambda| >= 0.3 is found."""
    cfg = SearchConfig(restarts=10, seed=5, constrain_imaginary=True, min_imag=0.3)
    for _ in range(10):
        p, m = rng.uniform(-2, 2, 2)
        a = rng.uniform(-1, 1, 8)
        a[0] = 0.7 * np.sign(a[0])
        h = Hermitian2Params(p, m, a)
        assert not eigen2.classify_in_A(h).in_A
        result = eigensearch(h.matrix(), cfg)
        assert len(result) == 0 and result.best_residual > 1e-6


def test_eigensearch_2x2_in_A_finds_family():
    cfg = SearchConfig(restarts=10, seed=5, constrain_imaginary=True, min_imag=0.3)
    result = eigensearch(H_I.matrix(), cfg)
    assert len(result) > 0
    for p in result:
        assert abs(norm(p.lam - real(1)) - 1) <= 1e-8
        assert abs(dot(p.lam, H_I.a)) <= 1e-8
