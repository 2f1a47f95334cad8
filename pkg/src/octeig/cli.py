"""octeig command line.

Every command writes JSON lines to stdout: one record per result or check,
fields in a fixed order.  Exit status is 0 when every check passes, 1 when a
check fails (or a matrix falls outside a construction's domain) and 2 for
usage and input errors.
"""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from . import eigen2, eigen3, spin, verify
from .errors import OctonionError, ParseError
from .io import load, parse_input
from .octonion import DEFAULT_TOL, associator, format_octonion, im, mul, parse, real

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _oct_out(a):
    return [float(x) for x in np.asarray(a, dtype=float)]


def _vec_out(v):
    return [_oct_out(x) for x in v]


def _emit(record):
    click.echo(json.dumps(record))


def _tol():
    try:
        return verify.identity_tolerance()
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _octonion_arg(ctx, param, value):
    if value is None:
        return None
    try:
        return parse(value)
    except ParseError as exc:
        raise click.BadParameter(str(exc)) from exc


def _document(path, kind):
    try:
        doc = parse_input(sys.stdin.buffer.read()) if path == "-" else load(path)
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except ParseError as exc:
        raise click.UsageError(f"{path}: {exc}") from exc
    if doc.kind != kind:
        raise click.UsageError(f"{path}: expected a {kind} document, got {doc.kind}")
    return doc.payload


def _finish(ok):
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


def _domain_error(exc):
    _emit({"record": "error", "error": type(exc).__name__, "message": str(exc), "pass": False})
    sys.exit(EXIT_FAIL)


@click.group()
def main():
    """Eigenproblems and identities for octonionic Hermitian matrices."""


@main.command("mul")
@click.argument("a", callback=_octonion_arg)
@click.argument("b", callback=_octonion_arg)
def mul_cmd(a, b):
    """Product of two octonions, e.g. octeig mul 1+j k."""
    ab = mul(a, b)
    _emit({"record": "result", "op": "mul", "value": _oct_out(ab), "text": format_octonion(ab)})


@main.command("associator")
@click.argument("a", callback=_octonion_arg)
@click.argument("b", callback=_octonion_arg)
@click.argument("c", callback=_octonion_arg)
def associator_cmd(a, b, c):
    """(ab)c - a(bc)."""
    r = associator(a, b, c)
    _emit({"record": "result", "op": "associator", "value": _oct_out(r), "text": format_octonion(r)})


def _default_lambda(h):
    cls = eigen2.classify_in_A(h)
    if not cls.in_A:
        return None
    for q in range(1, 8):
        u = np.eye(8)[q] - np.dot(np.eye(8)[q], cls.r_hat) * cls.r_hat
        u[0] = 0.0
        if np.linalg.norm(u) > 0.5:
            return real(cls.p) + cls.q * u / np.linalg.norm(u)
    return None


def _pair_record(pair, tol):
    return {"record": "pair", "side": pair.side.value, "vector": _vec_out(pair.v),
            "lambda": _oct_out(pair.lam), "lambda_text": format_octonion(pair.lam),
            "residual": pair.residual, "tolerance": tol, "pass": pair.residual <= tol}


def _pair2(h, side, lam, seed):
    if side == "left":
        return eigen2.left_pair_from_V(h, eigen2.sample_V(seed))
    if lam is None:
        lam = _default_lambda(h)
        if lam is None:
            eigen2.check_right_lambda(h, real(0.0))  # raises NotInA with the diagnostic
    return eigen2.right_pair_for_lambda(h, lam)


@main.command("eigen2")
@click.argument("path", type=click.Path(allow_dash=True))
@click.option("--side", type=click.Choice(["left", "right"]), default="right", show_default=True)
@click.option("--lambda", "lam", callback=_octonion_arg, help="Right eigenvalue, e.g. 1+kl.")
@click.option("--seed", type=int, default=42, show_default=True, help="Seed for the left eigenvector frame.")
def eigen2_cmd(path, side, lam, seed):
    """Non-real eigenpair of a 2x2 Hermitian matrix."""
    h = _document(path, "hermitian2")
    tol = max(_tol(), DEFAULT_TOL.eps_identity)
    try:
        pair = _pair2(h, side, lam, seed)
    except OctonionError as exc:
        _domain_error(exc)
    rec = _pair_record(pair, tol)
    _emit(rec)
    _finish(rec["pass"])


@main.command("decompose")
@click.argument("path", type=click.Path(allow_dash=True))
@click.option("--side", type=click.Choice(["left", "right"]), default="right", show_default=True)
@click.option("--lambda", "lam", callback=_octonion_arg)
@click.option("--seed", type=int, default=42, show_default=True)
def decompose_cmd(path, side, lam, seed):
    """Rebuild A from an eigenpair and its flip."""
    h = _document(path, "hermitian2")
    tol = DEFAULT_TOL.eps_solve
    try:
        if side == "right":
            dec = eigen2.decompose_right(h, _pair2(h, side, lam, seed))
        else:
            # x = 1 keeps [r, x, y] = 0, so the flip construction applies
            y = np.random.default_rng(seed).standard_normal(8)
            y[0] = 0.0
            v = np.stack([real(1.0), y / np.linalg.norm(y)]) / math.sqrt(2.0)
            pair = eigen2.left_pair_from_V(h, v)
            dec = eigen2.decompose_left_quaternionic(h, pair)
    except OctonionError as exc:
        _domain_error(exc)
    ok = True
    for name, res in dec.residuals.items():
        _emit({"record": "check", "name": name, "residual": res, "tolerance": tol, "pass": res <= tol})
        ok &= res <= tol
    _emit({"record": "decomposition", "lambda_v": _oct_out(dec.lambda_v), "lambda_w": _oct_out(dec.lambda_w),
           "w": _vec_out(dec.w), "witness": dec.witness, "pass": ok})
    _finish(ok)


@main.command("real-eigen2")
@click.argument("path", type=click.Path(allow_dash=True))
def real_eigen2_cmd(path):
    """Real eigenpairs with the decomposition and matrix-form checks."""
    h = _document(path, "hermitian2")
    tol = 1e-10
    pairs = eigen2.real_eigen2(h)
    ok = True
    for pair in pairs:
        rec = _pair_record(pair, tol)
        _emit(rec)
        ok &= rec["pass"]
    checks = {**eigen2.real_decomposition(h, pairs),
              **{f"matrix_form_{k}": v for k, v in eigen2.matrix_form_check(h, pairs).items()}}
    for name, res in checks.items():
        _emit({"record": "check", "name": name, "residual": res, "tolerance": tol, "pass": res <= tol})
        ok &= res <= tol
    _finish(ok)


@main.command("spin")
@click.option("--theta", type=float, multiple=True, help="Phase angles for Psi+ exp(l theta); repeatable.")
def spin_cmd(theta):
    """Eigenvalue table of L_x, L_y, L_z."""
    tol = _tol()
    ok = True
    for row in spin.eigen_table(theta):
        passed = row["residual"] <= tol
        ok &= passed
        _emit({"record": "eigenvalue", "state": row["state"], "axis": row["axis"],
               "lambda": _oct_out(row["lambda"]), "lambda_text": format_octonion(row["lambda"]),
               "residual": row["residual"], "tolerance": tol, "pass": passed})
    _finish(ok)


@main.command("eigen3")
@click.argument("path", type=click.Path(allow_dash=True))
@click.option("--nonreal", is_flag=True, help="Only look for eigenvalues with |Im lambda| >= --min-imag.")
@click.option("--min-imag", type=float, default=0.1, show_default=True)
@click.option("--restarts", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
def eigen3_cmd(path, nonreal, min_imag, restarts, tol, seed):
    """Multi-start search for right eigenpairs of a 3x3 Hermitian matrix."""
    h = _document(path, "hermitian3")
    if not tol > 0:
        raise click.BadParameter("must be positive", param_hint="--tol")
    cfg = eigen3.SearchConfig(restarts=restarts, tol=tol, seed=seed,
                              constrain_imaginary=nonreal, min_imag=min_imag)
    result = eigen3.eigensearch(h, cfg)
    for pair in result:
        _emit({"record": "pair", "vector": _vec_out(pair.v), "lambda": _oct_out(pair.lam),
               "lambda_text": format_octonion(pair.lam),
               "imag_norm": float(np.linalg.norm(im(pair.lam))),
               "residual": pair.residual, "char3": pair.certificates.get("char3"),
               "rayleigh": pair.certificates["rayleigh"], "pass": True})
    _emit({"record": "summary", "restarts": result.restarts, "seed": seed, "tol": tol,
           "found": len(result), "converged": result.converged, "rejected": result.rejected,
           "best_residual": result.best_residual if math.isfinite(result.best_residual) else None,
           "pass": len(result) > 0})
    _finish(len(result) > 0)


@main.command("verify")
@click.option("--suite", type=click.Choice(["all", *verify.SUITES]), default="all", show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
def verify_cmd(suite, samples, seed):
    """Run the seeded randomized verification suites."""
    reports = verify.run(suite, samples, seed, _tol())
    ok = True
    for report in reports:
        for line in report.lines():
            click.echo(line)
        ok &= report.passed
    _finish(ok)


def run(argv=None):
    """Run the CLI in-process and return its exit code."""
    try:
        main.main(args=argv, prog_name="octeig", standalone_mode=True)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else (0 if code is None else 1)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
