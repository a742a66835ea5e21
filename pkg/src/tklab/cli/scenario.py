"""Scenario files: validation and dispatch to engine operations."""
from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass
from pathlib import Path

from .. import __version__
from ..blaschke import is_automorphism
from ..errors import ParseError, ValidationError
from ..kernels import (
    annihilates,
    apply_composition,
    certify_minimal_model,
    composition_image,
    hitt_decomposition,
    minimal_kernel_of_composed,
    minimal_model_containing_composition,
    minimal_model_weighted_post,
    minimal_model_weighted_pre,
    model_branch,
    subspace_relations,
    toeplitz_kernel,
    Subspace,
)
from ..oracle import OracleConfig
from ..ratfun import DEFAULT_TOL
from ..symbols import winding_number
from .serialize import (
    blaschke_record,
    canonical_json,
    function_record,
    parse_json,
    read_blaschke,
    read_h2,
    read_int,
    read_symbol,
    symbol_record,
)
from .suites import RunConfig, Trial, _oracle_agreement, get_suite, run_suite

KINDS = ("kernel", "compose", "minimalModel", "weightedPre", "weightedPost", "verify", "hitt", "oracleCrossCheck")

_TOL_KEYS = {"rank": "rank", "membership": "membership", "rootMatch": "root_match", "discMargin": "disc_margin"}


@dataclass(frozen=True)
class Overrides:
    """Command-line values that take precedence over scenario tolerances."""

    tol_rank: float | None = None
    tol_angle: float | None = None
    truncation: int | None = None
    seed: int | None = None
    trials: int | None = None


def _number(x, path: str, positive: bool = True) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValidationError(path, "expected a number")
    if positive and not x > 0:
        raise ValidationError(path, "must be positive")
    return float(x)


def build_config(tolerances: dict | None, ov: Overrides) -> RunConfig:
    tolerances = tolerances or {}
    if not isinstance(tolerances, dict):
        raise ValidationError("tolerances", "expected an object")
    changes, angle, trunc = {}, None, None
    for key, value in tolerances.items():
        path = f"tolerances.{key}"
        if key in _TOL_KEYS:
            changes[_TOL_KEYS[key]] = _number(value, path)
        elif key == "angle":
            angle = _number(value, path)
        elif key == "truncation":
            trunc = read_int(value, path, 64)
        else:
            raise ValidationError(path, "unknown tolerance")
    if ov.tol_rank is not None:
        changes["rank"] = ov.tol_rank
    angle = ov.tol_angle if ov.tol_angle is not None else angle
    trunc = ov.truncation if ov.truncation is not None else trunc
    tol = DEFAULT_TOL.replace(**changes)
    oracle = OracleConfig()
    kw = {}
    if angle is not None:
        kw["angle_tol"] = angle
    if trunc is not None:
        kw["truncation"] = trunc
        kw["fft_size"] = max(oracle.fft_size, 1 << (4 * trunc - 1).bit_length())
    try:
        oracle = OracleConfig(**kw)
    except ValueError as exc:
        raise ValidationError("tolerances", str(exc)) from exc
    return RunConfig(tol, oracle)


def fingerprint(cfg: RunConfig) -> str:
    blob = canonical_json({"tol": asdict(cfg.tol), "oracle": asdict(cfg.oracle)})
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def make_report(echo: dict, results: list, cfg: RunConfig, inconsistent: bool = False) -> dict:
    failed = sum(not r["passed"] for r in results)
    return {
        "scenario": echo,
        "results": results,
        "summary": {"checks": len(results), "passed": len(results) - failed, "failed": failed,
                    "inconsistent": inconsistent},
        "versions": {"engine": __version__, "config": fingerprint(cfg)},
    }


def exit_code(report: dict) -> int:
    if report["summary"]["inconsistent"]:
        return 3
    return 1 if report["summary"]["failed"] else 0


def _results(trial: Trial) -> list:
    return [{"check": c, "passed": p, "details": d} for c, p, d in trial.checks]


# ---------------------------------------------------------------------------
# Kinds
# ---------------------------------------------------------------------------


def _kernel(inputs, cfg: RunConfig) -> Trial:
    s = read_symbol(_need(inputs, "symbol"), "inputs.symbol", cfg.tol)
    kappa = winding_number(s)
    k = toeplitz_kernel(s)
    t = Trial()
    t.check("dimension-law", k.dim == max(-kappa, 0), dim=k.dim, winding=kappa,
            basis=[function_record(f) for f in k.basis])
    t.check("annihilation", all(annihilates(s, f) for f in k.basis))
    return t


def _compose(inputs, cfg: RunConfig) -> Trial:
    F = read_symbol(_need(inputs, "F"), "inputs.F", cfg.tol)
    psi = read_blaschke(_need(inputs, "psi"), "inputs.psi", cfg.tol)
    H = minimal_kernel_of_composed(F, psi)
    image = apply_composition(toeplitz_kernel(F), psi)
    big = toeplitz_kernel(H)
    rel = subspace_relations(image, big)
    t = Trial()
    t.check("containment", rel.included, symbol=symbol_record(H), dims=[image.dim, big.dim])
    t.check("dichotomy", rel.equal == is_automorphism(psi), equal=rel.equal, automorphism=is_automorphism(psi))
    return t


def _model(inputs, cfg: RunConfig, mode: str) -> Trial:
    theta = read_blaschke(_need(inputs, "theta"), "inputs.theta", cfg.tol)
    psi = read_blaschke(_need(inputs, "psi"), "inputs.psi", cfg.tol)
    if theta.degree < 1:
        raise ValidationError("inputs.theta.zeros", "theta must have at least one zero")
    u = None
    if mode == "plain":
        v = minimal_model_containing_composition(theta, psi)
        branch = model_branch(theta, psi)
    else:
        u = read_blaschke(_need(inputs, "u"), "inputs.u", cfg.tol)
        if mode == "pre":
            v = minimal_model_weighted_pre(u, theta, psi)
            branch = model_branch(theta, psi, u.vanishes_at_zero())
        else:
            v = minimal_model_weighted_post(u, theta, psi)
            branch = model_branch(theta, psi)
    rep = certify_minimal_model(composition_image(theta, psi, u, mode), v)
    t = Trial()
    t.check("containment", rep.contains, v=blaschke_record(v), branch=branch)
    t.check("minimality", rep.minimal, divisorContains=list(rep.divisor_contains))
    return t


def _hitt(inputs, cfg: RunConfig) -> Trial:
    raw = _need(inputs, "basis")
    if not isinstance(raw, list) or not raw:
        raise ValidationError("inputs.basis", "expected a nonempty list of functions")
    fs = [read_h2(f, f"inputs.basis[{i}]", cfg.tol) for i, f in enumerate(raw)]
    h = hitt_decomposition(Subspace(fs, cfg.tol), cfg.oracle)
    t = Trial()
    defect = h.isometry_defect
    t.check("decomposition", h.K is not None and defect <= 1e-9, u=function_record(h.u), isometryDefect=defect,
            K=[function_record(f) for f in h.functions])
    return t


def _oracle(inputs, cfg: RunConfig) -> Trial:
    s = read_symbol(_need(inputs, "symbol"), "inputs.symbol", cfg.tol)
    k = toeplitz_kernel(s)
    t = Trial()
    t.check("dimension-law", k.dim == max(-winding_number(s), 0), dim=k.dim)
    _oracle_agreement(t, s, k, cfg)
    return t


def _need(inputs, key: str):
    if not isinstance(inputs, dict):
        raise ValidationError("inputs", "expected an object")
    if key not in inputs:
        raise ValidationError(f"inputs.{key}", "missing field")
    return inputs[key]


def run_scenario_record(rec, ov: Overrides = Overrides()) -> dict:
    """Validate a parsed scenario and return its report."""
    if not isinstance(rec, dict):
        raise ValidationError("$", "scenario must be an object")
    kind = rec.get("kind")
    if kind not in KINDS:
        raise ValidationError("kind", f"expected one of {', '.join(KINDS)}")
    cfg = build_config(rec.get("tolerances"), ov)
    inputs = rec.get("inputs", {})
    seed = ov.seed if ov.seed is not None else read_int(rec.get("seed", 0), "seed", 0)
    trials = ov.trials if ov.trials is not None else read_int(rec.get("trials", 1), "trials", 1)
    echo = {**rec, "seed": seed, "trials": trials}
    if kind == "verify":
        name = inputs.get("suite", rec.get("suite")) if isinstance(inputs, dict) else rec.get("suite")
        if not isinstance(name, str):
            raise ValidationError("inputs.suite", "expected a suite name")
        get_suite(name)
        out = run_suite(name, seed, trials, cfg)
        return make_report(echo, out.results, cfg, out.inconsistent)
    handlers = {
        "kernel": lambda: _kernel(inputs, cfg),
        "compose": lambda: _compose(inputs, cfg),
        "minimalModel": lambda: _model(inputs, cfg, "plain"),
        "weightedPre": lambda: _model(inputs, cfg, "pre"),
        "weightedPost": lambda: _model(inputs, cfg, "post"),
        "hitt": lambda: _hitt(inputs, cfg),
        "oracleCrossCheck": lambda: _oracle(inputs, cfg),
    }
    return make_report(echo, _results(handlers[kind]()), cfg)


def load_scenario(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return parse_json(text, str(path))
