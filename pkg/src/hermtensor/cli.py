"""Batch CLI over the basis, verification, window, and expansion machinery.

Output is a single JSON object (or CSV rows) per run.  Floats are printed
with 17 significant digits through one shared formatter, so a given config
and seed always produces byte-identical output.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or
config, 3 a non-finite value surfaced in numeric work.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

import numpy as np
from scipy.constants import atomic_mass

from .hermite import PHYSICIST, PROBABILIST, evaluate_basis, hermite_phys, hermite_symbolic
from .mixed6 import (
    SPECIES_FRAME,
    BlockRotation,
    MixedPoint,
    SpeciesPair,
    distribution_invariance,
    equivariance_residual,
    product_distribution,
)
from .quadrature import (
    ExpansionCoefficients,
    NonFiniteIntegrandError,
    WeightSpec,
    expand,
    gauss_hermite_rule,
    ortho_matrix,
)
from .symtensor import SymTensor, canonical_index_tuples, perm_delta, scalar
from .transforms import (
    TO_CENTERED,
    ScalingMap,
    TranslationMap,
    convergence_probe,
    orthogonality_after_translation,
    scaling_admissible,
    temperature_window,
    translated_hermite,
    translation_roundtrip,
)

__all__ = ["main", "run"]

EMPTY_WINDOW_MESSAGE = "EMPTY: collision-term criterion violated (T_i ≥ 4·T_n)"


# --- deterministic serialization ------------------------------------------


def _float_repr(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def emit_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f'{pad}  "{k}": {emit_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [f"{pad}  {emit_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float_repr(obj)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _float_repr(v).strip('"')
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return str(v)


def emit_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    header = list(rows[0].keys())
    lines = [",".join(header)]
    lines += [",".join(_csv_cell(r.get(k)) for k in header) for r in rows]
    return "\n".join(lines) + "\n"


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return emit_json(report) + "\n"
    return emit_csv(report.get("results") or report.get("components") or [{"message": report.get("message", "")}])


# --- small helpers --------------------------------------------------------


def _parse_vector(text: str, length: int = 3) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != length:
        raise ValueError(f"expected {length} comma-separated numbers, got {text!r}")
    return tuple(float(p) for p in parts)


def _check(name: str, value: float, tolerance: float, mode: str = "max") -> dict:
    ok = value >= tolerance if mode == "min" else value <= tolerance
    return {"check": name, "value": float(value), "tolerance": tolerance, "mode": mode, "pass": bool(ok)}


def _coefficient_entry(value: Fraction):
    return int(value) if value.denominator == 1 else str(value)


def _require_order(order: int, max_rank: int):
    if order < 2 * max_rank + 2:
        raise ValueError(f"quadrature order {order} too low for rank {max_rank}; need >= {2 * max_rank + 2}")


# --- commands -------------------------------------------------------------


def cmd_basis(args) -> tuple[dict, int]:
    convention = PHYSICIST if args.convention == "physicist" else PROBABILIST
    config = {
        "rank": args.rank,
        "convention": args.convention,
        "symbolic": bool(args.symbolic),
        "seed": args.seed,
    }
    if args.symbolic:
        if args.point is not None:
            raise ValueError("--symbolic and --point are mutually exclusive")
        if not 0 <= args.rank <= 4:
            raise ValueError("symbolic mode supports ranks 0..4")
        tensor = hermite_symbolic(args.rank, dim=3, convention=convention)[args.rank]
        components = []
        for idx in canonical_index_tuples(args.rank, 3):
            poly = tensor[idx]
            terms = [
                {"exponents": list(e), "coefficient": _coefficient_entry(c)}
                for e, c in poly.terms()
            ]
            components.append({"index": list(idx), "terms": terms})
    else:
        if not 0 <= args.rank <= 6:
            raise ValueError("numeric mode supports ranks 0..6")
        point = _parse_vector(args.point) if args.point is not None else (0.0, 0.0, 0.0)
        config["point"] = list(point)
        tensor = evaluate_basis(args.rank, point, dim=3, convention=convention)[args.rank]
        components = [
            {"index": list(idx), "value": float(tensor[idx])}
            for idx in canonical_index_tuples(args.rank, 3)
        ]
    return {"command": "basis", "config": config, "components": components}, 0


def cmd_window(args) -> tuple[dict, int]:
    window = temperature_window(args.ti, args.tn)
    if window is None:
        message = EMPTY_WINDOW_MESSAGE
    else:
        message = f"({window[0]:g}, {window[1]:g})"
    report = {
        "command": "window",
        "config": {"ti": args.ti, "tn": args.tn, "seed": args.seed},
        "window": list(window) if window is not None else None,
        "message": message,
    }
    return report, 0


def cmd_expand(args) -> tuple[dict, int]:
    if not 0 <= args.max_rank <= 4:
        raise ValueError("max rank must be within 0..4")
    _require_order(args.quad_order, args.max_rank)
    if args.quad_order > 32:
        raise ValueError("quadrature order above 32 leaves no room for the stability probe")
    drift = _parse_vector(args.drift)
    spec = WeightSpec(args.density, args.mass * atomic_mass, args.temperature, drift)
    rule = gauss_hermite_rule(args.quad_order)
    # f0 absorbs the Gaussian normalization so a pure Maxwellian reads a0 = 1
    f0 = args.density * math.pi ** (-1.5)
    coeffs = expand(lambda z: spec.weight_z(z), args.max_rank, rule, f0=f0)
    ranks = []
    for n in range(args.max_rank + 1):
        tensor = coeffs[n]
        ranks.append(
            {
                "rank": n,
                "components": [
                    {"index": list(idx), "value": float(tensor[idx])}
                    for idx in canonical_index_tuples(n, 3)
                ],
            }
        )
    report = {
        "command": "expand",
        "config": {
            "mass_u": args.mass,
            "temperature": args.temperature,
            "drift": list(drift),
            "density": args.density,
            "max_rank": args.max_rank,
            "quad_order": args.quad_order,
            "seed": args.seed,
        },
        "z_drift": [float(c) for c in spec.z_av],
        "f0": f0,
        "admissible": bool(coeffs.admissible),
        "coefficients": ranks,
    }
    return report, 0


def _expected_gram(m_rank: int, n_rank: int, convention) -> np.ndarray:
    rows = canonical_index_tuples(m_rank, 3)
    cols = canonical_index_tuples(n_rank, 3)
    if m_rank != n_rank:
        return np.zeros((len(rows), len(cols)))
    factor = 2.0**n_rank if convention is PHYSICIST else 1.0
    return factor * np.array([[perm_delta(i, j) for j in cols] for i in rows], dtype=np.float64)


def _suite_ortho(args) -> tuple[dict, list[dict]]:
    if not 0 <= args.max_rank <= 4:
        raise ValueError("max rank must be within 0..4")
    _require_order(args.quad_order, args.max_rank)
    rule = gauss_hermite_rule(args.quad_order)
    rows = []
    for name, convention in (("physicist", PHYSICIST), ("probabilist", PROBABILIST)):
        worst = 0.0
        for m in range(args.max_rank + 1):
            for n in range(args.max_rank + 1):
                gram = ortho_matrix(m, n, rule, convention)
                worst = max(worst, float(np.max(np.abs(gram - _expected_gram(m, n, convention)))))
        rows.append(_check(f"{name}-orthogonality", worst, 1e-8))
    config = {"max_rank": args.max_rank, "quad_order": args.quad_order}
    return config, rows


def _suite_translate(args) -> tuple[dict, list[dict]]:
    if not 1 <= args.max_rank <= 5:
        raise ValueError("max rank must be within 1..5")
    rng = np.random.default_rng(args.seed)
    identity_worst = 0.0
    roundtrip_worst = 0.0
    for _ in range(args.maps):
        tmap = TranslationMap(tuple(rng.uniform(-1, 1, 3)), tuple(rng.uniform(-1, 1, 3)))
        z = rng.uniform(-2.0, 2.0, 3)
        direct = hermite_phys(args.max_rank, z - np.asarray(tmap.z00)).values
        for rank in range(args.max_rank + 1):
            got = translated_hermite(rank, tmap, TO_CENTERED, z)
            scale_ = max(1.0, max(abs(v) for v in direct[rank].data))
            diff = max(abs(a - b) for a, b in zip(got.data, direct[rank].data))
            identity_worst = max(identity_worst, diff / scale_)
        roundtrip_worst = max(roundtrip_worst, translation_roundtrip(args.max_rank, tmap, z))
    _require_order(args.quad_order, 3)
    unit = TranslationMap((0.0, 0.0, 0.0), (1.0, 0.0, 0.0))
    rule = gauss_hermite_rule(args.quad_order)
    broken = 0.0
    for n in range(4):
        for m in range(4):
            if n != m:
                gram = orthogonality_after_translation(n, m, unit, rule)
                broken = max(broken, float(np.max(np.abs(gram))))
    rows = [
        _check("binomial-identity", identity_worst, 1e-10),
        _check("roundtrip", roundtrip_worst, 1e-9),
        _check("broken-orthogonality", broken, 1e-3, mode="min"),
    ]
    config = {"max_rank": args.max_rank, "maps": args.maps, "quad_order": args.quad_order}
    return config, rows


def _suite_scale(args) -> tuple[dict, list[dict]]:
    alphas = args.alpha or [0.5, 1.0, 1.3, 1.5, 2.0]
    if args.quad_order > 32:
        raise ValueError("quadrature order above 32 leaves no room for order doubling")
    z0 = _parse_vector(args.z0)
    rule = gauss_hermite_rule(args.quad_order)
    rows = []
    for alpha in alphas:
        expected_finite = scaling_admissible(alpha)
        result = convergence_probe(ScalingMap(alpha, z0), rule)
        if math.isfinite(result.coarse) and math.isfinite(result.fine) and result.coarse != 0.0:
            ratio = result.fine / result.coarse
        else:
            ratio = math.inf
        row = _check(f"probe-alpha-{alpha:g}", ratio, 10.0, mode="max" if expected_finite else "min")
        row["classification"] = result.classification
        row["pass"] = (result.classification == "finite") == expected_finite
        rows.append(row)
    config = {"alphas": [float(a) for a in alphas], "z0": list(z0), "quad_order": args.quad_order}
    return config, rows


def _suite_rotate(args) -> tuple[dict, list[dict]]:
    if not 0 <= args.max_rank <= 3:
        raise ValueError("max rank must be within 0..3")
    pair = SpeciesPair(args.ms * atomic_mass, args.msp * atomic_mass, args.temperature)
    rot = BlockRotation.from_pair(pair)
    rng = np.random.default_rng(args.seed)
    circle = abs(rot.y**2 + rot.y_prime**2 - 1.0)
    involution = float(np.max(np.abs(rot.matrix @ rot.matrix - np.eye(6))))
    equivariance = max(
        equivariance_residual(args.max_rank, rng.uniform(-2.0, 2.0, 6), pair) for _ in range(args.points)
    )
    coeff_s = ExpansionCoefficients(1, (scalar(1.0, 3), SymTensor(3, 1, [0.1, 0.0, 0.0])))
    coeff_sp = ExpansionCoefficients(0, (scalar(1.0, 3),))
    sample = [MixedPoint(tuple(rng.uniform(-2.0, 2.0, 6)), SPECIES_FRAME) for _ in range(100)]
    peak = max(abs(product_distribution(coeff_s, coeff_sp, p)) for p in sample)
    residual = distribution_invariance(coeff_s, coeff_sp, pair, sample)
    rows = [
        _check("unit-circle", circle, 1e-14),
        _check("involution", involution, 1e-14),
        _check("equivariance", equivariance, 1e-10),
        _check("distribution-invariance", residual / max(peak, 1e-300), 1e-10),
    ]
    config = {
        "ms_u": args.ms,
        "msp_u": args.msp,
        "temperature": args.temperature,
        "max_rank": args.max_rank,
        "points": args.points,
    }
    return config, rows


_SUITES = {
    "ortho": _suite_ortho,
    "translate": _suite_translate,
    "scale": _suite_scale,
    "rotate": _suite_rotate,
}


def cmd_verify(args) -> tuple[dict, int]:
    config, rows = _SUITES[args.suite](args)
    config["seed"] = args.seed
    passed = all(r["pass"] for r in rows)
    report = {
        "command": "verify",
        "suite": args.suite,
        "config": config,
        "results": rows,
        "pass": passed,
    }
    return report, 0 if passed else 1


# --- argument parsing and dispatch ----------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hermtensor", description="Tensor Hermite basis toolbox")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--seed", type=int, default=0)

    p_basis = sub.add_parser("basis", help="print canonical basis components")
    p_basis.add_argument("--rank", type=int, required=True)
    p_basis.add_argument("--point", type=str, default=None, help="comma-separated 3-vector")
    p_basis.add_argument("--symbolic", action="store_true")
    p_basis.add_argument("--convention", choices=["physicist", "probabilist"], default="physicist")
    common(p_basis)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=sorted(_SUITES))
    p_verify.add_argument("--max-rank", type=int, default=3)
    p_verify.add_argument("--quad-order", type=int, default=12)
    p_verify.add_argument("--maps", type=int, default=20)
    p_verify.add_argument("--points", type=int, default=20)
    p_verify.add_argument("--alpha", type=float, action="append")
    p_verify.add_argument("--z0", type=str, default="1,0,0")
    p_verify.add_argument("--ms", type=float, default=16.0, help="unprimed mass in u")
    p_verify.add_argument("--msp", type=float, default=16.0, help="primed mass in u")
    p_verify.add_argument("--temperature", type=float, default=300.0)
    common(p_verify)

    p_window = sub.add_parser("window", help="basis temperature window for an ion/neutral pair")
    p_window.add_argument("--ti", type=float, required=True)
    p_window.add_argument("--tn", type=float, required=True)
    common(p_window)

    p_expand = sub.add_parser("expand", help="expand a drifting Maxwellian given physical inputs")
    p_expand.add_argument("--mass", type=float, required=True, help="molecular mass in u")
    p_expand.add_argument("--temperature", type=float, required=True, help="temperature in K")
    p_expand.add_argument("--drift", type=str, default="0,0,0", help="drift velocity in m/s")
    p_expand.add_argument("--density", type=float, default=1.0)
    p_expand.add_argument("--max-rank", type=int, default=3)
    p_expand.add_argument("--quad-order", type=int, default=16)
    common(p_expand)

    return parser


_COMMANDS = {
    "basis": cmd_basis,
    "verify": cmd_verify,
    "window": cmd_window,
    "expand": cmd_expand,
}


def main(argv=None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = _COMMANDS[args.command](args)
    except NonFiniteIntegrandError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out.write(_render(report, args.format))
    return code


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
