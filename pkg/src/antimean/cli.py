"""Command-line front end: ``analyze``, ``bootstrap``, ``simulate``.

The commands are a thin shell: every number in the emitted documents is the
corresponding library value serialized at full precision, and given the same
input file, flags and seed the output bytes are identical.

Exit codes: 0 success, 2 statistical degeneracy, 3 input/parse failure,
4 invalid flags.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import AntimeanError, ChartFailure, DomainError, OutsideChart
from .extremes import (
    extrinsic_antimean,
    extrinsic_mean,
    moment_matrix,
    nonfocality_report,
)
from .geometry import affine_coords, orthocomplement_basis, projective_distance
from .inference import (
    anticovariance_complex,
    anticovariance_real,
    bootstrap_nonpivotal,
    bootstrap_pivotal,
    chi2_quantile,
    simultaneous_affine_cis,
)
from .io import (
    dataset_to_sample,
    dumps_json,
    format_float,
    read_landmarks,
    simulate_configs,
    write_landmarks,
)

_NUMBER = {"type": "number"}
_INT = {"type": "integer"}
_STRING = {"type": "string"}
_NUMBER_LIST = {"type": "array", "items": _NUMBER}
_COMPLEX_VEC = {
    "type": "object",
    "properties": {
        "re": _NUMBER_LIST,
        "im": {"anyOf": [_NUMBER_LIST, {"type": "null"}]},
    },
    "required": ["re", "im"],
}
_MATRIX = {
    "type": "object",
    "properties": {
        "re": {"type": "array", "items": _NUMBER_LIST},
        "im": {"anyOf": [{"type": "array", "items": _NUMBER_LIST}, {"type": "null"}]},
    },
    "required": ["re", "im"],
}
_EXTREMIZER = {
    "type": "object",
    "properties": {
        "kind": _STRING,
        "eigenvalue": _NUMBER,
        "gap": _NUMBER,
        "frechet_value": _NUMBER,
        "rep": _COMPLEX_VEC,
    },
    "required": ["kind", "eigenvalue", "gap", "frechet_value", "rep"],
}

SCHEMA_ANALYZE = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "schema": {"const": "antimean/analyze/v1"},
        "variant": {"enum": ["real", "complex"]},
        "input": _STRING,
        "n": _INT,
        "ambient_dim": _INT,
        "gap_tol": _NUMBER,
        "eigenvalues": _NUMBER_LIST,
        "mean": _EXTREMIZER,
        "antimean": _EXTREMIZER,
        "nonfocality": {
            "type": "object",
            "properties": {
                "lambda_min": _NUMBER,
                "bottom_gap": _NUMBER,
                "top_gap": _NUMBER,
                "bottom_multiplicity": _INT,
                "top_multiplicity": _INT,
                "alpha_vw_nonfocal": {"type": "boolean"},
                "vw_nonfocal": {"type": "boolean"},
            },
            "required": [
                "lambda_min",
                "bottom_gap",
                "top_gap",
                "bottom_multiplicity",
                "top_multiplicity",
                "alpha_vw_nonfocal",
                "vw_nonfocal",
            ],
        },
        "anticovariance": _MATRIX,
        "antimean_affine": {"anyOf": [_COMPLEX_VEC, {"type": "null"}]},
        "asymptotic_region": {
            "type": "object",
            "properties": {"level": _NUMBER, "dof": _INT, "threshold": _NUMBER},
            "required": ["level", "dof", "threshold"],
        },
    },
    "required": [
        "schema",
        "variant",
        "input",
        "n",
        "ambient_dim",
        "gap_tol",
        "eigenvalues",
        "mean",
        "antimean",
        "nonfocality",
        "anticovariance",
        "antimean_affine",
        "asymptotic_region",
    ],
}

SCHEMA_BOOTSTRAP = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "schema": {"const": "antimean/bootstrap/v1"},
        "variant": {"enum": ["real", "complex"]},
        "mode": {"enum": ["nonpivotal", "pivotal"]},
        "kind": {"enum": ["mean", "antimean"]},
        "B": _INT,
        "seed": _INT,
        "level": _NUMBER,
        "kept": _INT,
        "skipped": _INT,
        "spread": _NUMBER,
        "threshold": {"anyOf": [_NUMBER, {"type": "null"}]},
        "affine_cis": {"type": ["object", "null"]},
        "replicate_table": {"type": ["string", "null"]},
    },
    "required": [
        "schema",
        "variant",
        "mode",
        "kind",
        "B",
        "seed",
        "level",
        "kept",
        "skipped",
        "spread",
        "threshold",
        "affine_cis",
        "replicate_table",
    ],
}

SCHEMA_SIMULATE = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "schema": {"const": "antimean/simulate/v1"},
        "path": _STRING,
        "k": _INT,
        "n": _INT,
        "concentration": _NUMBER,
        "seed": _INT,
    },
    "required": ["schema", "path", "k", "n", "concentration", "seed"],
}

SCHEMA_ERROR = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "error": {
            "type": "object",
            "properties": {
                "type": _STRING,
                "message": _STRING,
                "exit_code": _INT,
            },
            "required": ["type", "message", "exit_code"],
        }
    },
    "required": ["error"],
}


@dataclass
class RunConfig:
    """Validated command parameters."""

    command: str
    input: str | None = None
    output: str | None = None
    variant: str = "complex"
    mode: str = "nonpivotal"
    kind: str = "antimean"
    B: int = 500
    seed: int = 42
    level: float = 0.95
    gap_tol: float = 1e-9
    k: int = 8
    n: int = 100
    concentration: float = 100.0

    def validate(self) -> None:
        if not 0.0 < self.level < 1.0:
            raise DomainError("--level must lie strictly between 0 and 1")
        if self.B < 1:
            raise DomainError("--B must be at least 1")
        if not self.gap_tol > 0:
            raise DomainError("--gap-tol must be positive")
        if self.seed < 0:
            raise DomainError("--seed must be nonnegative")


def _vector_doc(rep: np.ndarray) -> dict:
    if np.iscomplexobj(rep):
        return {"re": [float(x) for x in rep.real], "im": [float(x) for x in rep.imag]}
    return {"re": [float(x) for x in rep], "im": None}


def _matrix_doc(mat: np.ndarray) -> dict:
    if np.iscomplexobj(mat):
        return {
            "re": [[float(x) for x in row] for row in mat.real],
            "im": [[float(x) for x in row] for row in mat.imag],
        }
    return {"re": [[float(x) for x in row] for row in mat], "im": None}


def _extremizer_doc(result) -> dict:
    return {
        "kind": result.kind,
        "eigenvalue": result.eigenvalue,
        "gap": result.gap,
        "frechet_value": result.frechet_value,
        "rep": _vector_doc(result.point.rep),
    }


def cmd_analyze(rc: RunConfig) -> dict:
    """Full single-sample analysis document."""
    dataset = read_landmarks(rc.input)
    sample = dataset_to_sample(dataset, rc.variant)
    mm = moment_matrix(sample)
    report = nonfocality_report(sample, rc.gap_tol, moment=mm)
    mean = extrinsic_mean(sample, rc.gap_tol, moment=mm)
    anti = extrinsic_antimean(sample, rc.gap_tol, moment=mm)
    anticov_fn = anticovariance_complex if rc.variant == "complex" else anticovariance_real
    anticov = anticov_fn(sample, rc.gap_tol, moment=mm)
    if rc.variant == "complex":
        try:
            affine = _vector_doc(affine_coords(anti.point))
        except OutsideChart:
            affine = None
    else:
        affine = None
    dof = anticov.dim if rc.variant == "real" else 2 * anticov.dim
    return {
        "schema": "antimean/analyze/v1",
        "variant": rc.variant,
        "input": str(rc.input),
        "n": sample.n,
        "ambient_dim": sample.dim,
        "gap_tol": rc.gap_tol,
        "eigenvalues": [float(v) for v in mm.spectral.eigenvalues],
        "mean": _extremizer_doc(mean),
        "antimean": _extremizer_doc(anti),
        "nonfocality": {
            "lambda_min": report.lambda_min,
            "bottom_gap": report.bottom_gap,
            "top_gap": report.top_gap,
            "bottom_multiplicity": report.bottom_multiplicity,
            "top_multiplicity": report.top_multiplicity,
            "alpha_vw_nonfocal": report.alpha_vw_nonfocal,
            "vw_nonfocal": report.vw_nonfocal,
        },
        "anticovariance": _matrix_doc(anticov.entries),
        "antimean_affine": affine,
        "asymptotic_region": {
            "level": rc.level,
            "dof": dof,
            "threshold": chi2_quantile(dof, rc.level),
        },
    }


def _cis_doc(cis) -> dict:
    return {
        "level": cis.level,
        "per_interval_level": cis.per_interval_level,
        "used": cis.used,
        "dropped": cis.dropped,
        "coordinates": [
            {
                "name": f"w{i + 1}",
                "low": {"re": lo.real, "im": lo.imag},
                "high": {"re": hi.real, "im": hi.imag},
                "display": text,
            }
            for i, ((lo, hi), text) in enumerate(zip(cis.rectangles, cis.display()))
        ],
    }


def _replicate_table(boot, reference, variant: str) -> list:
    """Rows of per-replicate extremizer coordinates.

    Complex replicates in the affine chart report affine coordinates;
    outside the chart (and always in the real case) coordinates are taken in
    the orthocomplement basis of the full-sample extremizer.
    """
    d = reference.point.dim - 1
    if variant == "complex":
        header = ["replicate", "coords"]
        for i in range(1, d + 1):
            header += [f"c{i}_re", f"c{i}_im"]
    else:
        header = ["replicate", "coords"] + [f"c{i}" for i in range(1, d + 1)]
    if boot.t_values is not None:
        header.append("t_value")
    rows = [header]
    ortho = orthocomplement_basis(reference.point.rep)
    for pos, (r, point) in enumerate(zip(boot.replicate_indices, boot.extremizers)):
        coords_kind = "orthocomplement"
        values = None
        if variant == "complex":
            try:
                values = affine_coords(point)
                coords_kind = "affine"
            except OutsideChart:
                values = None
        if values is None:
            values = ortho.conj().T @ point.rep
        cells = [str(r), coords_kind]
        if variant == "complex":
            for z in values:
                cells += [format_float(z.real), format_float(z.imag)]
        else:
            cells += [format_float(x) for x in values]
        if boot.t_values is not None:
            cells.append(format_float(boot.t_values[pos]))
        rows.append(cells)
    return rows


def cmd_bootstrap(rc: RunConfig) -> tuple:
    """Bootstrap summary document plus the replicate table rows."""
    dataset = read_landmarks(rc.input)
    sample = dataset_to_sample(dataset, rc.variant)
    if rc.mode == "nonpivotal":
        boot = bootstrap_nonpivotal(sample, rc.B, rc.seed, rc.kind, rc.gap_tol)
        picker = extrinsic_mean if rc.kind == "mean" else extrinsic_antimean
        reference = picker(sample, rc.gap_tol)
        threshold = None
    elif rc.mode == "pivotal":
        if rc.kind != "antimean":
            raise DomainError("pivotal mode is defined for --kind antimean")
        region = bootstrap_pivotal(sample, rc.B, rc.seed, rc.level, rc.gap_tol)
        boot = region.bootstrap
        reference = region.center
        threshold = region.threshold
    else:
        raise DomainError("--mode must be nonpivotal or pivotal")
    spread = float(
        np.mean([projective_distance(p, reference.point) for p in boot.extremizers])
    )
    cis = None
    if rc.variant == "complex":
        try:
            cis = _cis_doc(simultaneous_affine_cis(boot, rc.level))
        except ChartFailure:
            cis = None
    table = _replicate_table(boot, reference, rc.variant)
    doc = {
        "schema": "antimean/bootstrap/v1",
        "variant": rc.variant,
        "mode": rc.mode,
        "kind": rc.kind,
        "B": rc.B,
        "seed": rc.seed,
        "level": rc.level,
        "kept": len(boot.extremizers),
        "skipped": boot.skipped,
        "spread": spread,
        "threshold": threshold,
        "affine_cis": cis,
        "replicate_table": _table_path(rc.output),
    }
    return doc, table


def _table_path(output: str | None) -> str | None:
    if output is None:
        return None
    return str(Path(output).with_suffix(".replicates.csv"))


def cmd_simulate(rc: RunConfig) -> dict:
    """Write a synthetic dataset and describe it."""
    if rc.output is None:
        raise DomainError("simulate requires --output")
    dataset = simulate_configs(rc.k, rc.n, rc.concentration, rc.seed)
    write_landmarks(rc.output, dataset)
    return {
        "schema": "antimean/simulate/v1",
        "path": str(rc.output),
        "k": rc.k,
        "n": rc.n,
        "concentration": rc.concentration,
        "seed": rc.seed,
    }


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; the contract here is 4.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(4, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="antimean", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, needs_input: bool):
        if needs_input:
            p.add_argument("--input", required=True, help="landmark CSV file")
        p.add_argument("--output", default=None, help="write the JSON document here")
        p.add_argument("--variant", choices=["real", "complex"], default="complex")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--level", type=float, default=0.95)
        p.add_argument("--gap-tol", type=float, default=1e-9, dest="gap_tol")

    analyze = sub.add_parser("analyze", help="extremizers, anticovariance, region")
    common(analyze, needs_input=True)

    boot = sub.add_parser("bootstrap", help="resampling distribution of extremizers")
    common(boot, needs_input=True)
    boot.add_argument("--mode", choices=["nonpivotal", "pivotal"], default="nonpivotal")
    boot.add_argument("--kind", choices=["mean", "antimean"], default="antimean")
    boot.add_argument("--B", type=int, default=500)

    sim = sub.add_parser("simulate", help="write a synthetic landmark dataset")
    common(sim, needs_input=False)
    sim.add_argument("--k", type=int, default=8, help="landmarks per configuration")
    sim.add_argument("--n", type=int, default=100, help="number of configurations")
    sim.add_argument("--concentration", type=float, default=100.0)

    return parser


def _config_from_args(args) -> RunConfig:
    rc = RunConfig(command=args.command)
    for field in (
        "input",
        "output",
        "variant",
        "mode",
        "kind",
        "B",
        "seed",
        "level",
        "gap_tol",
        "k",
        "n",
        "concentration",
    ):
        if hasattr(args, field):
            setattr(rc, field, getattr(args, field))
    return rc


def _error_doc(exc: Exception, exit_code: int) -> dict:
    doc = {
        "error": {
            "type": type(exc).__name__,
            "message": str(exc),
            "exit_code": exit_code,
        }
    }
    cluster = getattr(exc, "cluster", None)
    if cluster:
        doc["error"]["eigenvalue_cluster"] = [float(x) for x in cluster]
    return doc


def _write_doc(doc: dict, output: str | None) -> None:
    text = dumps_json(doc)
    sys.stdout.write(text)
    if output is not None:
        Path(output).write_text(text, encoding="utf-8")


def _write_table(rows: list, path: str | None) -> None:
    if path is None:
        return
    import csv as _csv

    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        _csv.writer(fh, lineterminator="\n").writerows(rows)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    rc = _config_from_args(args)
    try:
        rc.validate()
        if rc.command == "analyze":
            _write_doc(cmd_analyze(rc), rc.output)
        elif rc.command == "bootstrap":
            doc, table = cmd_bootstrap(rc)
            _write_doc(doc, rc.output)
            _write_table(table, _table_path(rc.output))
        else:
            doc = cmd_simulate(rc)
            sys.stdout.write(dumps_json(doc))
    except AntimeanError as exc:
        sys.stdout.write(dumps_json(_error_doc(exc, exc.exit_code)))
        return exc.exit_code
    except OSError as exc:
        sys.stdout.write(dumps_json(_error_doc(exc, 3)))
        return 3
    return 0
