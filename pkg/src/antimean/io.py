"""Dataset input/output, synthetic data, and canonical serialization.

Landmark CSV format: header ``id,x1,y1,...,xk,yk``, one configuration per
row, UTF-8, decimal points.  Floats are written with 17 significant digits,
which round-trips IEEE doubles exactly; the canonical JSON writer uses the
same formatting so that identical inputs give identical output bytes.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DomainError,
    InconsistentColumns,
    InvalidDimension,
    ParseError,
)
from .extremes import SampleOnProjectiveSpace
from .geometry import LandmarkConfig, ProjectivePoint, to_preshape


@dataclass(frozen=True)
class Dataset:
    """Named collection of landmark configurations sharing one k."""

    name: str
    k: int
    configs: tuple

    @property
    def n(self) -> int:
        return len(self.configs)


def _expected_header(k: int) -> list:
    return ["id"] + [f"{axis}{i}" for i in range(1, k + 1) for axis in ("x", "y")]


def read_landmarks(path) -> Dataset:
    """Parse a landmark CSV file.

    The landmark count k is inferred from the header; every row must carry
    2k + 1 cells.

    Raises
    ------
    InconsistentColumns
        On a malformed header or a row with the wrong cell count.
    ParseError
        On unparsable numbers (with the offending line number).
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", line=1) from None
        if len(header) < 3 or len(header) % 2 == 0:
            raise InconsistentColumns("header must be id,x1,y1,...,xk,yk", line=1)
        k = (len(header) - 1) // 2
        if [cell.strip().lower() for cell in header] != _expected_header(k):
            raise InconsistentColumns("header must be id,x1,y1,...,xk,yk", line=1)
        configs = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2 * k + 1:
                raise InconsistentColumns(
                    f"expected {2 * k + 1} cells, found {len(row)}", line=line_no
                )
            try:
                nums = [float(cell) for cell in row[1:]]
            except ValueError as exc:
                raise ParseError(str(exc), line=line_no) from None
            configs.append(LandmarkConfig(np.array(nums).reshape(k, 2)))
    if not configs:
        raise ParseError("no data rows", line=2)
    return Dataset(name=path.stem, k=k, configs=tuple(configs))


def format_float(x: float) -> str:
    """17 significant digits: parses back to the identical double."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("non-finite value in output")
    return format(x, ".17g")


def write_landmarks(path, dataset: Dataset) -> None:
    """Write a dataset in the CSV format accepted by :func:`read_landmarks`."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_expected_header(dataset.k))
        for i, cfg in enumerate(dataset.configs):
            cells = [str(i)]
            for z in cfg.values:
                cells.append(format_float(z.real))
                cells.append(format_float(z.imag))
            writer.writerow(cells)


def simulate_configs(k: int, n: int, concentration: float, seed: int) -> Dataset:
    """Draw n configurations as a fixed template plus Gaussian landmark noise.

    The template is the regular k-gon on the unit circle; the noise standard
    deviation is 1/concentration per coordinate.  The draw is a pure function
    of the seed.
    """
    if k < 3:
        raise DomainError("k must be at least 3")
    if n < 1:
        raise DomainError("n must be at least 1")
    if not concentration > 0:
        raise DomainError("concentration must be positive")
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise DomainError("seed must be a nonnegative integer")
    rng = np.random.default_rng(int(seed))
    angles = 2.0 * np.pi * np.arange(k) / k
    template = np.cos(angles) + 1j * np.sin(angles)
    sigma = 1.0 / concentration
    noise = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    raw = template[None, :] + sigma * noise
    return Dataset(
        name=f"simulated-k{k}-n{n}",
        k=k,
        configs=tuple(LandmarkConfig(row) for row in raw),
    )


def dataset_to_sample(dataset: Dataset, variant: str) -> SampleOnProjectiveSpace:
    """Turn a dataset into a projective-space sample.

    complex
        Shape route: Helmert preshape of each configuration, a point of
        CP^{k-2}.  Needs k >= 3.
    real
        Axial route: the flattened coordinate vector (x1, y1, ..., xk, yk)
        of each row, normalized, a point of RP^{2k-1}.  Directions carry no
        location, so no registration is applied.
    """
    if variant == "complex":
        if dataset.k < 3:
            raise InvalidDimension("shape analysis needs k >= 3")
        points = [to_preshape(cfg).to_projective_point() for cfg in dataset.configs]
    elif variant == "real":
        points = [
            ProjectivePoint.from_vector(cfg.planar().ravel()) for cfg in dataset.configs
        ]
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return SampleOnProjectiveSpace(points)


def _emit(value, out: list, indent: int) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            out.append(f"{pad}  {json.dumps(str(key))}: ")
            _emit(item, out, indent + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if len(value) == 0:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(pad + "  ")
            _emit(item, out, indent + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(value, bool) or value is None:
        out.append(json.dumps(value))
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(format_float(float(value)))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    else:
        raise DomainError(f"cannot serialize {type(value).__name__}")


def dumps_json(doc) -> str:
    """Canonical JSON: insertion-ordered keys, floats at 17 significant digits."""
    out: list = []
    _emit(doc, out, 0)
    out.append("\n")
    return "".join(out)
