"""Sweep result container, grid helpers, and deterministic CSV round-tripping.

Numbers are serialized with 17 significant digits so that a parsed file
reproduces the in-memory values bit-exactly; booleans are serialized as 0/1.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .entanglement import ground_concurrence_from_decomposition
from .linalg import eigh
from .tripartite import IsingParams, build_ising

# column name -> python type, shared by every sweep/report schema
COLUMN_TYPES: dict[str, type] = {
    "delta": float,
    "lambda": float,
    "ground_energy": float,
    "gap": float,
    "concurrence": float,
    "degenerate": bool,
    "status": str,
    "variant": str,
    "kappa": float,
    "lam_tilde": float,
    "nmax_used": int,
    "trial": int,
    "symmetric": bool,
    "counterexamples": int,
    "family_checks": int,
    "family_ok": bool,
    "evaluation": int,
    "value": float,
    "control_0": float,
    "control_1": float,
    "control_2": float,
}


def format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def parse_value(column: str, text: str):
    kind = COLUMN_TYPES.get(column, str)
    if kind is bool:
        return text == "1"
    return kind(text)


@dataclass(frozen=True)
class SweepResult:
    """Ordered column names plus one record per grid point, in grid order."""

    schema: tuple[str, ...]
    rows: tuple[dict, ...]

    def __post_init__(self):
        for row in self.rows:
            if tuple(row.keys()) != tuple(self.schema):
                raise ValueError(
                    f"row keys {tuple(row.keys())} do not match schema {self.schema}"
                )

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.schema)
        for row in self.rows:
            writer.writerow([format_value(row[c]) for c in self.schema])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv_text())

    @classmethod
    def read_csv(cls, path) -> "SweepResult":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = tuple(next(reader))
            rows = tuple(
                {c: parse_value(c, cell) for c, cell in zip(header, line)}
                for line in reader
            )
        return cls(schema=header, rows=rows)

    def column(self, name: str) -> list:
        return [row[name] for row in self.rows]


def linspace_grid(start: float, stop: float, count: int) -> np.ndarray:
    if count < 1:
        raise ValueError("grid count must be >= 1")
    if start > stop:
        raise ValueError("grid start must be <= stop")
    return np.linspace(start, stop, count)


def parse_grid_spec(spec: str) -> np.ndarray:
    """Parse a "start:stop:count" axis specification."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid spec {spec!r} is not of the form start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ValueError(f"grid spec {spec!r}: {exc}") from None
    return linspace_grid(start, stop, count)


ISING_SWEEP_SCHEMA = (
    "delta",
    "lambda",
    "ground_energy",
    "gap",
    "concurrence",
    "degenerate",
    "status",
)


def ising_sweep(delta_grid, lambda_grid, j_coupling: float = 1.0) -> SweepResult:
    """Ground-state sweep of the chain over (delta, lambda), delta outermost."""
    deltas = [float(d) for d in delta_grid]
    lams = [float(x) for x in lambda_grid]
    if not deltas or not lams:
        raise ValueError("grids must be non-empty")

    rows = []
    for delta in deltas:
        for lam in lams:
            row = {
                "delta": delta,
                "lambda": lam,
                "ground_energy": float("nan"),
                "gap": float("nan"),
                "concurrence": float("nan"),
                "degenerate": False,
                "status": "ok",
            }
            try:
                h = build_ising(IsingParams(j_coupling=j_coupling, delta=delta, lam=lam))
                dec = eigh(h)
                conc = ground_concurrence_from_decomposition(dec, (2, 2, 2), (0, 2))
                row.update(
                    ground_energy=dec.ground_energy,
                    gap=dec.gap(),
                    concurrence=conc.value,
                    degenerate=conc.degenerate_ground,
                )
            except Exception as exc:
                row["status"] = f"error: {exc}"
            rows.append(row)
    return SweepResult(schema=ISING_SWEEP_SCHEMA, rows=tuple(rows))
