"""Benchmark harness: named experiment presets and custom runs, emitting
deterministic CSV trajectories, static SVG convergence plots, and JSON run
metadata.

Every preset sweeps the three reconstruction solvers and the three methods
(gradient descent, heavy ball, accelerated).  CSV residues are written with
17 significant digits so regression comparisons are lossless; identical
configurations produce byte-identical CSV.
"""

from __future__ import annotations

import dataclasses
import json
import time
from pathlib import Path

import numpy as np

from .groups import so3_group
from .objectives import (
    Objective,
    frobenius_objective,
    restricted_rosenbrock_objective,
    retracted_rosenbrock_objective,
)
from .optimizer import MethodKind, Strategy, run_gd, run_momentum
from .reconstruction import ExplicitSo3Solver
from .retractions import BY_NAME as RETRACTIONS_BY_NAME
from .retractions import CAY, EXP
from .svgplot import write_convergence_svg

__all__ = [
    "ExperimentConfig",
    "RunArtifact",
    "PRESETS",
    "SOLVER_NAMES",
    "METHOD_NAMES",
    "reference_curve",
    "parse_init",
    "make_objective",
    "run_method",
    "run_preset",
    "run_custom",
]

SOLVER_NAMES = ("exp", "cay", "skw")
METHOD_NAMES = ("gd", "phb", "nag")

OBJECTIVE_FACTORIES = {
    "frobenius": frobenius_objective,
    "rosenbrock9": restricted_rosenbrock_objective,
    "rosenbrock3exp": lambda: retracted_rosenbrock_objective(EXP),
    "rosenbrock3cay": lambda: retracted_rosenbrock_objective(CAY),
}


@dataclasses.dataclass
class ExperimentConfig:
    """Everything needed to reproduce a run.  No environment variables are
    consulted anywhere: all inputs live here."""

    objective: str
    solver: str  # "exp" | "cay" | "skw"; ignored by presets (they sweep all)
    method: str  # "gd" | "phb" | "nag" | "all"
    epochs: int
    mu0: float
    eta0: float
    init: str  # "<retraction>:<x>,<y>,<z>", e.g. "cay:1,1,1"
    name: str = ""

    def validate(self) -> "ExperimentConfig":
        if self.objective not in OBJECTIVE_FACTORIES:
            raise ValueError(
                f"objective: unknown '{self.objective}' "
                f"(choose from {sorted(OBJECTIVE_FACTORIES)})"
            )
        if self.solver not in SOLVER_NAMES:
            raise ValueError(f"solver: unknown '{self.solver}' (choose from {SOLVER_NAMES})")
        if self.method not in METHOD_NAMES + ("all",):
            raise ValueError(f"method: unknown '{self.method}'")
        if self.epochs < 1:
            raise ValueError(f"epochs: must be >= 1, got {self.epochs}")
        if self.eta0 <= 0:
            raise ValueError(f"eta0: must be positive, got {self.eta0}")
        if self.mu0 < 0:
            raise ValueError(f"mu0: must be >= 0, got {self.mu0}")
        parse_init(self.init)  # raises with field context
        return self

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        return cls(**d)


@dataclasses.dataclass
class RunArtifact:
    """Materialized outputs of one benchmark table: the residue columns,
    plus the paths of the files written."""

    name: str
    table: dict
    csv_path: Path
    svg_path: Path
    json_path: Path | None = None
    metadata: dict | None = None


# Experiment presets; each runs gd/phb/nag for every solver.
PRESETS: dict[str, ExperimentConfig] = {
    "frobenius1": ExperimentConfig(
        "frobenius", "exp", "all", 100, 0.7, 0.1, "cay:1,1,1", name="frobenius1"
    ),
    "frobenius2": ExperimentConfig(
        "frobenius", "exp", "all", 250, 0.7, 0.01, "cay:1,1,1", name="frobenius2"
    ),
    "rosenbrock91": ExperimentConfig(
        "rosenbrock9", "exp", "all", 100, 0.25, 0.0001, "cay:0.1,0.1,0.1",
        name="rosenbrock91",
    ),
    "rosenbrock92": ExperimentConfig(
        "rosenbrock9", "exp", "all", 100, 0.7, 0.0001, "cay:0.1,0.1,0.1",
        name="rosenbrock92",
    ),
    "rosenbrock3exp": ExperimentConfig(
        "rosenbrock3exp", "exp", "all", 1000, 0.99, 0.0001, "exp:0,0,1",
        name="rosenbrock3exp",
    ),
    "rosenbrock3cay": ExperimentConfig(
        "rosenbrock3cay", "exp", "all", 1000, 0.99, 0.0001, "cay:0,0,1",
        name="rosenbrock3cay",
    ),
}


def parse_init(spec: str) -> np.ndarray:
    """Parse an initial rotation spec ``<retraction>:<x>,<y>,<z>``."""
    try:
        tag, rest = spec.split(":", 1)
        coords = np.array([float(t) for t in rest.split(",")])
    except (ValueError, AttributeError) as exc:
        raise ValueError(f"init: malformed spec '{spec}' "
                         "(expected '<retraction>:<x>,<y>,<z>')") from exc
    if tag not in RETRACTIONS_BY_NAME:
        raise ValueError(f"init: unknown retraction tag '{tag}'")
    if coords.shape != (3,):
        raise ValueError(f"init: expected 3 coordinates, got {coords.size}")
    return RETRACTIONS_BY_NAME[tag].tau(coords)


def make_objective(name: str) -> Objective:
    return OBJECTIVE_FACTORIES[name]()


def reference_curve(residue0: float, epochs: int) -> np.ndarray:
    """Reference decay ``residue0 / k^2`` for ``k = 1..epochs``, anchored so
    the curve starts at the initial residue."""
    if residue0 <= 0:
        raise ValueError(f"residue0 must be positive, got {residue0}")
    k = np.arange(1, epochs + 1, dtype=float)
    return residue0 / (k * k)


def run_method(method: str, obj: Objective, solver_name: str, g0, mu0: float,
               eta0: float, epochs: int):
    """Run one method/solver combination and return its trajectory."""
    group = so3_group(RETRACTIONS_BY_NAME[solver_name])
    solver = ExplicitSo3Solver(solver_name)
    strategy = Strategy.constant(mu0, eta0)
    kind = MethodKind(method)
    if kind is MethodKind.GD:
        return run_gd(group, obj, solver, g0, strategy, epochs)
    return run_momentum(group, obj, solver, g0, strategy, kind.epsilon, epochs)


def _csv_text(table: dict) -> str:
    # bit-exact header and LF endings; 17 significant digits round-trip floats
    headers = list(table.keys())
    lines = [",".join(headers)]
    n = len(table[headers[0]])
    for i in range(n):
        cells = []
        for h in headers:
            v = table[h][i]
            cells.append(str(int(v)) if h == "epoch" else format(float(v), ".17g"))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _ref_column(obj: Objective, residues0: float, epochs: int) -> np.ndarray:
    curve = reference_curve(residues0, epochs)
    # row for epoch 0 carries the anchor value
    return np.concatenate([[residues0], curve])


def _write_table(out_dir: Path, name: str, table: dict) -> tuple[Path, Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{name}.csv"
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_csv_text(table))
    svg_path = out_dir / f"{name}.svg"
    epochs = np.asarray(table["epoch"])
    series = {k: v for k, v in table.items() if k != "epoch"}
    write_convergence_svg(svg_path, epochs, series, title=name)
    return csv_path, svg_path


def run_preset(name: str, out_dir) -> list[RunArtifact]:
    """Execute a named preset: every method under every solver, one CSV/SVG
    pair per solver plus one JSON metadata file for the preset."""
    if name not in PRESETS:
        raise ValueError(f"preset: unknown '{name}' (choose from {sorted(PRESETS)})")
    cfg = PRESETS[name]
    out_dir = Path(out_dir)
    obj = make_objective(cfg.objective)
    g0 = parse_init(cfg.init)

    t0 = time.perf_counter()
    artifacts = []
    final_residues: dict[str, dict[str, float]] = {}
    for solver_name in SOLVER_NAMES:
        table = {"epoch": np.arange(cfg.epochs + 1)}
        finals = {}
        res0 = None
        for method in METHOD_NAMES:
            traj = run_method(method, obj, solver_name, g0, cfg.mu0, cfg.eta0,
                              cfg.epochs)
            table[method] = traj.residues
            finals[method] = traj.final_residue
            res0 = float(traj.residues[0])
        table["ref"] = _ref_column(obj, res0, cfg.epochs)
        final_residues[solver_name] = finals
        csv_path, svg_path = _write_table(out_dir, f"{name}-{solver_name}", table)
        artifacts.append(RunArtifact(f"{name}-{solver_name}", table, csv_path, svg_path))

    wall_ms = (time.perf_counter() - t0) * 1e3
    meta = {
        "config": cfg.to_dict(),
        "final_residues": final_residues,
        "wall_ms": wall_ms,
    }
    json_path = out_dir / f"{name}.json"
    with open(json_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for art in artifacts:
        art.json_path = json_path
        art.metadata = meta
    return artifacts


def run_custom(config: ExperimentConfig, out_dir) -> RunArtifact:
    """Execute a single custom configuration (one solver; one method, or all
    three when ``method == 'all'``)."""
    cfg = config.validate()
    out_dir = Path(out_dir)
    obj = make_objective(cfg.objective)
    g0 = parse_init(cfg.init)
    methods = METHOD_NAMES if cfg.method == "all" else (cfg.method,)
    name = cfg.name or f"{cfg.objective}-{cfg.solver}-{cfg.method}"

    t0 = time.perf_counter()
    table = {"epoch": np.arange(cfg.epochs + 1)}
    finals = {}
    res0 = None
    for method in methods:
        traj = run_method(method, obj, cfg.solver, g0, cfg.mu0, cfg.eta0, cfg.epochs)
        table[method] = traj.residues
        finals[method] = traj.final_residue
        res0 = float(traj.residues[0])
    if res0 > 0:
        table["ref"] = _ref_column(obj, res0, cfg.epochs)
    csv_path, svg_path = _write_table(out_dir, name, table)

    wall_ms = (time.perf_counter() - t0) * 1e3
    meta = {
        "config": cfg.to_dict(),
        "final_residues": {cfg.solver: finals},
        "wall_ms": wall_ms,
    }
    json_path = out_dir / f"{name}.json"
    with open(json_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return RunArtifact(name, table, csv_path, svg_path, json_path, meta)
