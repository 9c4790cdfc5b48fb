"""Run reports and their JSON/CSV serialization.

JSON layout (keys in this order)::

    {
      "config": {...},                  # echo of the run configuration
      "summary": {"mean_final_fraction": float, "final_fractions": [...]},
      "trials": [
        {"trial": 0, "seed": int,
         "iterations": [0, 1, ...],     # iteration label of each record
         "fractions": [...],            # internal edge fraction per record
         "moves": [...],                # relocations (or swaps) per record
         "periodicity": [{"1": f, "2": f, "3": f, "4+": f, "new": f}, ...],
         "seconds": [...],              # wall clock per record
         "shard_sizes": [...]}          # final shard sizes
      ],
      "assignment_path": str | null
    }

CSV has one row per (trial, recorded iteration).
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .partition import PERIOD_BUCKETS

CSV_FIELDS = ("trial", "seed", "iteration", "fraction", "moves", "seconds") + tuple(
    f"period_{b}" for b in PERIOD_BUCKETS)


@dataclass
class TrialRecord:
    trial: int
    seed: int
    iterations: list = field(default_factory=list)
    fractions: list = field(default_factory=list)
    moves: list = field(default_factory=list)
    periodicity: list = field(default_factory=list)
    seconds: list = field(default_factory=list)
    shard_sizes: list = field(default_factory=list)
    assignment: np.ndarray | None = field(default=None, repr=False, compare=False)

    def add(self, iteration, fraction, moves, periodicity, seconds):
        self.iterations.append(int(iteration))
        self.fractions.append(float(fraction))
        self.moves.append(int(moves))
        self.periodicity.append({b: float(periodicity[b]) for b in PERIOD_BUCKETS})
        self.seconds.append(float(seconds))

    @property
    def final_fraction(self) -> float:
        return self.fractions[-1]

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("assignment")
        return d


@dataclass
class RunReport:
    config: dict
    trials: list = field(default_factory=list)
    assignment_path: str | None = None

    def final_fractions(self) -> list:
        return [t.final_fraction for t in self.trials]

    def mean_final(self) -> float:
        return float(np.mean(self.final_fractions()))

    def mean_curve(self) -> tuple[list, list]:
        """Trial-mean fraction per iteration label.

        Trials that stopped early carry their last value forward.
        """
        labels = max((t.iterations for t in self.trials), key=len)
        rows = []
        for t in self.trials:
            f = t.fractions + [t.fractions[-1]] * (len(labels) - len(t.fractions))
            rows.append(f)
        return list(labels), np.mean(rows, axis=0).tolist()

    def mean_periodicity(self, bucket: str) -> tuple[list, list]:
        labels = max((t.iterations for t in self.trials), key=len)
        rows = []
        for t in self.trials:
            vals = [h[bucket] for h in t.periodicity]
            rows.append(vals + [vals[-1]] * (len(labels) - len(vals)))
        return list(labels), np.mean(rows, axis=0).tolist()

    def to_dict(self) -> dict:
        return {
            "config": dict(self.config),
            "summary": {"mean_final_fraction": self.mean_final(),
                        "final_fractions": self.final_fractions()},
            "trials": [t.to_dict() for t in self.trials],
            "assignment_path": self.assignment_path,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        config = {k: float(v) if v in ("inf", "-inf") else v for k, v in d["config"].items()}
        return cls(config=config,
                   trials=[TrialRecord(**t) for t in d["trials"]],
                   assignment_path=d.get("assignment_path"))

    def csv_rows(self):
        for t in self.trials:
            for i, it in enumerate(t.iterations):
                row = {"trial": t.trial, "seed": t.seed, "iteration": it,
                       "fraction": t.fractions[i], "moves": t.moves[i], "seconds": t.seconds[i]}
                for b in PERIOD_BUCKETS:
                    row[f"period_{b}"] = t.periodicity[i][b]
                yield row


def _jsonable(x):
    if isinstance(x, float) and not np.isfinite(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


def emit_report(report: RunReport, path, fmt: str = "json") -> Path:
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(_jsonable(report.to_dict()), indent=2))
    elif fmt == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
            w.writeheader()
            w.writerows(report.csv_rows())
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return path


def load_report(path) -> RunReport:
    return RunReport.from_dict(json.loads(Path(path).read_text()))


def dump_assignment(g, assignment, path) -> Path:
    """Write ``original_id shard_id`` lines."""
    path = Path(path)
    np.savetxt(path, np.column_stack([g.id_map, np.asarray(assignment)]), fmt="%d")
    return path
