"""Report assembly and the CSV/JSON file formats.

``report.json`` (schema version 1) holds exactly these top-level keys:

``schema_version``   integer, currently 1
``software_version`` package version string
``sample``           ``{"source", "n", "x_tie_count", "y_tie_count"}``
``settings``         ``{"grid", "self_point", "sign_tolerance", "levels", "bootstrap_replicates"}``
``seed``             integer seed used for resampling
``d_vector``         ``{"auk0", "auk1", "auk2", "auk3", "i_auk", "i_auk_std"}``
``signs``            ``{"components", "aggregate", "scores"}``
``intervals``        list of ``{"statistic", "point", "b", "levels", "intervals"}`` or null
``warnings``         list of strings

Floats are written with ``repr`` precision and parse back to the same value.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import __version__
from .estimators import (
    DEFAULT_GRID,
    DependenceSigns,
    DVector,
    KendallCurve,
    SelfPoint,
    classify_dependence,
    d_vector,
    default_sign_tolerance,
    kendall_curves,
    kendall_tau,
    pearson_r,
)
from .resampling import DEFAULT_LEVELS, STATISTICS, IntervalEstimate, bootstrap_statistics
from .sample import BivariateSample
from .samplers import SamplerSpec, replicate_rng

SCHEMA_VERSION = 1
REPORT_KEYS = (
    "schema_version",
    "software_version",
    "sample",
    "settings",
    "seed",
    "d_vector",
    "signs",
    "intervals",
    "warnings",
)
CURVE_COLUMNS = ("panel", "t", "w", "k")
TABLE_COLUMNS = ("family", "param", "n", "reps", "statistic", "mean", "sd")


# --------------------------------------------------------------------------- #
# curves.csv
# --------------------------------------------------------------------------- #

def export_curves_csv(curves: Sequence[KendallCurve], out: str | os.PathLike) -> None:
    """One row per (panel, grid point), panel-major then t ascending."""
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CURVE_COLUMNS)
        for c in sorted(curves, key=lambda c: c.panel):
            for t, wv, kv in zip(c.grid.tolist(), c.w.tolist(), c.k.tolist()):
                w.writerow([c.panel, repr(t), repr(wv), repr(kv)])


def read_curves_csv(path: str | os.PathLike) -> list[KendallCurve]:
    rows: dict[int, list[tuple[float, float, float]]] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CURVE_COLUMNS:
            raise ValueError(f"unexpected header {header}")
        for rec in reader:
            rows.setdefault(int(rec[0]), []).append((float(rec[1]), float(rec[2]), float(rec[3])))
    curves = []
    for panel in sorted(rows):
        arr = np.array(rows[panel])
        curves.append(KendallCurve(panel, arr[:, 0], arr[:, 1], arr[:, 2]))
    return curves


# --------------------------------------------------------------------------- #
# analysis report
# --------------------------------------------------------------------------- #

@dataclass
class AnalysisReport:
    sample: BivariateSample
    d: DVector
    signs: DependenceSigns
    grid: int
    self_point: str
    sign_tolerance: float
    seed: int
    intervals: list[IntervalEstimate] | None = None
    levels: tuple[float, ...] = ()
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        t = self.sample.ties
        return {
            "schema_version": SCHEMA_VERSION,
            "software_version": __version__,
            "sample": {
                "source": self.sample.source,
                "n": self.sample.n,
                "x_tie_count": t.x_tie_count,
                "y_tie_count": t.y_tie_count,
            },
            "settings": {
                "grid": self.grid,
                "self_point": self.self_point,
                "sign_tolerance": self.sign_tolerance,
                "levels": list(self.levels),
                "bootstrap_replicates": self.intervals[0].b if self.intervals else None,
            },
            "seed": self.seed,
            "d_vector": self.d.as_dict(),
            "signs": {
                "components": list(self.signs.components),
                "aggregate": self.signs.aggregate,
                "scores": list(self.signs.signed),
            },
            "intervals": [iv.as_dict() for iv in self.intervals] if self.intervals else None,
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"


def tie_warning(sample: BivariateSample) -> str | None:
    t = sample.ties
    if not t.has_ties:
        return None
    return (
        f"input has tied values (x: {t.x_tie_count} pairs, y: {t.y_tie_count} pairs); "
        "the data are assumed continuous, estimates use the fixed counting conventions"
    )


def analyze(
    sample: BivariateSample,
    grid: int = DEFAULT_GRID,
    bootstrap: int | None = None,
    levels: Sequence[float] = DEFAULT_LEVELS,
    seed: int = 0,
    self_point: SelfPoint = "exclude",
    sign_tolerance: float | None = None,
) -> tuple[AnalysisReport, list[KendallCurve]]:
    curves = kendall_curves(sample, grid, self_point)
    d = d_vector(sample, self_point, warn=False)
    tol = default_sign_tolerance(sample.n) if sign_tolerance is None else sign_tolerance
    intervals = None
    if bootstrap:
        res = bootstrap_statistics(sample, STATISTICS, bootstrap, levels, seed, self_point)
        intervals = [res[s] for s in STATISTICS]
    msgs = [m for m in (tie_warning(sample),) if m]
    report = AnalysisReport(
        sample=sample,
        d=d,
        signs=classify_dependence(d, tol),
        grid=grid,
        self_point=self_point,
        sign_tolerance=tol,
        seed=seed,
        intervals=intervals,
        levels=tuple(levels) if bootstrap else (),
        warnings=msgs,
    )
    return report, curves


# --------------------------------------------------------------------------- #
# simulation tables
# --------------------------------------------------------------------------- #

SIM_STATISTICS = ("abs_r", "abs_tau", "i_auk", "i_auk_std")


def _degenerate_bvn(spec: SamplerSpec) -> bool:
    return spec.family == "bvn" and spec.param is not None and abs(spec.param) == 1.0


def simulate_table(spec: SamplerSpec, reps: int, self_point: SelfPoint = "exclude") -> list[dict]:
    """Monte Carlo mean and standard deviation of |r|, |tau|, I_AUK and the
    standardized index over ``reps`` independent samples.

    For the bivariate normal at ``|rho| = 1`` the sample is a deterministic
    monotone function of X and the index takes its population value 1.
    """
    if reps < 2:
        raise ValueError("need at least 2 replications")
    vals = np.empty((reps, len(SIM_STATISTICS)))
    for r in range(reps):
        s = spec.draw(replicate_rng(spec.seed, r))
        if _degenerate_bvn(spec):
            ia, ist = 1.0, 1.0
        else:
            d = d_vector(s, self_point, warn=False)
            ia, ist = d.i_auk, d.i_auk_std
        vals[r] = (abs(pearson_r(s.x, s.y)), abs(kendall_tau(s.x, s.y)), ia, ist)
    rows = []
    for j, name in enumerate(SIM_STATISTICS):
        rows.append({
            "family": spec.family,
            "param": spec.param,
            "n": spec.n,
            "reps": reps,
            "statistic": name,
            "mean": float(vals[:, j].mean()),
            "sd": float(vals[:, j].std(ddof=1)),
        })
    return rows


def write_table_csv(rows: Sequence[dict], out: str | os.PathLike) -> None:
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        for row in rows:
            w.writerow([
                row["family"],
                "" if row["param"] is None else repr(float(row["param"])),
                row["n"],
                row["reps"],
                row["statistic"],
                repr(row["mean"]),
                repr(row["sd"]),
            ])
