"""Bivariate samples: ingestion, validation and tie detection."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class SampleError(ValueError):
    """Raised for malformed or unusable input data."""


class ObservationPair(NamedTuple):
    x: float
    y: float


class TieReport(NamedTuple):
    x_tie_count: int
    y_tie_count: int

    @property
    def has_ties(self) -> bool:
        return self.x_tie_count > 0 or self.y_tie_count > 0


def _duplicate_pairs(values: np.ndarray) -> int:
    # number of unordered pairs (k, l), k < l, sharing a value
    _, counts = np.unique(values, return_counts=True)
    return int(np.sum(counts * (counts - 1) // 2))


@dataclass(frozen=True, eq=False)
class BivariateSample:
    """An ordered, immutable sample of (x, y) observations.

    Coordinates are stored as read-only float64 arrays. ``n >= 2`` and every
    value must be finite.
    """

    x: np.ndarray
    y: np.ndarray
    source: str | None = None
    ties: TieReport = field(init=False, repr=False)

    def __post_init__(self) -> None:
        x = np.array(self.x, dtype=np.float64).ravel()
        y = np.array(self.y, dtype=np.float64).ravel()
        if x.shape != y.shape:
            raise SampleError(f"x and y differ in length ({x.size} vs {y.size})")
        if x.size < 2:
            raise SampleError(f"need at least 2 observations, got {x.size}")
        bad = ~(np.isfinite(x) & np.isfinite(y))
        if bad.any():
            j = int(np.flatnonzero(bad)[0])
            raise SampleError(f"non-finite value in observation {j + 1}: ({x[j]}, {y[j]})")
        x.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "ties", TieReport(_duplicate_pairs(x), _duplicate_pairs(y)))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]], source: str | None = None) -> "BivariateSample":
        arr = np.asarray(list(pairs), dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise SampleError("pairs must be a sequence of (x, y) tuples")
        return cls(arr[:, 0], arr[:, 1], source=source)

    @property
    def n(self) -> int:
        return int(self.x.size)

    @property
    def pairs(self) -> list[ObservationPair]:
        return [ObservationPair(float(a), float(b)) for a, b in zip(self.x, self.y)]

    @property
    def has_ties(self) -> bool:
        return self.ties.has_ties

    def take(self, indices: np.ndarray) -> "BivariateSample":
        """Sub- or re-sample by index, keeping pairs intact."""
        return BivariateSample(self.x[indices], self.y[indices], source=self.source)

    def map(self, fx=None, fy=None) -> "BivariateSample":
        x = self.x if fx is None else fx(self.x)
        y = self.y if fy is None else fy(self.y)
        return BivariateSample(x, y, source=self.source)

    def swapped(self) -> "BivariateSample":
        return BivariateSample(self.y, self.x, source=self.source)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivariateSample):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y)

    __hash__ = None  # type: ignore[assignment]


def detect_ties(sample: BivariateSample) -> TieReport:
    """Count unordered duplicate-value pairs in each coordinate."""
    return sample.ties


def load_csv(
    path: str | os.PathLike,
    has_header: bool = False,
    x_col: int = 0,
    y_col: int = 1,
) -> BivariateSample:
    """Read a comma-delimited file into a :class:`BivariateSample`.

    Columns are zero-based. Rows and columns in error messages are one-based
    and count data rows only (the header, if any, is not numbered).
    """
    path = os.fspath(path)
    if not os.path.isfile(path):
        raise SampleError(f"input file not found: {path}")
    xs: list[float] = []
    ys: list[float] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        if has_header:
            next(reader, None)
        row_no = 0
        for record in reader:
            if not record or all(not cell.strip() for cell in record):
                continue
            row_no += 1
            vals = []
            for col in (x_col, y_col):
                if col >= len(record):
                    raise SampleError(f"row {row_no}: missing column {col + 1}")
                cell = record[col].strip()
                try:
                    v = float(cell)
                except ValueError:
                    raise SampleError(
                        f"row {row_no}, column {col + 1}: cannot parse {cell!r} as a number"
                    ) from None
                if not math.isfinite(v):
                    raise SampleError(f"row {row_no}, column {col + 1}: non-finite value {cell!r}")
                vals.append(v)
            xs.append(vals[0])
            ys.append(vals[1])
    if len(xs) < 2:
        raise SampleError(f"need at least 2 data rows, found {len(xs)}")
    return BivariateSample(np.array(xs), np.array(ys), source=path)


def write_csv(sample: BivariateSample, path: str | os.PathLike, header: bool = False) -> None:
    """Write ``sample`` in the same dialect :func:`load_csv` reads.

    Values use ``repr`` so they round-trip bit-exactly.
    """
    with open(path, "w", newline="") as fh:
        if header:
            fh.write("x,y\n")
        for a, b in zip(sample.x.tolist(), sample.y.tolist()):
            fh.write(f"{a!r},{b!r}\n")
