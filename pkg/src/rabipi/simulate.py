"""Synthetic shot-count datasets for the Rabi experiment.

Each dataset mimics one qubit: a grid of rotation times, a fixed number of
measurement shots per time, and the count of |1> outcomes drawn from a
binomial distribution with the model probability.  Sampling is reproducible:
the stream for each record is derived from (seed, record index), so results
do not depend on evaluation order.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import NoiseModel, noisy_prob

__all__ = [
    "TimeGrid",
    "ShotRecord",
    "Dataset",
    "DEFAULT_GRID",
    "DEFAULT_SHOTS",
    "make_grid",
    "sample_dataset",
    "exact_dataset",
    "inject_step",
]

#: Shots per time instant used in the original experiment.
DEFAULT_SHOTS = 8192


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid {start, start+step, ...} up to stop (inclusive)."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)
                and math.isfinite(self.step)):
            raise ValueError("grid parameters must be finite")
        if self.step <= 0:
            raise ValueError(f"step must be > 0, got {self.step}")
        if self.stop <= self.start:
            raise ValueError(f"stop must exceed start, got [{self.start}, {self.stop}]")

    def times(self) -> np.ndarray:
        # Largest point <= stop + step/2; rounding strips float-accumulation
        # noise so grid times serialize as short decimals.
        n = int(math.floor((self.stop - self.start + self.step / 2) / self.step)) + 1
        return np.round(self.start + np.arange(n) * self.step, 12)

    def __len__(self) -> int:
        return len(self.times())


@dataclass(frozen=True)
class ShotRecord:
    """Measurement tally at one time instant."""

    t: float
    shots: int
    ones: int

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if not 0 <= self.ones <= self.shots:
            raise ValueError(f"ones must be in [0, {self.shots}], got {self.ones}")

    @property
    def fraction(self) -> float:
        return self.ones / self.shots


@dataclass(frozen=True)
class Dataset:
    """Ordered shot records for one qubit."""

    records: tuple
    label: str = ""

    def __post_init__(self):
        recs = tuple(self.records)
        object.__setattr__(self, "records", recs)
        if len(recs) < 2:
            raise ValueError("dataset needs at least 2 records")
        ts = [r.t for r in recs]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("record times must be strictly increasing")

    def times(self) -> np.ndarray:
        return np.array([r.t for r in self.records])

    def fractions(self) -> np.ndarray:
        return np.array([r.fraction for r in self.records])

    def __len__(self) -> int:
        return len(self.records)


def make_grid(start: float = 0.0, stop: float = 6.3, step: float = 0.1) -> TimeGrid:
    """Build a uniform grid; defaults follow the experimental protocol."""
    return TimeGrid(start, stop, step)


DEFAULT_GRID = make_grid()


def sample_dataset(model: NoiseModel, grid: TimeGrid, shots: int = DEFAULT_SHOTS,
                   seed: int = 0, label: str = "") -> Dataset:
    """Draw a binomial shot count at every grid time.

    The count at grid index i comes from a generator seeded with (seed, i),
    so identical inputs always give bit-identical datasets and records can
    be sampled in any order.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    times = grid.times()
    records = []
    for i, t in enumerate(times):
        p = noisy_prob(model, float(t))
        rng = np.random.default_rng([int(seed) & (2**64 - 1), i])
        ones = int(rng.binomial(shots, min(max(p, 0.0), 1.0)))
        records.append(ShotRecord(t=float(t), shots=shots, ones=ones))
    return Dataset(records=tuple(records), label=label)


def exact_dataset(model: NoiseModel, grid: TimeGrid, shots: int = 2**40,
                  label: str = "") -> Dataset:
    """Noise-free dataset: fractions equal model probabilities to ~5e-13.

    Uses a huge shot count so the integer tally represents the exact
    probability; convenient for checking the deterministic pipeline bias.
    """
    records = []
    for t in grid.times():
        p = noisy_prob(model, float(t))
        records.append(ShotRecord(t=float(t), shots=shots, ones=round(p * shots)))
    return Dataset(records=tuple(records), label=label)


def inject_step(ds: Dataset, t_jump: float, offset: float) -> Dataset:
    """Shift all fractions at t >= t_jump by ``offset`` (clamped to [0, 1]).

    Models an abrupt calibration change between hardware jobs; used to
    exercise dataset screening.
    """
    ts = ds.times()
    if not ts[0] <= t_jump <= ts[-1]:
        raise ValueError(f"t_jump {t_jump} outside data range [{ts[0]}, {ts[-1]}]")
    records = []
    for r in ds.records:
        if r.t >= t_jump:
            ones = int(min(max(round(r.ones + offset * r.shots), 0), r.shots))
            records.append(ShotRecord(t=r.t, shots=r.shots, ones=ones))
        else:
            records.append(r)
    return Dataset(records=tuple(records), label=ds.label)
