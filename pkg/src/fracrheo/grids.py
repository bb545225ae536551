"""Time grids, sampled signals and loading programs.

Every quantity in this package lives on a uniform grid t_k = k*dt,
k = 1..n.  The point t = 0 is deliberately excluded: the responses of
fractional viscoelastic elements contain integrable power singularities
(t**(alpha-1), t**-alpha) that are unbounded there, and every initial
condition is a limit t -> 0+ rather than a stored sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    UnsupportedSamplingError,
)

QUANTITIES = ("stress", "strain", "generic")

CSV_FORMAT = "%.11e"  # 12 significant digits, bit-stable for golden files


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time axis t_k = k*dt for k = 1..n (t = 0 excluded)."""

    dt: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise InvalidArgumentError(f"time step must be positive, got {self.dt}")
        n = self.n
        if isinstance(n, float) and n.is_integer():
            n = int(n)
        if not (isinstance(n, (int, np.integer)) and n >= 1):
            raise InvalidArgumentError(f"sample count must be an integer >= 1, got {self.n}")
        object.__setattr__(self, "n", int(n))

    @property
    def times(self) -> np.ndarray:
        return np.arange(1, self.n + 1, dtype=float) * self.dt

    @property
    def t_end(self) -> float:
        return self.n * self.dt

    def refined(self, factor: int) -> "TimeGrid":
        """Grid with dt/factor covering the same horizon."""
        return TimeGrid(self.dt / factor, self.n * factor)


def make_grid(dt: float, n: int) -> TimeGrid:
    """Build a uniform grid with points k*dt, k = 1..n."""
    return TimeGrid(dt, n)


@dataclass(frozen=True, eq=False)
class Signal:
    """Real samples on a TimeGrid, tagged with the physical quantity."""

    grid: TimeGrid
    values: np.ndarray
    quantity: str = "generic"
    units: str = ""

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.n,):
            raise DimensionMismatchError(
                f"expected {self.grid.n} samples, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise InvalidArgumentError("signal samples must all be finite")
        if self.quantity not in QUANTITIES:
            raise InvalidArgumentError(f"unknown quantity tag {self.quantity!r}")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def with_values(self, values: np.ndarray, quantity: str | None = None) -> "Signal":
        return Signal(self.grid, values, quantity or self.quantity, self.units)


@dataclass(frozen=True, eq=False)
class SingularSignal:
    """A Signal plus one symbolic power term c*t**gamma, gamma in (-1, 0].

    The represented function is ``singular_coeff * t**singular_exponent +
    regular(t)``; a zero coefficient means a purely regular signal.  One
    term is enough for every response handled here.

    ``regular_powers`` records exact power-law content known to be present
    in the regular samples (provenance from the loading program or from an
    exact transform).  Quadrature routines use it to place startup
    corrections; it never changes the represented values.
    """

    regular: Signal
    singular_coeff: float = 0.0
    singular_exponent: float = 0.0
    regular_powers: tuple[float, ...] = field(default=())

    def __post_init__(self):
        c, g = self.singular_coeff, self.singular_exponent
        if not (math.isfinite(c) and math.isfinite(g)):
            raise InvalidArgumentError("singular part must be finite")
        if c != 0.0 and not (-1.0 < g <= 0.0):
            raise InvalidArgumentError(
                f"singular exponent must lie in (-1, 0], got {g}"
            )
        object.__setattr__(self, "regular_powers", tuple(sorted(set(self.regular_powers))))

    @classmethod
    def from_signal(cls, sig: Signal, regular_powers: tuple[float, ...] = ()) -> "SingularSignal":
        return cls(sig, 0.0, 0.0, regular_powers)

    @property
    def grid(self) -> TimeGrid:
        return self.regular.grid

    @property
    def quantity(self) -> str:
        return self.regular.quantity

    @property
    def is_regular(self) -> bool:
        return self.singular_coeff == 0.0

    def total_values(self) -> np.ndarray:
        """Samples with the singular part folded in (finite at every t_k)."""
        vals = np.array(self.regular.values)
        if self.singular_coeff != 0.0:
            vals = vals + self.singular_coeff * self.grid.times ** self.singular_exponent
        return vals


@dataclass(frozen=True, eq=False)
class LoadingProgram:
    """A prescribed stress or strain history.

    Variants: step (constant amplitude), impulse (Dirac of given mass),
    ramp (rate * t), power_law (coeff * t**exponent, exponent > -1) and
    sampled (arbitrary recorded Signal).
    """

    kind: str
    quantity: str
    amplitude: float = 0.0
    exponent: float = 0.0
    signal: Signal | None = None

    _KINDS = ("step", "impulse", "ramp", "power_law", "sampled")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise InvalidArgumentError(f"unknown loading kind {self.kind!r}")
        if self.quantity not in ("stress", "strain"):
            raise InvalidArgumentError(
                f"applied quantity must be stress or strain, got {self.quantity!r}"
            )
        if self.kind != "sampled":
            if not math.isfinite(self.amplitude):
                raise InvalidArgumentError("loading amplitude must be finite")
            if self.kind == "power_law":
                if not math.isfinite(self.exponent) or self.exponent <= -1.0:
                    raise InvalidArgumentError(
                        f"power-law exponent must be > -1, got {self.exponent}"
                    )
        elif self.signal is None:
            raise InvalidArgumentError("sampled loading requires a signal")

    @classmethod
    def step(cls, amplitude: float, quantity: str) -> "LoadingProgram":
        return cls("step", quantity, amplitude=amplitude)

    @classmethod
    def impulse(cls, mass: float, quantity: str) -> "LoadingProgram":
        return cls("impulse", quantity, amplitude=mass)

    @classmethod
    def ramp(cls, rate: float, quantity: str) -> "LoadingProgram":
        return cls("ramp", quantity, amplitude=rate)

    @classmethod
    def power_law(cls, coeff: float, exponent: float, quantity: str) -> "LoadingProgram":
        return cls("power_law", quantity, amplitude=coeff, exponent=exponent)

    @classmethod
    def sampled(cls, signal: Signal) -> "LoadingProgram":
        if signal.quantity not in ("stress", "strain"):
            raise InvalidArgumentError("sampled loading must be tagged stress or strain")
        return cls("sampled", signal.quantity, signal=signal)


def sample_program(program: LoadingProgram, grid: TimeGrid) -> SingularSignal:
    """Realise a loading program as samples on a grid.

    Dirac impulses are rejected: they are consumed analytically by the
    initial-condition derivation and never appear on a grid (only the
    measurement-procedure module builds a box stand-in, deliberately).
    Power laws with exponent <= 0 go into the symbolic singular part so
    they stay exact near t = 0.
    """
    q = program.quantity
    if program.kind == "impulse":
        raise UnsupportedSamplingError(
            "a Dirac impulse has no grid representation; it enters through "
            "the derived initial condition instead"
        )
    if program.kind == "sampled":
        sig = program.signal
        if sig.grid != grid:
            raise DimensionMismatchError("sampled loading lives on a different grid")
        return SingularSignal.from_signal(sig)
    t = grid.times
    if program.kind == "step":
        vals = np.full(grid.n, program.amplitude)
        powers = (0.0,)
    elif program.kind == "ramp":
        vals = program.amplitude * t
        powers = (1.0,)
    else:  # power_law
        a, p = program.amplitude, program.exponent
        if p <= 0.0:
            zero = Signal(grid, np.zeros(grid.n), q)
            return SingularSignal(zero, a, p)
        vals = a * t**p
        powers = (p,)
    return SingularSignal.from_signal(Signal(grid, vals, q), powers)


def write_signal_csv(sig: Signal | SingularSignal, path) -> None:
    """Emit `time,value` rows, singular part folded into the values."""
    if isinstance(sig, SingularSignal):
        times, vals = sig.grid.times, sig.total_values()
    else:
        times, vals = sig.grid.times, sig.values
    with open(path, "w", newline="") as fh:
        fh.write("time,value\n")
        for t, v in zip(times, vals):
            fh.write(f"{CSV_FORMAT % t},{CSV_FORMAT % v}\n")


def read_signal_csv(path, quantity: str = "generic") -> Signal:
    """Read a `time,value` file back onto the uniform grid it encodes."""
    rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if rows.shape[1] != 2 or rows.shape[0] < 1:
        raise InvalidArgumentError(f"{path}: expected two columns time,value")
    times, vals = rows[:, 0], rows[:, 1]
    dt = times[0]
    n = len(times)
    if dt <= 0 or not np.allclose(times, np.arange(1, n + 1) * dt, rtol=1e-9, atol=1e-12):
        raise InvalidArgumentError(f"{path}: times must be k*dt for k = 1..n")
    return Signal(TimeGrid(float(dt), n), vals, quantity)
