"""Estimating Riemann-Liouville initial values from recorded twin histories.

The initial condition of a fractional viscoelastic problem involves a
fractional derivative of the *unknown* field; its value comes from the
recorded history of the unknown's inseparable twin (stress from strain or
vice versa) through the once-integrated constitutive law.  Recording the
twin on (0, a], evaluating the integrated law's recorded side at t = a,
and driving a -> 0 approximates the initial value -- the fractional
analogue of reading off a first-derivative initial condition classically.

Supported recordings and targets (value scaled to match
``models.initial_condition``):

* spring-pot, recorded stress:  (1/K) * [D^-1 sigma](a)
* Voigt,      recorded stress:  (1/K) * [D^-1 sigma](a)
* Zener,      recorded stress:  (1/mu) * [D^-1 sigma + nu D^(a-1) sigma](a)
* Zener,      recorded strain:  (1/nu) * [lam D^-1 eps + mu D^(a-1) eps](a)
* Maxwell,    recorded strain:  E * [D^(a-1) eps](a), or with
  ``target_order=-1`` the once-more-integrated form E * [D^-1 eps](a)
  that carries the strain-impulse mass.

Impulses are deliberately represented here as mass-preserving boxes of
width dt (height mass/dt): the point of the procedure is recovering
initial conditions from physically realisable recordings.  Quadrature is
the plain (uncorrected) Grunwald-Letnikov rule, since recorded data is
not assumed to have smooth power-type startup behaviour.

Finite loads drive every estimate to zero as a -> 0; only impulse boxes
leave their mass behind.  The a -> 0 limit is taken by Richardson
extrapolation over horizon halvings with the decay order estimated from
the data whenever it disagrees with first order by more than 20%.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, UnsupportedPairingError
from .fracops import gl_deriv
from .grids import Signal, TimeGrid
from .models import (
    MaxwellParams,
    ModelParams,
    SpringPotParams,
    VoigtParams,
    ZenerParams,
)

_CONTRACTION_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class TwinHistory:
    """A recorded twin signal on (0, a] plus the model it belongs to."""

    recorded: Signal
    model: ModelParams

    def __post_init__(self):
        if self.recorded.quantity not in ("stress", "strain"):
            raise InvalidArgumentError(
                "recorded history must be tagged stress or strain"
            )

    @property
    def a(self) -> float:
        """Record horizon: the last grid time."""
        return self.recorded.grid.t_end

    @property
    def recorded_quantity(self) -> str:
        return self.recorded.quantity

    def truncated(self, samples: int) -> "TwinHistory":
        """History cut to its first ``samples`` points (horizon samples*dt)."""
        if not (1 <= samples <= self.recorded.grid.n):
            raise InvalidArgumentError(f"cannot truncate to {samples} samples")
        grid = TimeGrid(self.recorded.grid.dt, samples)
        sig = Signal(
            grid, self.recorded.values[:samples], self.recorded.quantity
        )
        return TwinHistory(sig, self.model)


def box_impulse(mass: float, grid: TimeGrid, quantity: str) -> Signal:
    """Width-dt, mass-preserving box stand-in for a Dirac impulse."""
    vals = np.zeros(grid.n)
    vals[0] = mass / grid.dt
    return Signal(grid, vals, quantity)


def _end_value(sig: Signal, order: float) -> float:
    """[D^order sig] evaluated at the record horizon, plain GL quadrature."""
    return float(gl_deriv(sig, order, correction=False).regular.values[-1])


def estimate_at(h: TwinHistory, target_order: float | None = None) -> float:
    """Evaluate the integrated constitutive law's recorded side at t = a.

    Returns the scalar estimate of the unknown-side initial value, scaled
    so its a -> 0 limit matches ``models.initial_condition`` directly.
    ``target_order`` selects which initial condition is being estimated;
    it defaults to the generic alpha-1 level and only the Maxwell model
    admits the additional -1 level (its strain-impulse condition).
    """
    model = h.model
    alpha = model.alpha
    sig = h.recorded
    q = h.recorded_quantity
    default_order = alpha - 1.0
    order = default_order if target_order is None else float(target_order)

    if isinstance(model, (SpringPotParams, VoigtParams)):
        if q != "stress":
            raise UnsupportedPairingError(
                f"{type(model).__name__} initial conditions are read from "
                "recorded stress"
            )
        if not math.isclose(order, default_order):
            raise InvalidArgumentError(
                f"supported target order is alpha-1, got {order}"
            )
        return _end_value(sig, -1.0) / model.K

    if isinstance(model, MaxwellParams):
        if q != "strain":
            raise UnsupportedPairingError(
                "Maxwell initial conditions are read from recorded strain"
            )
        if math.isclose(order, default_order):
            return model.E * _end_value(sig, alpha - 1.0)
        if order == -1.0:
            return model.E * _end_value(sig, -1.0)
        raise InvalidArgumentError(
            f"supported target orders are alpha-1 and -1, got {order}"
        )

    # Zener: both twins work; the integrated law has two recorded-side terms
    if not math.isclose(order, default_order):
        raise InvalidArgumentError(
            f"supported target order is alpha-1, got {order}"
        )
    if q == "stress":
        lhs = _end_value(sig, -1.0) + model.nu * _end_value(sig, alpha - 1.0)
        return lhs / model.mu
    lhs = model.lam * _end_value(sig, -1.0) + model.mu * _end_value(
        sig, alpha - 1.0
    )
    return lhs / model.nu


@dataclass(frozen=True)
class ExtrapolationResult:
    """Estimate sequence over horizon halvings and its extrapolated limit.

    The sequence is always reported alongside the limit so convergence can
    be judged; ``decay_orders`` lists the orders eliminated per Richardson
    stage and ``converged`` records whether the final differences
    contracted.
    """

    horizons: tuple[float, ...]
    estimates: tuple[float, ...]
    limit: float
    decay_orders: tuple[float, ...]
    converged: bool


def _richardson(seq: list[float], q: float) -> list[float]:
    f = 2.0**q
    return [(f * seq[i + 1] - seq[i]) / (f - 1.0) for i in range(len(seq) - 1)]


def _decay_order(diffs: list[float]) -> float | None:
    """Least-squares decay order q of |diffs| ~ C * 2**(-q*i).

    Fitting over all differences (not just the last pair) keeps the final
    difference informative after a Richardson stage.  Mixed signs or exact
    zeros mean the sequence is not geometric; returns None.
    """
    if any(d == 0.0 for d in diffs):
        return None
    if len({math.copysign(1.0, d) for d in diffs}) != 1:
        return None
    y = [math.log2(abs(d)) for d in diffs]
    x = list(range(len(y)))
    slope = np.polyfit(x, y, 1)[0]
    return -float(slope)


def extrapolate(
    h: TwinHistory, halvings: int, target_order: float | None = None
) -> ExtrapolationResult:
    """Estimate at horizons a / 2**i, i = 0..halvings, and drive a -> 0.

    Each stage eliminates one power of the horizon from the estimate
    sequence.  The first stage assumes first-order decay unless the
    data-estimated order disagrees by more than 20% (continuous Zener
    recordings decay like a**(1-alpha); box impulses carry a growing
    a**-alpha term that the elimination removes).
    """
    if halvings < 2:
        raise InvalidArgumentError(f"need at least 2 halvings, got {halvings}")
    n0 = h.recorded.grid.n
    counts = [n0 // 2**i for i in range(halvings + 1)]
    if counts[-1] < 8:
        raise InvalidArgumentError(
            f"history too short: {n0} samples leave {counts[-1]} < 8 after "
            f"{halvings} halvings"
        )
    histories = [h.truncated(c) for c in counts]
    horizons = tuple(hist.a for hist in histories)
    estimates = tuple(estimate_at(hist, target_order) for hist in histories)

    scale = max(abs(e) for e in estimates)
    floor = _CONTRACTION_FLOOR * (1.0 + scale)
    seq = list(estimates)
    first_diff = max(
        (abs(seq[i + 1] - seq[i]) for i in range(len(seq) - 1)), default=0.0
    )
    orders: list[float] = []
    for stage in range(2):
        if len(seq) < 3:
            break
        diffs = [seq[i + 1] - seq[i] for i in range(len(seq) - 1)]
        if all(abs(d) <= floor for d in diffs):
            break
        q_est = _decay_order(diffs)
        if stage == 0 and q_est is not None and abs(q_est - 1.0) <= 0.2:
            q_est = 1.0
        if q_est is None or abs(2.0**q_est - 1.0) < 0.05:
            break
        orders.append(q_est)
        seq = _richardson(seq, q_est)

    final_diff = max(
        (abs(seq[i + 1] - seq[i]) for i in range(len(seq) - 1)), default=0.0
    )
    converged = final_diff <= max(0.25 * first_diff, floor)
    return ExtrapolationResult(
        horizons, estimates, float(seq[-1]), tuple(orders), converged
    )
