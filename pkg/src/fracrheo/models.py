"""The four fractional constitutive models and their exact case catalog.

Each model couples stress and strain through a spring-pot of order alpha:

* spring-pot            sigma = K * D^a eps
* fractional Voigt      sigma = E * eps + K * D^a eps          (stress programs)
* fractional Maxwell    (1/E) D^a sigma + (1/K) sigma = D^a eps (strain programs)
* fractional Zener      sigma + nu D^a sigma = lam eps + mu D^a eps

``build_problem`` turns a (model, loading program) pair into the exact
two-term fractional equation for the unknown twin quantity,
``initial_condition`` derives the physically meaningful Riemann-Liouville
initial value that accompanies it (zero for every finite load, non-zero
only for impulses), and ``analytic_response`` evaluates the closed-form
response catalog.  The Mittag-Leffler closed forms are validated by
substituting them back into the constitutive law and by agreement with
both numerical solvers; they are not an independent source of truth.

Stress impulses cannot deform any element instantaneously, so the impulse
mass surfaces as the initial value of a fractional derivative of the
response rather than as a classical initial value; strain impulses applied
to elements without instantaneous compliance (bare spring-pot, Voigt) are
rejected as unrealisable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma, rgamma as _rgamma

from .errors import (
    InvalidArgumentError,
    SingularityError,
    UnrealizableLoadError,
    UnsupportedOrderError,
    UnsupportedPairingError,
)
from .fracops import PowerTerm, gl_deriv
from .grids import LoadingProgram, Signal, SingularSignal, TimeGrid, sample_program
from .mittag_leffler import MLParams, ml_values
from .solver import FDEProblem, Forcing, InitialCondition


def _check_alpha(alpha: float) -> None:
    # alpha = 1 is admitted so the catalog can evaluate classical limits;
    # equation building and solving require the open interval
    if not (math.isfinite(alpha) and 0.0 < alpha <= 1.0):
        raise InvalidArgumentError(f"alpha must lie in (0, 1], got {alpha}")


def _check_positive(**fields: float) -> None:
    for name, value in fields.items():
        if not (math.isfinite(value) and value > 0.0):
            raise InvalidArgumentError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class SpringPotParams:
    """sigma = K * D^a eps; interpolates spring (a -> 0) and dashpot (a -> 1)."""

    K: float
    alpha: float

    def __post_init__(self):
        _check_positive(K=self.K)
        _check_alpha(self.alpha)


@dataclass(frozen=True)
class VoigtParams:
    """Spring E in parallel with a spring-pot (K, alpha)."""

    E: float
    K: float
    alpha: float

    def __post_init__(self):
        _check_positive(E=self.E, K=self.K)
        _check_alpha(self.alpha)

    @property
    def rate(self) -> float:
        """Inverse retardation scale E/K (units time**-alpha)."""
        return self.E / self.K


@dataclass(frozen=True)
class MaxwellParams:
    """Spring E in series with a spring-pot (K, alpha)."""

    E: float
    K: float
    alpha: float

    def __post_init__(self):
        _check_positive(E=self.E, K=self.K)
        _check_alpha(self.alpha)

    @property
    def rate(self) -> float:
        """Inverse relaxation scale E/K (units time**-alpha)."""
        return self.E / self.K


@dataclass(frozen=True)
class ZenerParams:
    """Three-parameter fractional solid: sigma + nu D^a sigma = lam eps + mu D^a eps.

    lam is the long-term modulus, mu/nu the instantaneous modulus E0; a
    solid must be instantaneously stiffer than in the long term.  The
    canonical fields are (lam, mu, nu, alpha); ``from_moduli`` accepts the
    (E0, E_inf, K) parameterisation with mu = K (E0 - E_inf) / E0 and
    nu = mu / E0.
    """

    lam: float
    mu: float
    nu: float
    alpha: float

    def __post_init__(self):
        _check_positive(lam=self.lam, mu=self.mu, nu=self.nu)
        _check_alpha(self.alpha)
        if self.instantaneous_modulus <= self.lam:
            raise InvalidArgumentError(
                "instantaneous modulus mu/nu must exceed the long-term modulus"
            )

    @classmethod
    def from_moduli(cls, E0: float, E_inf: float, K: float, alpha: float) -> "ZenerParams":
        _check_positive(E0=E0, E_inf=E_inf, K=K)
        if E0 <= E_inf:
            raise InvalidArgumentError(
                "instantaneous modulus must exceed the long-term modulus"
            )
        mu = K * (E0 - E_inf) / E0
        return cls(E_inf, mu, mu / E0, alpha)

    @property
    def instantaneous_modulus(self) -> float:
        return self.mu / self.nu

    @property
    def long_term_modulus(self) -> float:
        return self.lam


ModelParams = SpringPotParams | VoigtParams | MaxwellParams | ZenerParams

_TWIN = {"stress": "strain", "strain": "stress"}


def _require_fractional(model: ModelParams) -> float:
    if model.alpha >= 1.0:
        raise UnsupportedOrderError(
            "alpha = 1 is the classical limit, available only through the "
            "analytic catalog"
        )
    return model.alpha


def _reject_bad_pairs(model: ModelParams, load: LoadingProgram) -> None:
    if isinstance(model, (SpringPotParams, VoigtParams)) and (
        load.quantity == "strain" and load.kind == "impulse"
    ):
        raise UnrealizableLoadError(
            "a strain impulse cannot be applied to a spring-pot element: the "
            "stress response diverges like t**-(1+alpha)"
        )
    if isinstance(model, VoigtParams) and load.quantity == "strain":
        raise UnsupportedPairingError(
            "the fractional Voigt model is used for prescribed stress programs"
        )
    if isinstance(model, MaxwellParams) and load.quantity == "stress":
        raise UnsupportedPairingError(
            "the fractional Maxwell model is used for prescribed strain "
            "programs (its stress-impulse strain response equals the bare "
            "spring-pot's)"
        )
    if isinstance(model, SpringPotParams) and load.quantity == "strain":
        if load.kind != "impulse":
            raise UnsupportedPairingError(
                "prescribed-strain responses of a bare spring-pot follow "
                "explicitly from sigma = K * D^a eps; use analytic_response"
            )


def _rl_deriv_term(coeff: float, exponent: float, alpha: float) -> PowerTerm:
    """Exact D^alpha of coeff * t**exponent as a forcing term."""
    out = coeff * _gamma(1.0 + exponent) * _rgamma(1.0 + exponent - alpha)
    new_exp = exponent - alpha
    if out != 0.0 and new_exp <= -1.0:
        raise SingularityError(
            f"D^{alpha} of t**{exponent} is non-integrable (exponent {new_exp})"
        )
    return PowerTerm(out, new_exp if out != 0.0 else 0.0)


def _load_terms(load: LoadingProgram) -> list[tuple[float, float]]:
    """(coeff, exponent) power representation of an analytic load."""
    if load.kind == "step":
        return [(load.amplitude, 0.0)]
    if load.kind == "ramp":
        return [(load.amplitude, 1.0)]
    if load.kind == "power_law":
        return [(load.amplitude, load.exponent)]
    raise InvalidArgumentError(f"load kind {load.kind!r} has no power representation")


def build_problem(model: ModelParams, load: LoadingProgram) -> FDEProblem:
    """Exact two-term fractional equation for the response to a load.

    The unknown is the load's twin quantity; forcing power terms keep the
    t**-alpha shapes produced by differentiating step loads exact.
    Sampled loads are differentiated numerically where the constitutive
    law requires it and bind the problem to the recording grid.
    """
    alpha = _require_fractional(model)
    _reject_bad_pairs(model, load)
    unknown = _TWIN[load.quantity]
    ic = initial_condition(model, load)

    if isinstance(model, SpringPotParams):
        # K D^a eps = sigma(t)
        if load.kind == "impulse":
            forcing = Forcing()
        elif load.kind == "sampled":
            forcing = Forcing(sampled=load.signal)
        else:
            forcing = Forcing(tuple(PowerTerm(c, e) for c, e in _load_terms(load)))
        return FDEProblem(0.0, model.K, alpha, forcing, ic, unknown)

    if isinstance(model, VoigtParams):
        # E eps + K D^a eps = sigma(t)
        if load.kind == "impulse":
            forcing = Forcing()
        elif load.kind == "sampled":
            forcing = Forcing(sampled=load.signal)
        else:
            forcing = Forcing(tuple(PowerTerm(c, e) for c, e in _load_terms(load)))
        return FDEProblem(model.E, model.K, alpha, forcing, ic, unknown)

    if isinstance(model, MaxwellParams):
        # (1/E) D^a sigma + (1/K) sigma = D^a eps(t)
        if load.kind == "impulse":
            forcing = Forcing()
        elif load.kind == "sampled":
            d = gl_deriv(sample_program(load, load.signal.grid), alpha)
            if not d.is_regular:
                raise SingularityError(
                    "numerical D^a of the sampled strain produced a "
                    "non-representable singular part"
                )
            forcing = Forcing(sampled=d.regular)
        else:
            forcing = Forcing(
                tuple(_rl_deriv_term(c, e, alpha) for c, e in _load_terms(load))
            )
        return FDEProblem(1.0 / model.K, 1.0 / model.E, alpha, forcing, ic, unknown)

    # Zener: the equation for either unknown has the same two-term left side
    if load.quantity == "stress":
        c1, c0 = model.mu, model.lam  # lam eps + mu D^a eps = RHS(sigma)
        pass_c, deriv_c = 1.0, model.nu
    else:
        c1, c0 = model.nu, 1.0  # sigma + nu D^a sigma = RHS(eps)
        pass_c, deriv_c = model.lam, model.mu
    if load.kind == "impulse":
        forcing = Forcing()
    elif load.kind == "sampled":
        base = sample_program(load, load.signal.grid)
        d = gl_deriv(base, alpha)
        if not d.is_regular:
            raise SingularityError(
                "numerical D^a of the sampled load produced a "
                "non-representable singular part"
            )
        combined = pass_c * load.signal.values + deriv_c * d.regular.values
        forcing = Forcing(sampled=Signal(load.signal.grid, combined))
    else:
        terms: list[PowerTerm] = []
        for c, e in _load_terms(load):
            terms.append(PowerTerm(pass_c * c, e))
            terms.append(_rl_deriv_term(deriv_c * c, e, alpha))
        forcing = Forcing(tuple(terms))
    return FDEProblem(c0, c1, alpha, forcing, ic, unknown)


def initial_condition(model: ModelParams, load: LoadingProgram) -> InitialCondition:
    """Riemann-Liouville initial value accompanying the built equation.

    Integrating the constitutive law and taking t -> 0+ gives zero for
    every finite load (the twin's first-order integral vanishes); only
    Dirac impulses leave their mass behind:

    * spring-pot, stress impulse B:  [D^(a-1) eps] -> B / K
    * Voigt, stress impulse B:       [D^(a-1) eps] -> B / K
    * Zener, stress impulse B:       [D^(a-1) eps] -> B / mu
    * Zener, strain impulse A:       [D^(a-1) sig] -> A / nu
    * Maxwell, strain impulse A:     [D^-1 sig]    -> A * E
      (the stress response carries the Dirac content A * E * delta(t))
    """
    alpha = _require_fractional(model)
    _reject_bad_pairs(model, load)
    unknown = _TWIN[load.quantity]

    if load.kind != "impulse":
        return InitialCondition(alpha - 1.0, 0.0, unknown)

    mass = load.amplitude
    if isinstance(model, SpringPotParams):
        return InitialCondition(alpha - 1.0, mass / model.K, unknown)
    if isinstance(model, VoigtParams):
        return InitialCondition(alpha - 1.0, mass / model.K, unknown)
    if isinstance(model, MaxwellParams):
        return InitialCondition(-1.0, mass * model.E, unknown)
    if load.quantity == "stress":
        return InitialCondition(alpha - 1.0, mass / model.mu, unknown)
    return InitialCondition(alpha - 1.0, mass / model.nu, unknown)


def dirac_content(model: ModelParams, load: LoadingProgram) -> float:
    """Dirac mass carried by the response itself (zero except impulse cases
    on elements with instantaneous stiffness)."""
    if load.kind != "impulse":
        return 0.0
    if isinstance(model, MaxwellParams) and load.quantity == "strain":
        return load.amplitude * model.E
    if isinstance(model, ZenerParams) and load.quantity == "strain":
        return load.amplitude * model.instantaneous_modulus
    return 0.0


def initial_value(model: ModelParams, load: LoadingProgram) -> float:
    """Classical limit u(0+) of the response to a finite analytic load.

    This is the quantity a Caputo formulation would take as its initial
    condition; impulse responses have no finite classical initial value.
    """
    _reject_bad_pairs(model, load)
    if load.kind == "impulse":
        raise UnrealizableLoadError("impulse responses are unbounded at t -> 0+")
    if load.kind == "sampled":
        raise UnsupportedPairingError("classical initial values need analytic loads")
    if load.kind == "step":
        if isinstance(model, MaxwellParams) and load.quantity == "strain":
            return model.E * load.amplitude
        if isinstance(model, ZenerParams):
            if load.quantity == "strain":
                return model.instantaneous_modulus * load.amplitude
            return load.amplitude / model.instantaneous_modulus
    # every other finite analytic load starts from rest
    return 0.0


def _power_signal(
    grid: TimeGrid, coeff: float, exponent: float, quantity: str
) -> SingularSignal:
    """coeff * t**exponent as a SingularSignal (symbolic when exponent <= 0)."""
    zero = Signal(grid, np.zeros(grid.n), quantity)
    if coeff == 0.0:
        return SingularSignal.from_signal(zero)
    if exponent <= 0.0:
        if exponent <= -1.0:
            raise SingularityError(
                f"response exponent {exponent} is not integrable"
            )
        return SingularSignal(zero, coeff, exponent)
    vals = coeff * grid.times**exponent
    return SingularSignal.from_signal(
        Signal(grid, vals, quantity), (exponent,)
    )


def _ml_impulse_signal(
    grid: TimeGrid, coeff: float, alpha: float, q: float, quantity: str
) -> SingularSignal:
    """coeff * t**(a-1) * E_{a,a}(-q t**a), leading power split symbolically."""
    t = grid.times
    e_aa = ml_values(MLParams(alpha, alpha), -q * t**alpha)
    reg = coeff * t ** (alpha - 1.0) * (e_aa - _rgamma(alpha))
    return SingularSignal(
        Signal(grid, reg, quantity), coeff * _rgamma(alpha), alpha - 1.0
    )


def analytic_response(
    model: ModelParams, load: LoadingProgram, grid: TimeGrid
) -> SingularSignal:
    """Closed-form response catalog evaluated on a grid.

    Spring-pot responses are pure powers of t (the power rule applied to
    the load); the Voigt, Maxwell and Zener responses to steps and
    impulses resum into one- and two-parameter Mittag-Leffler functions.
    Strain-impulse responses of Maxwell and Zener elements additionally
    carry a Dirac term (``dirac_content``) that no grid can hold; the
    returned signal is the t > 0 part.  Sampled loads have no closed form.
    """
    alpha = model.alpha
    _reject_bad_pairs(model, load)
    unknown = _TWIN[load.quantity]
    t = grid.times

    if load.kind == "sampled":
        raise UnsupportedPairingError("sampled loads have no closed-form response")

    if isinstance(model, SpringPotParams):
        K = model.K
        if load.quantity == "stress":
            if load.kind == "impulse":
                return _power_signal(
                    grid, load.amplitude / K * _rgamma(alpha), alpha - 1.0, unknown
                )
            (c, e), = _load_terms(load)
            coeff = c / K * _gamma(1.0 + e) * _rgamma(1.0 + e + alpha)
            return _power_signal(grid, coeff, e + alpha, unknown)
        # prescribed strain: sigma = K * D^a eps, exact by the power rule
        (c, e), = _load_terms(load)
        coeff = K * c * _gamma(1.0 + e) * _rgamma(1.0 + e - alpha)
        if coeff != 0.0 and e - alpha <= -1.0:
            raise SingularityError(
                f"stress response exponent {e - alpha} is not integrable"
            )
        return _power_signal(grid, coeff, e - alpha, unknown)

    if alpha == 1.0 and load.kind == "impulse":
        raise UnsupportedOrderError(
            "impulse responses at the classical limit alpha = 1 collapse to "
            "Dirac terms with no t > 0 part"
        )

    if isinstance(model, VoigtParams):
        r = model.rate
        if load.kind == "step":
            vals = load.amplitude / model.E * (
                1.0 - ml_values(MLParams(alpha), -r * t**alpha)
            )
            return SingularSignal.from_signal(Signal(grid, vals, unknown))
        if load.kind == "impulse":
            return _ml_impulse_signal(
                grid, load.amplitude / model.K, alpha, r, unknown
            )
        raise UnsupportedPairingError(
            f"no closed form catalogued for a Voigt element under a "
            f"{load.kind} stress program"
        )

    if isinstance(model, MaxwellParams):
        r = model.rate
        if load.kind == "step":
            vals = model.E * load.amplitude * ml_values(MLParams(alpha), -r * t**alpha)
            return SingularSignal.from_signal(Signal(grid, vals, unknown))
        if load.kind == "impulse":
            return _ml_impulse_signal(
                grid, -load.amplitude * model.E * r, alpha, r, unknown
            )
        raise UnsupportedPairingError(
            f"no closed form catalogued for a Maxwell element under a "
            f"{load.kind} strain program"
        )

    # Zener
    lam, mu, nu = model.lam, model.mu, model.nu
    E0 = model.instantaneous_modulus
    if load.quantity == "stress":
        q = lam / mu
        if load.kind == "step":
            s0 = load.amplitude
            vals = s0 * (
                1.0 / lam
                - (1.0 / lam - 1.0 / E0) * ml_values(MLParams(alpha), -q * t**alpha)
            )
            return SingularSignal.from_signal(Signal(grid, vals, unknown))
        if load.kind == "impulse":
            return _ml_impulse_signal(grid, load.amplitude / mu, alpha, q, unknown)
    else:
        q = 1.0 / nu
        if load.kind == "step":
            e0 = load.amplitude
            vals = e0 * (
                lam + (E0 - lam) * ml_values(MLParams(alpha), -q * t**alpha)
            )
            return SingularSignal.from_signal(Signal(grid, vals, unknown))
        if load.kind == "impulse":
            return _ml_impulse_signal(grid, load.amplitude / nu, alpha, q, unknown)
    raise UnsupportedPairingError(
        f"no closed form catalogued for a Zener element under a "
        f"{load.kind} {load.quantity} program"
    )
