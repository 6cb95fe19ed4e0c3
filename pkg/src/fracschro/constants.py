"""Closed-form constants: uncertainty-principle bounds, time thresholds and
conversions between resolvent and spectral observability estimates.

The universal constants ``C`` and ``C'`` of the uncertainty-principle bounds
are only known to exist; they are inputs here and default to 10, a
placeholder rather than a known value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "DEFAULT_UNIVERSAL_C", "ConstantValue", "SpectralBudget", "ResolventBudget",
    "kovrijkine_cube", "kovrijkine_intervals", "miller_time",
    "spectral_from_resolvent", "resolvent_from_spectral",
    "free_observability_budget", "ResolventConversion",
]

DEFAULT_UNIVERSAL_C = 10.0  # placeholder, not a derived value


@dataclass(frozen=True)
class ConstantValue:
    """A computed constant with the inputs that produced it and any flags."""

    value: float
    inputs: dict = field(default_factory=dict)
    flags: tuple = ()

    def __float__(self):
        return self.value

    @property
    def overflow(self) -> bool:
        return "overflow" in self.flags

    def to_json(self) -> dict:
        return {"inputs": self.inputs, "value": self.value, "flags": list(self.flags)}


@dataclass(frozen=True)
class SpectralBudget:
    """Constants ``(k, D)`` of a spectral estimate on bands of half-width ``sqrt(D)``."""

    k: float
    D: float

    def __post_init__(self):
        for name in ("k", "D"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and positive")


@dataclass(frozen=True)
class ResolventBudget:
    """Constants ``(M, m)`` of a resolvent estimate."""

    M: float
    m: float

    def __post_init__(self):
        for name in ("M", "m"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and positive")


def _power(base: float, exponent: float, inputs: dict) -> ConstantValue:
    try:
        value = base ** exponent
    except OverflowError:
        return ConstantValue(math.inf, inputs, ("overflow",))
    if math.isinf(value):
        return ConstantValue(math.inf, inputs, ("overflow",))
    return ConstantValue(value, inputs)


def _check_gamma(gamma):
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")


def kovrijkine_cube(gamma, d, L, b, C=DEFAULT_UNIVERSAL_C) -> ConstantValue:
    """``(C^d / γ)^(C d (L b + 1))`` for a frequency cube of side ``b``."""
    _check_gamma(gamma)
    if d < 1 or not (L > 0 and b > 0 and C > 0):
        raise ValueError("need d >= 1 and L, b, C > 0")
    inputs = dict(gamma=gamma, d=d, L=L, b=b, C=C)
    try:
        base = C ** d / gamma
    except OverflowError:
        return ConstantValue(math.inf, inputs, ("overflow",))
    return _power(base, C * d * (L * b + 1), inputs)


def kovrijkine_intervals(gamma, m, L, b, C=DEFAULT_UNIVERSAL_C) -> ConstantValue:
    """``(C/γ)^(L b (C/γ)^m + m - 1/2)`` for ``m`` frequency intervals of length ``b``."""
    _check_gamma(gamma)
    if int(m) != m or m < 1:
        raise ValueError("m must be a positive integer")
    if not (L > 0 and b > 0 and C > 0):
        raise ValueError("need L, b, C > 0")
    inputs = dict(gamma=gamma, m=int(m), L=L, b=b, C=C)
    q = C / gamma
    try:
        exponent = L * b * q ** m + m - 0.5
    except OverflowError:
        return ConstantValue(math.inf, inputs, ("overflow",))
    return _power(q, exponent, inputs)


def miller_time(budget: SpectralBudget) -> float:
    """Threshold ``π sqrt((1 + k) / D)``; observability holds for every larger time."""
    return math.pi * math.sqrt((1 + budget.k) / budget.D)


def spectral_from_resolvent(r: ResolventBudget, D: float) -> SpectralBudget:
    """Spectral constant ``k = m / (1 - M D)`` valid for ``0 < D < 1/M``."""
    if not 0 < D < 1 / r.M:
        raise ValueError("need 0 < D < 1/M")
    return SpectralBudget(r.m / (1 - r.M * D), D)


@dataclass(frozen=True)
class ResolventConversion:
    budget: ResolventBudget
    time_threshold: float
    spectral_threshold: float

    @property
    def consistent(self) -> bool:
        return self.time_threshold > self.spectral_threshold


def resolvent_from_spectral(s: SpectralBudget, epsilon: float) -> ResolventConversion:
    """Resolvent constants ``M = (1 + k(1 + ε²)) / D`` and ``m = k(1 + ε⁻²)``.

    Also reports ``π sqrt(M)``, which always exceeds the spectral threshold.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    M = (1 + s.k * (1 + epsilon ** 2)) / s.D
    m = s.k * (1 + epsilon ** -2)
    budget = ResolventBudget(M, m)
    return ResolventConversion(budget, math.pi * math.sqrt(M), miller_time(s))


def free_observability_budget(gamma, L, s, D, C=DEFAULT_UNIVERSAL_C, C_prime=DEFAULT_UNIVERSAL_C):
    """Uniform spectral constant for a thick set in 1D and its time threshold.

    ``d_const`` is the square of the larger of the two-interval bound (band
    away from the origin, intervals of length at most ``sqrt(D)/s``) and the
    single-interval bound (band within ``[0, (2 sqrt(D) + 1)^(1/2s)]``).
    Returns ``(d_const, time_threshold)`` as :class:`ConstantValue`.
    """
    if s < 0.5:
        raise ValueError("s must be >= 1/2")
    _check_gamma(gamma)
    if not (L > 0 and D > 0 and C > 0 and C_prime > 0):
        raise ValueError("need L, D, C, C' > 0")
    inputs = dict(gamma=gamma, L=L, s=s, D=D, C=C, C_prime=C_prime)
    sqD = math.sqrt(D)
    two = kovrijkine_intervals(gamma, 2, L, sqD / s, C_prime)
    q = C / gamma
    one = _power(q, C * (1 + L * (2 * sqD + 1) ** (1 / (2 * s))), inputs)
    if two.overflow or one.overflow:
        inf = ConstantValue(math.inf, inputs, ("overflow",))
        return inf, inf
    big = max(two.value, one.value)
    d_const = _power(big, 2, inputs)
    if d_const.overflow:
        return d_const, ConstantValue(math.inf, inputs, ("overflow",))
    return d_const, ConstantValue(miller_time(SpectralBudget(d_const.value, D)), inputs)
