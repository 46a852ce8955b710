"""Driven harmonic-oscillator thermal machine: currents, fluctuations and TUR trade-offs."""

from ._qtur import *  # noqa: F401,F403
from ._qtur import (
    Axis,
    MachineParams,
    QuadratureConfig,
    evaluate_point,
    performance,
)


def point(**params):
    """Observables and performance metrics at one parameter point."""
    p = MachineParams(**params)
    obs = evaluate_point(p)
    return obs, performance(obs, p)


__all__ = ["Axis", "MachineParams", "QuadratureConfig", "evaluate_point", "performance", "point"]
