"""Built-in worked examples."""
from __future__ import annotations

from . import navier_stokes, neo_hooke, pnp
from .base import Scenario, TermGroup
from .hyperelastic import (
    InadmissibleDeformation,
    StrainState,
    cancellation_probe,
    neo_hooke_W_expanded,
    neo_hooke_W_full,
)

_BUILDERS = {
    "navier_stokes": navier_stokes.build,
    "neo_hooke": neo_hooke.build,
    "neo_hooke_direct": neo_hooke.build_direct,
    "pnp": pnp.build,
}

SCENARIO_NAMES = tuple(_BUILDERS)


def builtin_scenario(name: str) -> Scenario:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIO_NAMES)}") from None
    return builder()


__all__ = [
    "InadmissibleDeformation",
    "SCENARIO_NAMES",
    "Scenario",
    "StrainState",
    "TermGroup",
    "builtin_scenario",
    "cancellation_probe",
    "neo_hooke_W_expanded",
    "neo_hooke_W_full",
]
