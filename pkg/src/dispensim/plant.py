"""Discrete-time plant: an integrator that dispenses while the motor runs.

The only state variable is accumulated motor-on time in integer
milliseconds; dispensed volume is derived from it on demand, so no
rounding drift can build up no matter how the run is chopped into steps.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .peripherals import MotorMode

DEFAULT_FLOW_K_MS_PER_L = 26_000
DEFAULT_TANK_UL = 10_000_000


@dataclass(frozen=True)
class PlantState:
    """Pump plant with a finite reservoir.

    max_on_ms caps the accumulator at the last millisecond for which the
    derived volume still fits in the tank; flow past that point stops and
    the plant reports empty.
    """

    flow_k_ms_per_l: int = DEFAULT_FLOW_K_MS_PER_L
    initial_tank_ul: int = DEFAULT_TANK_UL
    motor_on_ms: int = 0
    max_on_ms: int = 0

    @property
    def empty(self) -> bool:
        return self.motor_on_ms >= self.max_on_ms


def fresh_plant(
    flow_k_ms_per_l: int = DEFAULT_FLOW_K_MS_PER_L,
    tank_ul: int = DEFAULT_TANK_UL,
) -> PlantState:
    if flow_k_ms_per_l <= 0:
        raise ValueError("flow constant must be positive")
    if tank_ul < 0:
        raise ValueError("tank volume cannot be negative")
    k = flow_k_ms_per_l
    # Largest on-time whose derived volume still fits in the tank.
    cap = (tank_ul * k + k - 1 - k // 2) // 1_000_000
    return PlantState(
        flow_k_ms_per_l=k,
        initial_tank_ul=tank_ul,
        motor_on_ms=0,
        max_on_ms=max(cap, 0),
    )


def dispensed_ul(plant: PlantState) -> int:
    """Exact dispensed volume, microliters, final division half-up."""
    k = plant.flow_k_ms_per_l
    return (plant.motor_on_ms * 1_000_000 + k // 2) // k


def tank_ul(plant: PlantState) -> int:
    return plant.initial_tank_ul - dispensed_ul(plant)


def step_plant(plant: PlantState, dt_ms: int, mode: MotorMode) -> PlantState:
    """Advance the plant by dt_ms under the decoded motor mode.

    Only FORWARD moves fluid; STOP, REVERSE and the invalid brake state
    all integrate to zero. The accumulator clamps when the tank runs dry.
    """
    if dt_ms <= 0:
        raise ValueError("dt_ms must be positive")
    if mode is not MotorMode.FORWARD:
        return plant
    new_on = min(plant.motor_on_ms + dt_ms, plant.max_on_ms)
    if new_on == plant.motor_on_ms:
        return plant
    return replace(plant, motor_on_ms=new_on)
