"""Integrator plant: exactness, drift-freedom, tank clamping."""

import math
import random
from fractions import Fraction

import pytest

from dispensim.peripherals import MotorMode
from dispensim.plant import (
    PlantState,
    dispensed_ul,
    fresh_plant,
    step_plant,
    tank_ul,
)


def run_schedule(plant, schedule, dt_ms=10):
    for on in schedule:
        mode = MotorMode.FORWARD if on else MotorMode.STOP
        plant = step_plant(plant, dt_ms, mode)
    return plant


def oracle_ul(on_ms_total, flow_k):
    """Independent rational model: on-time over k liters, half-up in µL."""
    micro = Fraction(on_ms_total, flow_k) * 1_000_000
    return math.floor(micro + Fraction(1, 2))


def test_fresh_plant_is_full_and_still():
    plant = fresh_plant()
    assert dispensed_ul(plant) == 0
    assert tank_ul(plant) == 10_000_000
    assert not plant.empty


def test_one_liter_of_motor_time():
    plant = run_schedule(fresh_plant(), [True] * 2600)
    assert dispensed_ul(plant) == 1_000_000
    assert tank_ul(plant) == 9_000_000


def test_stop_reverse_and_brake_do_not_pump():
    plant = fresh_plant()
    for mode in (MotorMode.STOP, MotorMode.REVERSE, MotorMode.BRAKE_INVALID):
        plant = step_plant(plant, 10_000, mode)
    assert dispensed_ul(plant) == 0


def test_zero_or_negative_step_is_rejected():
    with pytest.raises(ValueError):
        step_plant(fresh_plant(), 0, MotorMode.STOP)
    with pytest.raises(ValueError):
        step_plant(fresh_plant(), -10, MotorMode.FORWARD)


def test_single_tick_increment():
    plant = run_schedule(fresh_plant(), [True])
    # 10 ms at 26,000 ms/L is 384.6 µL, rounded half-up.
    assert dispensed_ul(plant) == 385


def test_chopping_a_run_into_steps_changes_nothing():
    total_ms = 26_000
    whole = step_plant(fresh_plant(), total_ms, MotorMode.FORWARD)
    chopped = fresh_plant()
    rng = random.Random(3)
    remaining = total_ms
    while remaining:
        dt = min(remaining, rng.randrange(1, 40))
        chopped = step_plant(chopped, dt, MotorMode.FORWARD)
        remaining -= dt
    assert dispensed_ul(chopped) == dispensed_ul(whole)


def test_dispensed_matches_rational_oracle_on_random_schedules():
    rng = random.Random(5)
    for _ in range(200):
        flow_k = rng.choice([26_000, 26_000, 13_000, 52_000, 9_973])
        plant = fresh_plant(flow_k, tank_ul=1_000_000_000)
        on_ms = 0
        for _ in range(rng.randrange(1, 300)):
            on = rng.random() < 0.5
            plant = step_plant(plant, 10, MotorMode.FORWARD if on else MotorMode.STOP)
            on_ms += 10 if on else 0
        assert dispensed_ul(plant) == oracle_ul(on_ms, flow_k)


def test_volume_conservation():
    rng = random.Random(9)
    plant = fresh_plant()
    for _ in range(5_000):
        on = rng.random() < 0.7
        plant = step_plant(plant, 10, MotorMode.FORWARD if on else MotorMode.STOP)
        assert dispensed_ul(plant) + tank_ul(plant) == plant.initial_tank_ul


def test_dispensed_is_monotone_in_on_time():
    plant = fresh_plant()
    previous = 0
    for _ in range(3_000):
        plant = step_plant(plant, 10, MotorMode.FORWARD)
        current = dispensed_ul(plant)
        assert current >= previous
        previous = current


def test_tank_runs_dry_and_clamps():
    plant = fresh_plant(tank_ul=1_000_000)
    plant = step_plant(plant, 60_000, MotorMode.FORWARD)
    assert plant.empty
    assert dispensed_ul(plant) == 1_000_000
    assert tank_ul(plant) == 0
    after = step_plant(plant, 10_000, MotorMode.FORWARD)
    assert dispensed_ul(after) == 1_000_000


def test_tank_never_overdrawn_near_the_boundary():
    for tank in (1_000_000, 999_999, 385, 384, 1):
        plant = fresh_plant(tank_ul=tank)
        plant = step_plant(plant, 10_000_000, MotorMode.FORWARD)
        assert 0 <= tank_ul(plant)
        assert dispensed_ul(plant) <= tank


def test_plant_state_is_a_value():
    plant = fresh_plant()
    stepped = step_plant(plant, 10, MotorMode.FORWARD)
    assert plant == fresh_plant()
    assert stepped != plant
    assert isinstance(stepped, PlantState)


def test_invalid_construction_rejected():
    with pytest.raises(ValueError):
        fresh_plant(flow_k_ms_per_l=0)
    with pytest.raises(ValueError):
        fresh_plant(tank_ul=-1)
