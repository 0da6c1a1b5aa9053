"""Annual cost evolution and the Monte-Carlo scenario engine.

Each replicate walks the horizon year by year: simulate one trip with the
modes' current mean costs, then compound every mode's cost down by a sampled
improvement rate.  All randomness flows through substreams derived from the
scenario seed and (year, replicate) labels, so results are independent of
scheduling order and worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .config import ScenarioConfig, config_fingerprint, resolve_registry
from .modes import ModeId, ModeRegistry, ModeSpec, adjust_reference_cost
from .stochastics import (RngStream, derive_stream, lognormal_from_moments,
                          sample_lognormal)
from .tripsim import TripRecord, simulate_trip

_MAX_RATE_REDRAWS = 100


@dataclass(frozen=True)
class ModeState:
    """Current mean operational cost of one mode at a point in time."""

    spec: ModeSpec
    current_cost_mean: float
    year: int


def evolve_mode_state(state: ModeState, stream: RngStream) -> ModeState:
    """Advance a mode one year: cost * (1 - r) with r sampled log-normally
    around the mode's improvement rate.

    Sampled rates are strictly positive, so costs strictly decrease whenever
    the mean rate is positive.  A draw >= 1 (possible only for extreme user
    configurations) is re-drawn, then clamped to 0.99 as a last resort.
    """
    spec = state.spec
    if spec.improvement_rate_mean == 0.0:
        return replace(state, year=state.year + 1)
    params = lognormal_from_moments(
        spec.improvement_rate_mean,
        spec.rate_stdev_fraction * spec.improvement_rate_mean)
    r = sample_lognormal(params, stream)
    attempts = 0
    while r >= 1.0 and attempts < _MAX_RATE_REDRAWS:
        r = sample_lognormal(params, stream)
        attempts += 1
    if r >= 1.0:
        r = 0.99
    return replace(state,
                   current_cost_mean=state.current_cost_mean * (1.0 - r),
                   year=state.year + 1)


@dataclass
class ResultSet:
    """Year x replicate table of trip records plus the mode-mean trajectories
    that produced them."""

    config: ScenarioConfig
    fingerprint: str
    records: list[TripRecord]
    mode_means: dict[tuple[int, int], dict[ModeId, float]]


def _initial_states(config: ScenarioConfig,
                    registry: ModeRegistry) -> dict[ModeId, ModeState]:
    states: dict[ModeId, ModeState] = {}
    for spec in registry:
        if spec.base_year > config.start_year:
            raise ValueError(
                f"mode {spec.id!r} base_year {spec.base_year} is after "
                f"start_year {config.start_year}")
        cost = adjust_reference_cost(
            spec.base_cost_mean, spec.improvement_rate_mean,
            spec.base_year, config.start_year)
        states[spec.id] = ModeState(spec=spec, current_cost_mean=cost,
                                    year=config.start_year)
    return states


def compute_shared_means(config: ScenarioConfig,
                         registry: ModeRegistry) -> dict[int, dict[ModeId, float]]:
    """One sampled cost trajectory per mode, shared by all replicates."""
    states = _initial_states(config, registry)
    means: dict[int, dict[ModeId, float]] = {}
    for year in range(config.start_year, config.end_year + 1):
        means[year] = {m: s.current_cost_mean for m, s in states.items()}
        stream = derive_stream(config.seed, ("scenario", year, "shared-rates"))
        states = {m: evolve_mode_state(s, stream) for m, s in states.items()}
    return means


def run_replicate(config: ScenarioConfig,
                  registry: ModeRegistry,
                  replicate: int,
                  shared_means: dict[int, dict[ModeId, float]] | None = None,
                  ) -> tuple[list[TripRecord], dict[tuple[int, int], dict[ModeId, float]]]:
    """Simulate one replicate across the whole horizon, returning one trip
    record per year and the mode means each trip saw.

    Under the per-replicate policy each replicate evolves its own cost
    trajectory; under the shared policy all replicates read the single
    trajectory in ``shared_means``.
    """
    shared = config.evolution_policy == "shared"
    if shared and shared_means is None:
        shared_means = compute_shared_means(config, registry)

    enabled = registry.ids()
    stdev_fractions = {s.id: s.cost_stdev_fraction for s in registry}
    handling_params = lognormal_from_moments(
        config.handling_mean_usd_per_tonne,
        config.handling_stdev_fraction * config.handling_mean_usd_per_tonne)

    states = None if shared else _initial_states(config, registry)
    records: list[TripRecord] = []
    means_seen: dict[tuple[int, int], dict[ModeId, float]] = {}
    for year in range(config.start_year, config.end_year + 1):
        if shared:
            current = shared_means[year]
        else:
            current = {m: s.current_cost_mean for m, s in states.items()}
        means_seen[(year, replicate)] = dict(current)

        trip_stream = derive_stream(
            config.seed, ("scenario", year, replicate, "trip"))
        records.append(simulate_trip(
            config.trip_distance_km, config.freight_tonnes, enabled,
            current, handling_params, stdev_fractions, year, replicate,
            trip_stream, min_leg=config.min_leg_km))

        if not shared:
            rate_stream = derive_stream(
                config.seed, ("scenario", year, replicate, "rates"))
            states = {m: evolve_mode_state(s, rate_stream)
                      for m, s in states.items()}
    return records, means_seen


def run_scenario(config: ScenarioConfig,
                 registry: ModeRegistry | None = None,
                 workers: int = 1) -> ResultSet:
    """Run every replicate and collect the sorted ResultSet.

    The output is byte-identical for any ``workers`` value: each replicate
    draws only from its own derived streams and records are sorted
    (year, replicate) afterwards.
    """
    config.validate()
    if registry is None:
        registry = resolve_registry(config)

    shared_means = None
    if config.evolution_policy == "shared":
        shared_means = compute_shared_means(config, registry)

    def one(rep: int):
        return run_replicate(config, registry, rep, shared_means)

    replicates = range(config.iterations)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, replicates))
    else:
        parts = [one(rep) for rep in replicates]

    records: list[TripRecord] = []
    mode_means: dict[tuple[int, int], dict[ModeId, float]] = {}
    for recs, means in parts:
        records.extend(recs)
        mode_means.update(means)
    records.sort(key=lambda r: (r.year, r.replicate))
    return ResultSet(config=config, fingerprint=config_fingerprint(config),
                     records=records, mode_means=mode_means)
