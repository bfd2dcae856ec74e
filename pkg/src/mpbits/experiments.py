"""Monte Carlo harness: soundness, completeness, collision rate, sweeps.

Four experiment kinds share one execution engine:

* soundness: classify streams actually generated by sampled threshold
  networks; any RANDOM verdict is a correctness failure, not a statistic.
* completeness-single / completeness-multi: classify uniform random bits
  and report how often the verdict is RANDOM.
* collision: draw m points from {0,1}^n per trial and compare the
  all-distinct rate against the birthday lower bound 1 - m^2/2^n.

Reproducibility contract.  Trial i of a run seeded with s draws all its
randomness from a counter-based generator keyed by (s, i) and nothing
else.  Trials therefore commute: the same config gives the same verdict
counts whether trials run serially, across processes, or in any order.
Worker count changes wall time only.

Uniform bits come from the same seeded generator family: "chosen uniformly
at random" is modeled by a fixed documented PRNG so that reported rates are
exactly reproducible.
"""

from __future__ import annotations

import dataclasses
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .core import VerdictTag, format_rational, load_system, parse_rational
from .dynamics import (
    BitStream,
    sample_seed,
    sample_system,
    trajectory_bits,
    write_streams_ascii,
    write_streams_packed,
)
from .distinguisher import (
    MultiSampleInput,
    SingleStreamInput,
    classify_multi,
    classify_single,
)

_MP = VerdictTag.MCCULLOCH_PITTS.label
_RANDOM = VerdictTag.RANDOM.label

KINDS = ("soundness", "completeness-single", "completeness-multi", "collision")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one experiment; equal configs give equal results.

    ``t`` and ``m`` may be omitted.  Completeness and collision runs then
    use the capacity-regime defaults t = ceil((2+epsilon) n^2) and
    m = ceil((2+epsilon) n); soundness runs instead draw t uniformly from
    [n+1, 4n^2] (or m from [1, 4n]) per trial, to cover the whole range of
    valid inputs rather than one length.
    """

    mode: str
    n: int
    trials: int
    rng_seed: int = 0
    t: int | None = None
    m: int | None = None
    epsilon: Fraction = Fraction(1, 2)
    weight_bound: int = 8

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.mode not in ("single", "multi"):
            raise ValueError(f"mode must be 'single' or 'multi', got {self.mode!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must fit in 64 bits")
        if self.t is not None and self.t <= self.n:
            raise ValueError("t must be at least n+1")
        if self.m is not None and self.m < 1:
            raise ValueError("m must be >= 1")
        if self.weight_bound < 1:
            raise ValueError("weight_bound must be >= 1")

    @property
    def resolved_t(self) -> int:
        """Stream length: explicit t, else the default ceil((2+epsilon) n^2)."""
        if self.t is not None:
            return self.t
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0 when t is defaulted")
        return math.ceil((2 + self.epsilon) * self.n**2)

    @property
    def resolved_m(self) -> int:
        """Sample count: explicit m, else the default ceil((2+epsilon) n)."""
        if self.m is not None:
            return self.m
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0 when m is defaulted")
        return math.ceil((2 + self.epsilon) * self.n)


@dataclass(frozen=True)
class ExperimentReport:
    """Aggregate outcome of one run.

    ``empirical_random_rate`` is the exact fraction of trials with the
    kind's watched outcome: RANDOM verdicts for classifier experiments,
    all-distinct draws for collision checks.  ``passed`` reflects the
    kind's own acceptance rule: zero RANDOM verdicts for soundness, the
    birthday lower bound minus three sigmas for collision, and vacuously
    true for completeness, whose rates are judged by callers.
    ``failures`` lists the trial indices behind a failed soundness run.
    """

    kind: str
    config: ExperimentConfig
    counts: Mapping[str, int]
    empirical_random_rate: Fraction
    wall_time: float
    passed: bool
    failures: tuple[int, ...] = ()
    notes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(self.counts))
        object.__setattr__(self, "notes", dict(self.notes))
        object.__setattr__(self, "failures", tuple(self.failures))
        if sum(self.counts.values()) != self.config.trials:
            raise ValueError("verdict counts must sum to trials")
        watched = self.counts.get(_RANDOM, self.counts.get("distinct", 0))
        if self.empirical_random_rate != Fraction(watched, self.config.trials):
            raise ValueError("rate must equal watched count / trials")


def _resolve_workers(workers: int | None) -> int:
    cap = os.environ.get("MP_WORKERS")
    cap_value = int(cap) if cap else None
    if workers is None:
        workers = cap_value if cap_value is not None else 1
    elif cap_value is not None:
        workers = min(workers, cap_value)
    return max(1, workers)


def _trial_rng(rng_seed: int, index: int) -> np.random.Generator:
    # Counter-based keying: the 128-bit key (seed, index) fully determines
    # the trial's stream, independent of scheduling.
    return np.random.Generator(np.random.Philox(key=(rng_seed << 64) | index))


def _uniform_stream(rng: np.random.Generator, t: int) -> BitStream:
    return BitStream(tuple(int(b) for b in rng.integers(0, 2, size=t)))


def _trial(kind: str, config: ExperimentConfig, index: int) -> str:
    rng = _trial_rng(config.rng_seed, index)
    n = config.n
    if kind == "soundness":
        if config.mode == "single":
            t = config.t
            if t is None:
                t = int(rng.integers(n + 1, 4 * n * n, endpoint=True))
            system = sample_system(n, rng, config.weight_bound)
            stream = trajectory_bits(system, sample_seed(n, rng), t)
            return classify_single(SingleStreamInput(n, stream)).tag.label
        m = config.m
        if m is None:
            m = int(rng.integers(1, 4 * n, endpoint=True))
        system = sample_system(n, rng, config.weight_bound)
        samples = tuple(
            trajectory_bits(system, sample_seed(n, rng), n + 1) for _ in range(m)
        )
        return classify_multi(MultiSampleInput(n, samples)).tag.label
    if kind == "completeness-single":
        stream = _uniform_stream(rng, config.resolved_t)
        return classify_single(SingleStreamInput(n, stream)).tag.label
    if kind == "completeness-multi":
        samples = tuple(
            _uniform_stream(rng, n + 1) for _ in range(config.resolved_m)
        )
        return classify_multi(MultiSampleInput(n, samples)).tag.label
    if kind == "collision":
        draws = rng.integers(0, 2, size=(config.resolved_m, n), dtype=np.uint8)
        distinct = len({row.tobytes() for row in draws}) == config.resolved_m
        return "distinct" if distinct else "collided"
    raise ValueError(f"unknown experiment kind {kind!r}")


def _run_range(kind: str, config: ExperimentConfig, start: int, stop: int) -> list[str]:
    return [_trial(kind, config, i) for i in range(start, stop)]


def _execute(
    kind: str, config: ExperimentConfig, workers: int | None
) -> tuple[list[str], float]:
    w = _resolve_workers(workers)
    begin = time.perf_counter()
    if w > 1 and config.trials >= 2 * w:
        step = -(-config.trials // w)
        ranges = [(s, min(s + step, config.trials)) for s in range(0, config.trials, step)]
        with ProcessPoolExecutor(max_workers=w) as pool:
            futures = [pool.submit(_run_range, kind, config, s, e) for s, e in ranges]
            outcomes = [o for f in futures for o in f.result()]
    else:
        outcomes = _run_range(kind, config, 0, config.trials)
    return outcomes, time.perf_counter() - begin


def _classifier_report(
    kind: str, config: ExperimentConfig, workers: int | None, soundness: bool
) -> ExperimentReport:
    outcomes, wall = _execute(kind, config, workers)
    counts = {
        _MP: outcomes.count(_MP),
        _RANDOM: outcomes.count(_RANDOM),
    }
    failures = tuple(
        i for i, o in enumerate(outcomes) if soundness and o == _RANDOM
    )
    return ExperimentReport(
        kind=kind,
        config=config,
        counts=counts,
        empirical_random_rate=Fraction(counts[_RANDOM], config.trials),
        wall_time=wall,
        passed=not failures if soundness else True,
        failures=failures,
    )


def run_soundness(config: ExperimentConfig, *, workers: int | None = None) -> ExperimentReport:
    """Classify network-generated inputs; every trial must say McCulloch-Pitts.

    Each trial samples a fresh system with integer weights in
    [-weight_bound, weight_bound], then a seed state (for multi mode, m
    seed states sharing the system), generates the bits, and classifies.
    A RANDOM verdict anywhere is recorded as a failure: the report's
    ``passed`` is the bug detector, not a statistic.
    """
    return _classifier_report("soundness", config, workers, soundness=True)


def run_completeness_single(
    config: ExperimentConfig, *, workers: int | None = None
) -> ExperimentReport:
    """Classify uniform t-bit streams; report the RANDOM rate."""
    if config.mode != "single":
        raise ValueError("completeness-single requires mode 'single'")
    return _classifier_report("completeness-single", config, workers, soundness=False)


def run_completeness_multi(
    config: ExperimentConfig, *, workers: int | None = None
) -> ExperimentReport:
    """Classify batches of m uniform (n+1)-bit samples; report the RANDOM rate."""
    if config.mode != "multi":
        raise ValueError("completeness-multi requires mode 'multi'")
    return _classifier_report("completeness-multi", config, workers, soundness=False)


def run_collision_check(
    config: ExperimentConfig, *, workers: int | None = None
) -> ExperimentReport:
    """Draw m points from {0,1}^n per trial; check the all-distinct rate.

    The birthday bound guarantees distinctness with probability at least
    1 - m^2/2^n.  The empirical rate must reach that bound minus a
    three-sigma sampling allowance, sigma being the binomial standard
    error at the bound itself.
    """
    outcomes, wall = _execute("collision", config, workers)
    distinct = outcomes.count("distinct")
    counts = {"distinct": distinct, "collided": config.trials - distinct}
    rate = Fraction(distinct, config.trials)
    m = config.resolved_m
    bound = max(Fraction(0), 1 - Fraction(m * m, 2**config.n))
    sigma = math.sqrt(float(bound * (1 - bound)) / config.trials)
    threshold = float(bound) - 3 * sigma
    return ExperimentReport(
        kind="collision",
        config=config,
        counts=counts,
        empirical_random_rate=rate,
        wall_time=wall,
        passed=float(rate) >= threshold,
        notes={
            "lower_bound": format_rational(bound),
            "three_sigma": f"{3 * sigma:.6g}",
            "threshold": f"{threshold:.6g}",
        },
    )


RUNNERS = {
    "soundness": run_soundness,
    "completeness-single": run_completeness_single,
    "completeness-multi": run_completeness_multi,
    "collision": run_collision_check,
}


def sweep_completeness(
    config: ExperimentConfig,
    values: Sequence[int],
    *,
    workers: int | None = None,
) -> list[tuple[int, Fraction]]:
    """Completeness rate as a function of t (single mode) or m (multi mode).

    Each sweep point reruns the experiment with the same seed, so trial i
    shares its leading random bits across points; a stream that chunks to
    an inseparable dichotomy at one length stays inseparable at every
    larger length, which makes the per-trial outcomes, not just their
    expectations, monotone along a single-mode sweep.
    """
    rows = []
    for v in values:
        if config.mode == "single":
            point = dataclasses.replace(config, t=v)
            report = run_completeness_single(point, workers=workers)
        else:
            point = dataclasses.replace(config, m=v)
            report = run_completeness_multi(point, workers=workers)
        rows.append((v, report.empirical_random_rate))
    return rows


def write_sweep_csv(rows: Sequence[tuple[int, Fraction]], path: str, mode: str) -> None:
    import csv

    header = "t" if mode == "single" else "m"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([header, "random_rate", "random_rate_float"])
        for value, rate in rows:
            writer.writerow([value, format_rational(rate), f"{float(rate):.6f}"])


def generate_stream(
    system_path: str,
    seed_bits: str,
    t: int,
    out_path: str,
    fmt: str = "ascii",
) -> BitStream:
    """Generate one trajectory stream from a system descriptor file."""
    from .core import BitVector

    system = load_system(system_path)
    x = BitVector.from_string(seed_bits)
    if len(x) != system.arity:
        raise ValueError(
            f"seed state has {len(x)} bits, system has {system.arity} units"
        )
    stream = trajectory_bits(system, x, t)
    if fmt == "ascii":
        write_streams_ascii([stream], out_path)
    elif fmt == "packed":
        write_streams_packed([stream], out_path)
    else:
        raise ValueError(f"unknown stream format {fmt!r}")
    return stream


# ---------------------------------------------------------------------------
# Report serialization
# ---------------------------------------------------------------------------

def config_to_json(config: ExperimentConfig) -> dict:
    return {
        "mode": config.mode,
        "n": config.n,
        "trials": config.trials,
        "rng_seed": config.rng_seed,
        "t": config.t,
        "m": config.m,
        "epsilon": format_rational(config.epsilon),
        "weight_bound": config.weight_bound,
    }


def config_from_json(obj: dict) -> ExperimentConfig:
    if not isinstance(obj, dict):
        raise ValueError("config must be a JSON object")
    known = {"mode", "n", "trials", "rng_seed", "t", "m", "epsilon", "weight_bound"}
    unknown = set(obj) - known
    if unknown:
        raise ValueError(f"unknown config fields: {sorted(unknown)}")
    for name in ("mode", "n", "trials"):
        if name not in obj:
            raise ValueError(f"config field '{name}' is required")
    kwargs = dict(obj)
    if "epsilon" in kwargs:
        kwargs["epsilon"] = parse_rational(kwargs["epsilon"])
    try:
        return ExperimentConfig(**kwargs)
    except TypeError as exc:
        raise ValueError(f"bad config: {exc}") from None


def report_to_json(report: ExperimentReport) -> dict:
    return {
        "kind": report.kind,
        "config": config_to_json(report.config),
        "counts": dict(sorted(report.counts.items())),
        "empirical_random_rate": format_rational(report.empirical_random_rate),
        "wall_time_seconds": round(report.wall_time, 6),
        "passed": report.passed,
        "failures": list(report.failures),
        "notes": dict(sorted(report.notes.items())),
    }


def format_report_text(report: ExperimentReport) -> str:
    rows = [
        ("experiment", report.kind),
        ("mode", report.config.mode),
        ("n", str(report.config.n)),
        ("trials", str(report.config.trials)),
        ("rng seed", str(report.config.rng_seed)),
    ]
    n = report.config.n
    if report.kind == "collision" or report.config.mode == "multi":
        if report.config.m is not None:
            rows.append(("m", str(report.config.m)))
        elif report.kind == "soundness":
            rows.append(("m", f"per-trial in [1, {4 * n}]"))
        else:
            rows.append(("m", str(report.config.resolved_m)))
    else:
        if report.config.t is not None:
            rows.append(("t", str(report.config.t)))
        elif report.kind == "soundness":
            rows.append(("t", f"per-trial in [{n + 1}, {4 * n * n}]"))
        else:
            rows.append(("t", str(report.config.resolved_t)))
    rows.append(
        ("counts", "  ".join(f"{k}={v}" for k, v in sorted(report.counts.items())))
    )
    rows.append(
        (
            "watched rate",
            f"{format_rational(report.empirical_random_rate)}"
            f" ({float(report.empirical_random_rate):.4f})",
        )
    )
    for key, value in sorted(report.notes.items()):
        rows.append((key.replace("_", " "), value))
    rows.append(("wall time", f"{report.wall_time:.2f}s"))
    rows.append(("result", "PASS" if report.passed else "FAIL"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)
