"""Monte Carlo harness: exact-rate oracles, determinism, sweeps, serialization.

The rate assertions here come in pairs: an exact probability derived by
independent enumeration (closed under Fractions, never touching the code
under test), and a frozen seeded run pinned to the count it produced, which
must sit within three binomial sigmas of the exact value.
"""

import dataclasses
import math
from fractions import Fraction

import pytest

from mpbits import (
    BitVector,
    Dichotomy,
    ExperimentConfig,
    ExperimentReport,
    IntegerWitnessOracle,
    MPSystem,
    ThresholdUnit,
    config_from_json,
    config_to_json,
    dump_system,
    format_report_text,
    generate_stream,
    read_streams_packed,
    report_to_json,
    run_collision_check,
    run_completeness_multi,
    run_completeness_single,
    run_soundness,
    sweep_completeness,
    write_sweep_csv,
)
from mpbits.experiments import _resolve_workers, _trial_rng, _uniform_stream


def identity_system(n: int) -> MPSystem:
    units = tuple(
        ThresholdUnit(
            tuple(Fraction(1 if j == i else 0) for j in range(n)), Fraction(1)
        )
        for i in range(n)
    )
    return MPSystem(n, units)


def three_sigma(p: Fraction, trials: int) -> float:
    return 3 * math.sqrt(float(p * (1 - p)) / trials)


def exact_multi_random_rate(m: int) -> Fraction:
    """P(RANDOM) for m uniform 3-bit samples at n = 2, by enumeration.

    Each sample lands in one of 8 equally likely (point, label) cells; the
    batch verdict depends only on which cells were hit.  Sum, over the cell
    subsets whose induced dichotomy is separable, the exact probability of
    hitting precisely that subset (inclusion-exclusion), and complement.
    Separability is decided by the integer witness oracle, not the solver
    under test.  Hand check at m = 2: RANDOM needs the two samples to share
    a point and differ in label, so the rate is (1/4)(1/2) = 1/8.
    """
    oracle = IntegerWitnessOracle(2)
    cells = [(p, label) for p in range(4) for label in (0, 1)]

    def separable(mask: int) -> bool:
        chosen = [cells[i] for i in range(8) if mask >> i & 1]
        pos = frozenset(
            BitVector((p & 1, p >> 1 & 1)) for p, label in chosen if label == 1
        )
        neg = frozenset(
            BitVector((p & 1, p >> 1 & 1)) for p, label in chosen if label == 0
        )
        if pos & neg:
            return False
        return oracle.is_separable(Dichotomy(pos, neg, 2))

    p_sep = Fraction(0)
    for mask in range(256):
        if not separable(mask):
            continue
        k = bin(mask).count("1")
        sub = mask
        while True:
            j = bin(sub).count("1")
            p_sep += (-1) ** (k - j) * Fraction(j, 8) ** m
            if sub == 0:
                break
            sub = (sub - 1) & mask
    return 1 - p_sep


class TestConfigValidation:
    def test_bad_fields(self):
        good = dict(mode="single", n=3, trials=10)
        with pytest.raises(ValueError, match="mode"):
            ExperimentConfig(**{**good, "mode": "both"})
        with pytest.raises(ValueError, match="n must"):
            ExperimentConfig(**{**good, "n": 0})
        with pytest.raises(ValueError, match="trials"):
            ExperimentConfig(**{**good, "trials": 0})
        with pytest.raises(ValueError, match="rng_seed"):
            ExperimentConfig(**good, rng_seed=2**64)
        with pytest.raises(ValueError, match="t must"):
            ExperimentConfig(**good, t=3)
        with pytest.raises(ValueError, match="m must"):
            ExperimentConfig(**good, m=0)
        with pytest.raises(ValueError, match="weight_bound"):
            ExperimentConfig(**good, weight_bound=0)

    def test_resolved_defaults(self):
        config = ExperimentConfig(mode="single", n=4, trials=1)
        assert config.resolved_t == 40
        assert config.resolved_m == 10
        third = ExperimentConfig(mode="single", n=4, trials=1, epsilon=Fraction(1, 3))
        assert third.resolved_t == 38

    def test_explicit_values_win(self):
        config = ExperimentConfig(mode="single", n=4, trials=1, t=7, m=3)
        assert config.resolved_t == 7
        assert config.resolved_m == 3

    def test_nonpositive_epsilon_only_blocks_defaults(self):
        config = ExperimentConfig(mode="single", n=4, trials=1, t=7, epsilon=0)
        assert config.resolved_t == 7
        with pytest.raises(ValueError, match="epsilon"):
            config.resolved_m


class TestExactRateOracles:
    def test_single_n1_matches_quarter(self):
        # Chunking a 3-bit stream at n = 1 yields points (b1)->b2, (b2)->b3;
        # the only inseparable outcome is a conflict, i.e. b1 = b2 != b3,
        # which happens with probability exactly 1/4.
        config = ExperimentConfig(mode="single", n=1, t=3, trials=4000, rng_seed=11)
        report = run_completeness_single(config)
        assert report.empirical_random_rate == Fraction(1043, 4000)
        exact = Fraction(1, 4)
        assert abs(float(report.empirical_random_rate - exact)) < three_sigma(
            exact, config.trials
        )
        assert report.passed  # completeness runs never fail by themselves

    def test_multi_n2_m4_matches_enumeration(self):
        exact = exact_multi_random_rate(4)
        assert exact == Fraction(283, 512)
        assert exact_multi_random_rate(2) == Fraction(1, 8)
        config = ExperimentConfig(mode="multi", n=2, m=4, trials=2000, rng_seed=7)
        report = run_completeness_multi(config)
        assert report.empirical_random_rate == Fraction(1127, 2000)
        assert abs(float(report.empirical_random_rate - exact)) < three_sigma(
            exact, config.trials
        )

    def test_collision_small_cube(self):
        # Two draws from {0,1}^2 are distinct with probability exactly 3/4.
        config = ExperimentConfig(mode="single", n=2, m=2, trials=512, rng_seed=5)
        report = run_collision_check(config)
        assert report.empirical_random_rate == Fraction(49, 64)
        exact = Fraction(3, 4)
        assert abs(float(report.empirical_random_rate - exact)) < three_sigma(
            exact, config.trials
        )
        # m^2 >= 2^n makes the birthday lower bound vacuous
        assert report.notes["lower_bound"] == "0"
        assert report.passed

    def test_collision_nontrivial_bound(self):
        config = ExperimentConfig(mode="single", n=6, m=2, trials=256, rng_seed=5)
        report = run_collision_check(config)
        assert report.notes["lower_bound"] == "15/16"
        assert report.counts["distinct"] + report.counts["collided"] == 256
        assert report.passed

    def test_collision_pigeonhole(self):
        # more draws than points: every trial must collide
        config = ExperimentConfig(mode="single", n=1, m=3, trials=64, rng_seed=0)
        report = run_collision_check(config)
        assert report.counts["distinct"] == 0
        assert report.empirical_random_rate == 0
        assert report.passed  # bound is 0, so 0 distinct is acceptable

    def test_collision_single_draw(self):
        config = ExperimentConfig(mode="single", n=3, m=1, trials=32, rng_seed=0)
        report = run_collision_check(config)
        assert report.empirical_random_rate == 1


class TestSoundness:
    @pytest.mark.parametrize("mode", ["single", "multi"])
    def test_generated_streams_never_read_random(self, mode):
        config = ExperimentConfig(mode=mode, n=3, trials=60, rng_seed=3)
        report = run_soundness(config)
        assert report.passed
        assert report.failures == ()
        assert report.counts["random"] == 0
        assert report.counts["McCulloch-Pitts"] == 60

    def test_explicit_lengths(self):
        single = run_soundness(
            ExperimentConfig(mode="single", n=2, trials=40, rng_seed=1, t=9)
        )
        multi = run_soundness(
            ExperimentConfig(mode="multi", n=2, trials=40, rng_seed=1, m=6)
        )
        assert single.passed and multi.passed

    def test_mode_guards(self):
        config = ExperimentConfig(mode="multi", n=2, trials=1)
        with pytest.raises(ValueError, match="single"):
            run_completeness_single(config)
        with pytest.raises(ValueError, match="multi"):
            run_completeness_multi(
                ExperimentConfig(mode="single", n=2, trials=1)
            )


class TestDeterminismAndWorkers:
    def _strip_wall_time(self, report: ExperimentReport) -> tuple:
        return (
            report.kind,
            report.config,
            dict(report.counts),
            report.empirical_random_rate,
            report.passed,
            report.failures,
            dict(report.notes),
        )

    def test_repeat_runs_identical(self):
        config = ExperimentConfig(mode="single", n=2, t=9, trials=200, rng_seed=42)
        first = run_completeness_single(config)
        second = run_completeness_single(config)
        assert self._strip_wall_time(first) == self._strip_wall_time(second)

    def test_worker_count_is_invisible(self):
        config = ExperimentConfig(mode="single", n=2, t=9, trials=200, rng_seed=42)
        serial = run_completeness_single(config, workers=1)
        parallel = run_completeness_single(config, workers=2)
        assert self._strip_wall_time(serial) == self._strip_wall_time(parallel)

    def test_trial_rng_keying(self):
        # distinct (seed, index) keys give distinct streams, same key same stream
        a = _uniform_stream(_trial_rng(5, 0), 64).bits
        b = _uniform_stream(_trial_rng(5, 1), 64).bits
        c = _uniform_stream(_trial_rng(6, 0), 64).bits
        again = _uniform_stream(_trial_rng(5, 0), 64).bits
        assert a == again
        assert len({a, b, c}) == 3

    def test_env_cap_limits_workers(self, monkeypatch):
        monkeypatch.setenv("MP_WORKERS", "2")
        assert _resolve_workers(None) == 2
        assert _resolve_workers(8) == 2
        assert _resolve_workers(1) == 1
        monkeypatch.delenv("MP_WORKERS")
        assert _resolve_workers(None) == 1
        assert _resolve_workers(3) == 3


class TestSweep:
    def test_stream_prefix_coherence(self):
        # same trial key, longer draw: the short stream is a prefix, which
        # is what makes single-mode sweep outcomes monotone per trial
        for t_small, t_big in ((3, 6), (10, 40)):
            short = _uniform_stream(_trial_rng(9, 4), t_small).bits
            long = _uniform_stream(_trial_rng(9, 4), t_big).bits
            assert short == long[:t_small]

    def test_single_sweep_monotone(self):
        config = ExperimentConfig(mode="single", n=3, trials=300, rng_seed=13)
        rows = sweep_completeness(config, [4, 8, 16, 37])
        assert rows == [
            (4, Fraction(0)),
            (8, Fraction(7, 100)),
            (16, Fraction(17, 30)),
            (37, Fraction(59, 60)),
        ]
        rates = [rate for _, rate in rows]
        assert rates == sorted(rates)

    def test_multi_sweep_monotone(self):
        config = ExperimentConfig(mode="multi", n=2, trials=200, rng_seed=13)
        rows = sweep_completeness(config, [1, 2, 4, 8, 16])
        rates = [rate for _, rate in rows]
        assert rates == sorted(rates)
        assert rows[0][1] == 0  # one sample is always separable

    def test_sweep_csv(self, tmp_path):
        path = str(tmp_path / "sweep.csv")
        write_sweep_csv([(4, Fraction(1, 3))], path, "single")
        content = (tmp_path / "sweep.csv").read_text()
        assert content.splitlines() == [
            "t,random_rate,random_rate_float",
            "4,1/3,0.333333",
        ]
        write_sweep_csv([(2, Fraction(0))], path, "multi")
        assert (tmp_path / "sweep.csv").read_text().splitlines()[0].startswith("m,")


class TestSerialization:
    def test_config_round_trip(self):
        config = ExperimentConfig(
            mode="multi", n=5, trials=9, rng_seed=77, m=4, epsilon=Fraction(1, 3)
        )
        assert config_from_json(config_to_json(config)) == config

    def test_config_required_and_unknown_fields(self):
        with pytest.raises(ValueError, match="required"):
            config_from_json({"mode": "single", "n": 2})
        with pytest.raises(ValueError, match="unknown"):
            config_from_json({"mode": "single", "n": 2, "trials": 1, "seed": 0})
        with pytest.raises(ValueError, match="object"):
            config_from_json([1, 2])

    def test_report_json_shape(self):
        config = ExperimentConfig(mode="single", n=1, t=3, trials=8, rng_seed=0)
        report = run_completeness_single(config)
        obj = report_to_json(report)
        assert obj["kind"] == "completeness-single"
        assert obj["config"]["n"] == 1
        assert set(obj["counts"]) == {"McCulloch-Pitts", "random"}
        assert sum(obj["counts"].values()) == 8
        assert obj["passed"] is True
        assert obj["failures"] == []
        num, _, den = obj["empirical_random_rate"].partition("/")
        assert report.empirical_random_rate == Fraction(int(num), int(den or 1))

    def test_report_invariants(self):
        config = ExperimentConfig(mode="single", n=2, trials=3)
        with pytest.raises(ValueError, match="sum"):
            ExperimentReport(
                kind="completeness-single",
                config=config,
                counts={"McCulloch-Pitts": 1, "random": 1},
                empirical_random_rate=Fraction(1, 3),
                wall_time=0.0,
                passed=True,
            )
        with pytest.raises(ValueError, match="rate"):
            ExperimentReport(
                kind="completeness-single",
                config=config,
                counts={"McCulloch-Pitts": 2, "random": 1},
                empirical_random_rate=Fraction(2, 3),
                wall_time=0.0,
                passed=True,
            )

    def test_format_report_lines(self):
        import re

        explicit = run_completeness_single(
            ExperimentConfig(mode="single", n=1, t=3, trials=8, rng_seed=0)
        )
        text = format_report_text(explicit)
        assert re.search(r"^t\s+3$", text, re.MULTILINE)
        assert re.search(r"^result\s+PASS$", text, re.MULTILINE)

        defaulted = run_completeness_single(
            ExperimentConfig(mode="single", n=2, trials=4, rng_seed=0)
        )
        # resolved_t = ceil(2.5 * 4) = 10
        assert re.search(r"^t\s+10$", format_report_text(defaulted), re.MULTILINE)

        per_trial = run_soundness(
            ExperimentConfig(mode="single", n=2, trials=4, rng_seed=0)
        )
        assert "per-trial in [3, 16]" in format_report_text(per_trial)

        per_trial_multi = run_soundness(
            ExperimentConfig(mode="multi", n=2, trials=4, rng_seed=0)
        )
        assert "per-trial in [1, 8]" in format_report_text(per_trial_multi)


class TestGenerateStream:
    def test_identity_round_trip(self, tmp_path):
        system_path = str(tmp_path / "identity.json")
        dump_system(identity_system(2), system_path)
        out = str(tmp_path / "stream.txt")
        stream = generate_stream(system_path, "10", 6, out)
        assert stream.to_string() == "101010"
        assert (tmp_path / "stream.txt").read_text() == "101010\n"

    def test_packed_output(self, tmp_path):
        system_path = str(tmp_path / "identity.json")
        dump_system(identity_system(2), system_path)
        out = str(tmp_path / "stream.bin")
        stream = generate_stream(system_path, "01", 5, out, fmt="packed")
        assert read_streams_packed(out) == [stream]

    def test_seed_only(self, tmp_path):
        system_path = str(tmp_path / "identity.json")
        dump_system(identity_system(3), system_path)
        out = str(tmp_path / "stream.txt")
        assert generate_stream(system_path, "110", 3, out).to_string() == "110"

    def test_arity_mismatch(self, tmp_path):
        system_path = str(tmp_path / "identity.json")
        dump_system(identity_system(2), system_path)
        with pytest.raises(ValueError, match="2 units"):
            generate_stream(system_path, "101", 6, str(tmp_path / "s.txt"))

    def test_unknown_format(self, tmp_path):
        system_path = str(tmp_path / "identity.json")
        dump_system(identity_system(2), system_path)
        with pytest.raises(ValueError, match="format"):
            generate_stream(system_path, "10", 6, str(tmp_path / "s.txt"), fmt="hex")


class TestSweepReplace:
    def test_sweep_uses_replace_not_mutation(self):
        config = ExperimentConfig(mode="single", n=2, trials=10, rng_seed=1)
        sweep_completeness(config, [5, 9])
        assert config.t is None  # frozen config untouched
        point = dataclasses.replace(config, t=5)
        assert point.t == 5 and point.rng_seed == config.rng_seed
