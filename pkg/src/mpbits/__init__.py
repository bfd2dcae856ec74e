"""Threshold-network bit streams, exact separability, and distinguishers.

The package splits into small layers:

* ``core``: exact rational scalars, bit vectors, threshold units, systems,
  dichotomies, verdicts, and their JSON forms.
* ``dynamics``: state evolution, trajectory streams, cycle detection,
  system sampling, stream file IO.
* ``simplex``: an exact rational feasibility solver for closed linear
  inequality systems.
* ``separability``: strict linear separability with verified witnesses.
* ``distinguisher``: the two classification algorithms built on it.
* ``counting``: the separable-dichotomy bound, the region-count table,
  brute-force enumeration, and an independent integer-witness oracle.
* ``experiments``: the reproducible Monte Carlo harness behind the CLI.
"""

from .core import (
    BitVector,
    Dichotomy,
    MPSystem,
    Rational,
    ThresholdUnit,
    Verdict,
    VerdictTag,
    decode_state,
    dump_system,
    encode_state,
    eval_threshold,
    format_rational,
    load_system,
    parse_rational,
    system_from_json,
    system_to_json,
)
from .counting import (
    CountReport,
    IntegerWitnessOracle,
    count_threshold_functions,
    cover_bound,
    enumerate_separable_dichotomies,
    region_count_table,
)
from .distinguisher import (
    MultiSampleInput,
    SingleStreamInput,
    classify_multi,
    classify_single,
)
from .dynamics import (
    BitStream,
    CycleInfo,
    find_cycle,
    next_integer,
    read_streams_ascii,
    read_streams_packed,
    sample_seed,
    sample_system,
    step,
    trajectory_bits,
    write_streams_ascii,
    write_streams_packed,
)
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    config_from_json,
    config_to_json,
    format_report_text,
    generate_stream,
    report_to_json,
    run_collision_check,
    run_completeness_multi,
    run_completeness_single,
    run_soundness,
    sweep_completeness,
    write_sweep_csv,
)
from .separability import (
    SeparationWitness,
    build_multi_dichotomy,
    build_single_dichotomy,
    dichotomy_from_json,
    dichotomy_to_json,
    is_linearly_separable,
    witness_from_json,
    witness_to_json,
)
from .simplex import solve_ge_system

__version__ = "0.1.0"

__all__ = [
    "BitStream",
    "BitVector",
    "CountReport",
    "CycleInfo",
    "Dichotomy",
    "ExperimentConfig",
    "ExperimentReport",
    "IntegerWitnessOracle",
    "MPSystem",
    "MultiSampleInput",
    "Rational",
    "SeparationWitness",
    "SingleStreamInput",
    "ThresholdUnit",
    "Verdict",
    "VerdictTag",
    "build_multi_dichotomy",
    "build_single_dichotomy",
    "classify_multi",
    "classify_single",
    "config_from_json",
    "config_to_json",
    "count_threshold_functions",
    "cover_bound",
    "decode_state",
    "dichotomy_from_json",
    "dichotomy_to_json",
    "dump_system",
    "encode_state",
    "enumerate_separable_dichotomies",
    "eval_threshold",
    "find_cycle",
    "format_rational",
    "format_report_text",
    "generate_stream",
    "is_linearly_separable",
    "load_system",
    "next_integer",
    "parse_rational",
    "read_streams_ascii",
    "read_streams_packed",
    "region_count_table",
    "report_to_json",
    "run_collision_check",
    "run_completeness_multi",
    "run_completeness_single",
    "run_soundness",
    "sample_seed",
    "sample_system",
    "solve_ge_system",
    "step",
    "sweep_completeness",
    "write_sweep_csv",
    "system_from_json",
    "system_to_json",
    "trajectory_bits",
    "witness_from_json",
    "witness_to_json",
    "write_streams_ascii",
    "write_streams_packed",
]
