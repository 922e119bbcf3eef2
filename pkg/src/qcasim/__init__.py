"""Exact-arithmetic simulation and analysis of quantum-classical counter automata.

The package builds two reference machines: a restarting realtime recognizer
for { a^m b^n : n = 2^m } with a three-state quantum register, and a two-way
one-counter machine that recognizes the unary language { a^(2^n) } by marking
positions with its counter, using only logarithmic counter space on members.
Everything is computed in exact rational arithmetic; Monte Carlo sampling,
exhaustive branch enumeration, and closed forms cross-check one another.
"""

from .exact import (
    DimensionError,
    Rat,
    RMat,
    RVec,
    format_rat,
    four_square,
    four_square_all,
    gram_sum,
    identity,
    mat_apply,
    parse_rat,
    rmat,
    rvec,
)
from .superop import (
    DegenerateBranchError,
    OutcomeBranch,
    OutcomeDistribution,
    QuantumState,
    Superoperator,
    ValidationReport,
    apply,
    identity_op,
    initialize,
    reset_op,
    reset_then,
    validate,
)
from .machine import (
    Configuration,
    ClassicalAction,
    InputError,
    MachineSpec,
    NonHaltingError,
    RoundAnalysis,
    SampleSummary,
    SpecificationError,
    Tape,
    TrajectoryStats,
    enumerate_round,
    enumerate_segment,
    init,
    profile_space,
    run_trajectory,
    sample_trajectories,
    step,
    validate_spec,
)
from .power import (
    ParameterError,
    PowerParams,
    build_power,
    error_bound,
    is_member_pair,
    overall_analysis,
    round_closed_form,
    solve_restart,
)
from .upower import (
    FamilyBounds,
    FamilyError,
    FamilySpec,
    UpowerAnalysis,
    accept_coin,
    analyze_upower,
    build_upower,
    enumerate_pass,
    family_bounds,
    family_iter,
    family_poly,
    family_polypower,
    family_powerbase,
    family_upower,
    is_member,
    is_upower_member,
    parse_family,
    profile_member_space,
)
from .machinefile import MachineFileError, dumps_spec, load_spec, loads_spec, save_spec

__version__ = "0.1.0"
