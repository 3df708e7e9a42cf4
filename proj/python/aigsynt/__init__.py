"""Safety-game realizability, synthesis and benchmark toolkit."""

from ._core import (
    category_of,
    gen_adder,
    gen_counter,
    gen_cycle_sched,
    gen_mult_matrix,
    gen_mult_matrix_dyn,
    parse_check,
    partition,
    quality_points,
    read_meta,
    round_trip,
    simulate,
    solve,
    verify,
)

__all__ = [
    "category_of",
    "gen_adder",
    "gen_counter",
    "gen_cycle_sched",
    "gen_mult_matrix",
    "gen_mult_matrix_dyn",
    "parse_check",
    "partition",
    "quality_points",
    "read_meta",
    "round_trip",
    "simulate",
    "solve",
    "verify",
]
