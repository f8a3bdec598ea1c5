"""Built-in example generators and executable suites."""
from .generators import (Bundle, GENERATORS, close_transitively, gen_idempotent_counterexample, gen_quasimetric_space,
                         gen_random_category, gen_sequence_space, gen_two_point, generated_bundle, seq_join_center)
from .suites import SUITES, run_suite

__all__ = [
    "Bundle", "GENERATORS", "SUITES", "close_transitively", "gen_idempotent_counterexample",
    "gen_quasimetric_space", "gen_random_category", "gen_sequence_space", "gen_two_point",
    "generated_bundle", "run_suite", "seq_join_center",
]
