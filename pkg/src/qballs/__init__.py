"""Quantale-enriched categories, formal balls and Yoneda completeness, in exact arithmetic."""
from . import quantale
from .formal_balls import DirectedFamily, FormalBall, ball_leq
from .qcategory import FiniteQCategory, GeneratedQCategory, Net, NetTails, Status, Verdict, Weight
from .quantale import QuantaleSpec, parse_spec

__all__ = [
    "quantale", "DirectedFamily", "FormalBall", "ball_leq", "FiniteQCategory", "GeneratedQCategory",
    "Net", "NetTails", "Status", "Verdict", "Weight", "QuantaleSpec", "parse_spec",
]
__version__ = "0.1.0"
