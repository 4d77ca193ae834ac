"""Decide whether the fixed point of a morphism avoids Abelian k-powers."""

from .decider import DecideConfig, Status, Verdict, decide, extract_witness, length_bound, short_length_bound
from .oracle import PowerOccurrence, find_abelian_power
from .templates import Template, ancestor_closure, ancestors, delta, find_instance, parents, power_template
from .words import Morphism, apply, factor_set, fixed_point_prefix, parikh, validate

__all__ = [
    "DecideConfig", "Status", "Verdict", "decide", "extract_witness", "length_bound",
    "short_length_bound", "PowerOccurrence", "find_abelian_power", "Template",
    "ancestor_closure", "ancestors", "delta", "find_instance", "parents", "power_template",
    "Morphism", "apply", "factor_set", "fixed_point_prefix", "parikh", "validate",
]
