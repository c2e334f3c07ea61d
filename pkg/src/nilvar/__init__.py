"""Exact toolkit for nilpotent algebras, their generic families and degenerations."""
from .algebra import Algebra, nilpotency_index, power_chain, annihilator, class_flags
from .families import family_spec, instantiate, random_member
from .degeneration import construct_witness, base_case_search, verify_witness
from .invariants import fibonacci, length_of_set, nilpotent_reduction, bound_report

__all__ = [
    "Algebra", "nilpotency_index", "power_chain", "annihilator", "class_flags",
    "family_spec", "instantiate", "random_member",
    "construct_witness", "base_case_search", "verify_witness",
    "fibonacci", "length_of_set", "nilpotent_reduction", "bound_report",
]
__version__ = "0.1.0"
