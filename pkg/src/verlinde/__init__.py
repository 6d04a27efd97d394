"""Exact Verlinde-type indices for compact Lie groups and their quotients by central subgroups."""

from .center import CenterCharacter, CenterSubgroup, all_subgroups, generating_characters
from .characters import character_table, eval_character, exceptional_weight, kostant_character, t_count
from .cyclotomic import CycloNumber, root_of_unity
from .formulas import (
    InadmissibleLevelError,
    NonIntegralResultError,
    VerlindeResult,
    admissible_level,
    min_level,
    two_holed_sphere,
    verlinde_closed,
    verlinde_conjclass,
    verlinde_ns,
    verlinde_sc,
    verlinde_sc_product,
)
from .registry import GroupSpecError, parse_group
from .rootdata import LieType, build_root_datum, level_weights, weyl_dimension

__version__ = "0.1.0"

__all__ = [
    "CenterCharacter",
    "CenterSubgroup",
    "CycloNumber",
    "GroupSpecError",
    "InadmissibleLevelError",
    "LieType",
    "NonIntegralResultError",
    "VerlindeResult",
    "admissible_level",
    "all_subgroups",
    "build_root_datum",
    "character_table",
    "eval_character",
    "exceptional_weight",
    "generating_characters",
    "kostant_character",
    "level_weights",
    "min_level",
    "parse_group",
    "root_of_unity",
    "t_count",
    "two_holed_sphere",
    "verlinde_closed",
    "verlinde_conjclass",
    "verlinde_ns",
    "verlinde_sc",
    "verlinde_sc_product",
    "weyl_dimension",
]
