"""Leavitt labelled path algebras of finite labelled spaces: exact arithmetic,
normal forms, tight spectra, partial actions and structural decisions."""

from .algebra import (
    Element,
    NonUnital,
    OracleDisagreement,
    equals,
    format_element,
    make_term,
    multiply,
    normalize,
    p,
    s,
    s_star,
    star_element,
    unit_element,
)
from .family import SetFamily, accommodating_closure, powerset_family
from .graph import LabelledGraph, validate_graph
from .space import LabelledSpace

__version__ = "0.1.0"
