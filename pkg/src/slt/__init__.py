"""Lightening of multiparty global session types."""

from .core import (
    EMPTY,
    Branch,
    Branching,
    Call,
    Code,
    Declarations,
    Diagnostic,
    End,
    Program,
    Rec,
    SltError,
    Sort,
    Var,
    alpha_eq_decls,
    is_global,
    roles_of,
    well_formed,
)
from .lightener import FreshNamer, LighteningResult, descend, eliminate, lighten_fully
from .redundancy import RedundantSite, find_redundant
from .scribble import ProtocolDoc, emit
from .semantics import Trace, TraceLanguage, lang_eq, step, traces
from .syntax import ParseError, parse, print_program

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "Branch",
    "Branching",
    "Call",
    "Code",
    "Declarations",
    "Diagnostic",
    "End",
    "Program",
    "Rec",
    "SltError",
    "Sort",
    "Var",
    "alpha_eq_decls",
    "is_global",
    "roles_of",
    "well_formed",
    "FreshNamer",
    "LighteningResult",
    "descend",
    "eliminate",
    "lighten_fully",
    "RedundantSite",
    "find_redundant",
    "ProtocolDoc",
    "emit",
    "Trace",
    "TraceLanguage",
    "lang_eq",
    "step",
    "traces",
    "ParseError",
    "parse",
    "print_program",
]
