"""Untyped lambda calculus: parser, normal-order reducer and Church encodings."""
from .church import (
    DecodeError, DecodeFailure, Environment, builtin_env, church_bool,
    church_list, church_nat, decode_bool, decode_nat, decode_pair, load_program,
    prelude_source,
)
from .parser import (
    DuplicateDefinitionError, ForwardReferenceError, ParseError, SourceSpan,
    Token, UnboundReferenceError, parse_program, parse_term, pretty_print,
    tokenize,
)
from .reducer import (
    DEFAULT_MAX_STEPS, NormalForm, ReductionStep, StepLimit, Trace, find_redex,
    normalize, step, trace,
)
from .terms import (
    Abs, App, BAbs, BApp, BVar, FVar, NameSupply, Var, all_names, alpha_eq,
    apps, canonicalize, fresh_name, free_vars, is_bound, is_free, lams,
    substitute, to_debruijn,
)

__version__ = "0.1.0"

__all__ = [
    "DecodeError",
    "DecodeFailure",
    "Environment",
    "builtin_env",
    "church_bool",
    "church_list",
    "church_nat",
    "decode_bool",
    "decode_nat",
    "decode_pair",
    "load_program",
    "prelude_source",
    "DuplicateDefinitionError",
    "ForwardReferenceError",
    "ParseError",
    "SourceSpan",
    "Token",
    "UnboundReferenceError",
    "parse_program",
    "parse_term",
    "pretty_print",
    "tokenize",
    "DEFAULT_MAX_STEPS",
    "NormalForm",
    "ReductionStep",
    "StepLimit",
    "Trace",
    "find_redex",
    "normalize",
    "step",
    "trace",
    "Abs",
    "App",
    "BAbs",
    "BApp",
    "BVar",
    "FVar",
    "NameSupply",
    "Var",
    "all_names",
    "alpha_eq",
    "apps",
    "canonicalize",
    "fresh_name",
    "free_vars",
    "is_bound",
    "is_free",
    "lams",
    "substitute",
    "to_debruijn",
]
