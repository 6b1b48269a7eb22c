"""Control/data separated computation units and their algebra."""

from __future__ import annotations

from .core import (
    CONTROL,
    Computon,
    ComputonClass,
    Direction,
    Interface,
    Kind,
    ValidationReport,
    Violation,
    classify,
    ensure_valid,
    flows_to,
    inports,
    interface,
    iports,
    is_connected,
    is_primitive,
    is_trivial,
    make_fork,
    make_functional,
    make_glue,
    make_join,
    make_trivial,
    make_unit,
    outports,
    post_set,
    pre_set,
    validate_computon,
)
from .morphism import (
    ComputonMorphism,
    are_isomorphic,
    compose_morphisms,
    find_isomorphism,
    i_vector,
    identity_morphism,
    inverse,
    morphism,
    o_vector,
    validate_morphism,
)
from .compose import (
    ParallelComposition,
    PushoutResult,
    SequencingReport,
    Span,
    check_sequential,
    coproduct,
    copair,
    is_pushable,
    parallel_compose,
    pushout,
    pushout_violations,
    sequential_compose,
    verify_universal_property,
)
from .semantics import (
    FiringEvent,
    MarkedComputon,
    Token,
    Trace,
    enabled_transitions,
    fire,
    make_marking,
    run,
)
from .dsl import ParseError, export_dot, parse, serialize, validate_dot
from .errors import *  # noqa: F401,F403

__version__ = "0.1.0"
