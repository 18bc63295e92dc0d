"""Exact piecewise-affine functions on polyhedral subdivisions.

The package represents PWA functions as ordered lists of affine pieces
over halfspace polyhedra, with all arithmetic in exact rationals. It
offers composition and concatenation operators whose piece structure is
fully explicit, an exact simplex for emptiness and constancy questions,
a univalence checker with concrete counterexample witnesses, and a
compiler that collapses feedforward networks built from linear and ReLU
layers into a single PWA function that evaluates identically.
"""

from .numeric import (
    ColVec,
    DimensionError,
    Mat,
    Scalar,
    as_scalar,
    block_diag,
    dot,
    extend_vec_bottom,
    extend_vec_top,
    format_scalar,
    identity,
    mat_add,
    mat_mul,
    mat_vec_mul,
    parse_scalar,
    scalar_mult,
    transpose,
    vec_add,
    vec_concat,
    vec_scale,
    vec_sub,
    zeros_mat,
    zeros_vec,
)
from .polyhedra import (
    LinearConstraint,
    Polyhedron,
    contains,
    full_space,
    intersect,
    lift_constraints_bottom,
    lift_constraints_top,
    satisfies_lc,
)
from .lp import (
    Infeasible,
    LpOutcome,
    Optimal,
    Unbounded,
    feasible_point,
    is_constant_on,
    is_empty,
    solve,
)
from .pwa import (
    REFUTED,
    UNCHECKED,
    VERIFIED,
    AffinePiece,
    PwaFn,
    Univalent,
    UnivalenceViolation,
    check_univalence,
    count_regions,
    evaluate,
    identity_pwaf,
    in_domain,
    linear_pwaf,
    prune_empty,
)
from .pwa_algebra import (
    compose,
    compose_affine,
    compose_polyhedron,
    concat,
    concat_polyhedra,
)
from .network import (
    DimMismatch,
    Layer,
    Network,
    OutputLayer,
    PlainLayer,
    PwaLayer,
    UnknownLayer,
    layer_dims,
    nn_eval,
    nn_linear,
    nn_relu,
    relu_1d,
    relu_nd,
    transform,
    validate_dims,
)
from .formats import ParseError, export_smt, parse_network, parse_pwa, serialize_pwa

__version__ = "0.1.0"

__all__ = [
    "AffinePiece",
    "ColVec",
    "DimensionError",
    "DimMismatch",
    "Infeasible",
    "Layer",
    "LinearConstraint",
    "LpOutcome",
    "Mat",
    "Network",
    "Optimal",
    "OutputLayer",
    "ParseError",
    "PlainLayer",
    "Polyhedron",
    "PwaFn",
    "PwaLayer",
    "REFUTED",
    "Scalar",
    "UNCHECKED",
    "Unbounded",
    "UnivalenceViolation",
    "Univalent",
    "UnknownLayer",
    "VERIFIED",
    "as_scalar",
    "block_diag",
    "check_univalence",
    "compose",
    "compose_affine",
    "compose_polyhedron",
    "concat",
    "concat_polyhedra",
    "contains",
    "count_regions",
    "dot",
    "evaluate",
    "export_smt",
    "extend_vec_bottom",
    "extend_vec_top",
    "feasible_point",
    "format_scalar",
    "full_space",
    "identity",
    "identity_pwaf",
    "in_domain",
    "intersect",
    "is_constant_on",
    "is_empty",
    "layer_dims",
    "lift_constraints_bottom",
    "lift_constraints_top",
    "linear_pwaf",
    "mat_add",
    "mat_mul",
    "mat_vec_mul",
    "nn_eval",
    "nn_linear",
    "nn_relu",
    "parse_network",
    "parse_pwa",
    "parse_scalar",
    "prune_empty",
    "relu_1d",
    "relu_nd",
    "satisfies_lc",
    "scalar_mult",
    "serialize_pwa",
    "solve",
    "transform",
    "transpose",
    "validate_dims",
    "vec_add",
    "vec_concat",
    "vec_scale",
    "vec_sub",
    "zeros_mat",
    "zeros_vec",
]
