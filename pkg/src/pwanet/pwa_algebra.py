"""Composition and concatenation of piecewise-affine functions.

Both operators build one piece per pair of input pieces, so piece counts
multiply. Empty pairings are kept; prune_empty is a separate pass. The
pair order is fixed: the inner (or second) argument varies in the outer
loop, so pieces of compose(f, g) and concat(f, g) are laid out g-piece by
g-piece with f's pieces cycling fastest.
"""

from __future__ import annotations

from .numeric import ColVec, DimensionError, Mat, block_diag, dot, mat_mul, mat_vec_mul, transpose, vec_add, vec_concat
from .polyhedra import (
    LinearConstraint,
    Polyhedron,
    lift_constraints_bottom,
    lift_constraints_top,
)
from .pwa import VERIFIED, AffinePiece, PwaFn, check_univalence


def compose_polyhedron(p_g: Polyhedron, m_g: Mat, b_g: ColVec, p_f: Polyhedron) -> Polyhedron:
    """Preimage piece polyhedron: x in p_g and (m_g x + b_g) in p_f.

    p_g's constraints are kept verbatim; each constraint c.y <= b of p_f
    is pulled back through y = m_g x + b_g into (m_g^T c).x <= b - c.b_g.
    """
    if m_g.cols != p_g.dim:
        raise DimensionError(f"map on dim {m_g.cols} over polyhedron of dim {p_g.dim}")
    if m_g.rows != b_g.dim:
        raise DimensionError(f"matrix has {m_g.rows} rows but offset has dim {b_g.dim}")
    if m_g.rows != p_f.dim:
        raise DimensionError(
            f"map into dim {m_g.rows} against target polyhedron of dim {p_f.dim}"
        )
    m_g_t = transpose(m_g)
    pulled = tuple(
        LinearConstraint(mat_vec_mul(m_g_t, lc.c), lc.b - dot(lc.c, b_g))
        for lc in p_f.constraints
    )
    return Polyhedron(p_g.dim, p_g.constraints + pulled)


def compose_affine(m_f: Mat, b_f: ColVec, m_g: Mat, b_g: ColVec) -> tuple[Mat, ColVec]:
    """The affine map x -> m_f(m_g x + b_g) + b_f as a (matrix, offset) pair."""
    return mat_mul(m_f, m_g), vec_add(mat_vec_mul(m_f, b_g), b_f)


def compose(f: PwaFn, g: PwaFn, recheck: bool = False) -> PwaFn:
    """The composition f after g, one piece per (f piece, g piece) pair.

    Wherever both sides are defined, evaluate(compose(f, g), x) equals
    evaluate(f, evaluate(g, x)). The result's univalence starts unchecked;
    recheck=True runs the checker when both inputs are already verified.
    """
    if g.out_dim != f.in_dim:
        raise DimensionError(
            f"compose of function on dim {f.in_dim} after function onto dim {g.out_dim}"
        )
    pieces = []
    for gp in g.pieces:
        for fp in f.pieces:
            poly = compose_polyhedron(gp.polyhedron, gp.M, gp.b, fp.polyhedron)
            m, b = compose_affine(fp.M, fp.b, gp.M, gp.b)
            pieces.append(AffinePiece(poly, m, b))
    out = PwaFn(g.in_dim, f.out_dim, pieces)
    if recheck and f.univalence == VERIFIED and g.univalence == VERIFIED:
        check_univalence(out)
    return out


def concat_polyhedra(p_f: Polyhedron, p_g: Polyhedron) -> Polyhedron:
    """Product polyhedron in dim p_f.dim + p_g.dim.

    p_f's constraints come first, padded to ignore the new bottom
    coordinates; p_g's follow, padded to ignore the top ones.
    """
    total = p_f.dim + p_g.dim
    return Polyhedron(
        total,
        lift_constraints_bottom(p_f.constraints, total)
        + lift_constraints_top(p_g.constraints, total),
    )


def concat(f: PwaFn, g: PwaFn, recheck: bool = False) -> PwaFn:
    """Run f and g side by side on a stacked input, f on top.

    evaluate(concat(f, g), x1 ++ x2) equals evaluate(f, x1) ++ evaluate(g, x2)
    whenever both halves are defined. Piece pairs follow the same order as
    compose: g's pieces drive the outer loop, f's cycle fastest.
    """
    pieces = []
    for gp in g.pieces:
        for fp in f.pieces:
            poly = concat_polyhedra(fp.polyhedron, gp.polyhedron)
            m = block_diag(fp.M, gp.M)
            b = vec_concat(fp.b, gp.b)
            pieces.append(AffinePiece(poly, m, b))
    out = PwaFn(f.in_dim + g.in_dim, f.out_dim + g.out_dim, pieces)
    if recheck and f.univalence == VERIFIED and g.univalence == VERIFIED:
        check_univalence(out)
    return out
