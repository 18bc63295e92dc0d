"""Linear constraints and convex polyhedra in halfspace form.

A polyhedron is a finite ordered list of non-strict constraints c.x <= b.
The empty list denotes all of R^dim, which is why the dimension is stored
explicitly. Constraints are kept verbatim: no normalization, deduplication,
or reordering, so structural identities (such as one constraint list being
a prefix of another) stay visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numeric import (
    ColVec,
    DimensionError,
    ScalarLike,
    as_scalar,
    dot,
    extend_vec_bottom,
    extend_vec_top,
)


@dataclass(frozen=True)
class LinearConstraint:
    """The closed halfspace c.x <= b."""

    c: ColVec
    b: Fraction

    def __post_init__(self):
        if not isinstance(self.c, ColVec):
            raise TypeError("constraint coefficients must be a ColVec")
        object.__setattr__(self, "b", as_scalar(self.b))

    @property
    def dim(self) -> int:
        return self.c.dim


def satisfies_lc(x: ColVec, lc: LinearConstraint) -> bool:
    """Does x satisfy the single constraint lc?"""
    if x.dim != lc.dim:
        raise DimensionError(f"point of dim {x.dim} against constraint of dim {lc.dim}")
    return dot(lc.c, x) <= lc.b


@dataclass(frozen=True)
class Polyhedron:
    """Intersection of finitely many closed halfspaces of a fixed dimension."""

    dim: int
    constraints: tuple[LinearConstraint, ...] = ()

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionError("polyhedron dimension must be nonnegative")
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for lc in self.constraints:
            if lc.dim != self.dim:
                raise DimensionError(
                    f"constraint of dim {lc.dim} in polyhedron of dim {self.dim}"
                )


def full_space(dim: int) -> Polyhedron:
    """All of R^dim: the polyhedron with no constraints."""
    return Polyhedron(dim)


def contains(p: Polyhedron, x: ColVec) -> bool:
    if x.dim != p.dim:
        raise DimensionError(f"point of dim {x.dim} against polyhedron of dim {p.dim}")
    return all(dot(lc.c, x) <= lc.b for lc in p.constraints)


def intersect(p1: Polyhedron, p2: Polyhedron) -> Polyhedron:
    """Concatenate constraint lists; p1's constraints come first."""
    if p1.dim != p2.dim:
        raise DimensionError(f"intersect of dim {p1.dim} against dim {p2.dim}")
    return Polyhedron(p1.dim, p1.constraints + p2.constraints)


def lift_constraints_bottom(
    constraints: tuple[LinearConstraint, ...], new_dim: int
) -> tuple[LinearConstraint, ...]:
    """Reinterpret constraints in a larger space, original coordinates on top.

    Each coefficient vector is zero-padded below, so the constraint ignores
    the appended coordinates.
    """
    return tuple(
        LinearConstraint(extend_vec_bottom(lc.c, new_dim), lc.b) for lc in constraints
    )


def lift_constraints_top(
    constraints: tuple[LinearConstraint, ...], new_dim: int
) -> tuple[LinearConstraint, ...]:
    """Reinterpret constraints in a larger space, original coordinates at bottom."""
    return tuple(
        LinearConstraint(extend_vec_top(lc.c, new_dim), lc.b) for lc in constraints
    )
