"""Piecewise-affine functions over polyhedral subdivisions.

A PwaFn is an ordered list of pieces, each an affine map x -> Mx + b
restricted to a polyhedron. Evaluation walks the list and takes the first
piece containing the input; inputs outside every piece are simply not in
the domain, so partial functions are legal, as is a function with no
pieces at all.

Nothing forces the pieces of a freshly built function to agree where they
overlap. check_univalence decides that property exactly, via linear
programs over the pairwise intersections, and caches the verdict on the
function: "unchecked" until someone asks, then "verified" or "refuted"
with a concrete witness point. Only a univalent function is independent
of piece order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import lp
from .numeric import ColVec, DimensionError, Mat, identity, vec_add, mat_vec_mul, vec_scale, zeros_vec
from .polyhedra import LinearConstraint, Polyhedron, contains, full_space, intersect

UNCHECKED = "unchecked"
VERIFIED = "verified"
REFUTED = "refuted"

_STATUSES = (UNCHECKED, VERIFIED, REFUTED)


@dataclass(frozen=True)
class AffinePiece:
    """The map x -> Mx + b restricted to a polyhedron."""

    polyhedron: Polyhedron
    M: Mat
    b: ColVec

    def __post_init__(self):
        if self.M.cols != self.polyhedron.dim:
            raise DimensionError(
                f"matrix has {self.M.cols} columns on a polyhedron of dim "
                f"{self.polyhedron.dim}"
            )
        if self.M.rows != self.b.dim:
            raise DimensionError(
                f"matrix has {self.M.rows} rows but offset has dim {self.b.dim}"
            )


@dataclass(frozen=True)
class Univalent:
    """All overlapping pieces agree wherever they overlap."""


@dataclass(frozen=True)
class UnivalenceViolation:
    """Two pieces disagree: at `witness`, row `row` of their maps differs."""

    piece_i: int
    piece_j: int
    row: int
    witness: ColVec


UnivalenceVerdict = Union[Univalent, UnivalenceViolation]


class PwaFn:
    """Ordered affine pieces with a cached univalence verdict.

    The cache is write-once per status change and is only ever advanced by
    check_univalence (or trusted constructors such as identity_pwaf, whose
    single piece cannot conflict with itself).
    """

    __slots__ = ("in_dim", "out_dim", "pieces", "univalence", "violation")

    def __init__(
        self,
        in_dim: int,
        out_dim: int,
        pieces=(),
        univalence: str = UNCHECKED,
        violation: Optional[UnivalenceViolation] = None,
    ):
        if in_dim < 0 or out_dim < 0:
            raise DimensionError("function dimensions must be nonnegative")
        pieces = tuple(pieces)
        for piece in pieces:
            if piece.polyhedron.dim != in_dim:
                raise DimensionError(
                    f"piece over dim {piece.polyhedron.dim} in a function on dim {in_dim}"
                )
            if piece.M.rows != out_dim:
                raise DimensionError(
                    f"piece with {piece.M.rows} output rows in a function onto dim {out_dim}"
                )
        if univalence not in _STATUSES:
            raise ValueError(f"unknown univalence status {univalence!r}")
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.pieces = pieces
        self.univalence = univalence
        self.violation = violation

    def __repr__(self) -> str:
        return (
            f"PwaFn({self.in_dim}->{self.out_dim}, {len(self.pieces)} pieces, "
            f"{self.univalence})"
        )


def evaluate(fn: PwaFn, x: ColVec) -> Optional[ColVec]:
    """Apply the first piece whose polyhedron contains x; None if none does."""
    if x.dim != fn.in_dim:
        raise DimensionError(f"point of dim {x.dim} into function on dim {fn.in_dim}")
    for piece in fn.pieces:
        if contains(piece.polyhedron, x):
            return vec_add(mat_vec_mul(piece.M, x), piece.b)
    return None


def in_domain(fn: PwaFn, x: ColVec) -> bool:
    if x.dim != fn.in_dim:
        raise DimensionError(f"point of dim {x.dim} into function on dim {fn.in_dim}")
    return any(contains(piece.polyhedron, x) for piece in fn.pieces)


def identity_pwaf(n: int) -> PwaFn:
    """The identity on R^n as a single unconstrained piece."""
    piece = AffinePiece(full_space(n), identity(n), zeros_vec(n))
    return PwaFn(n, n, (piece,), univalence=VERIFIED)


def linear_pwaf(m: Mat, b: ColVec) -> PwaFn:
    """The total affine map x -> Mx + b as a single unconstrained piece."""
    if m.rows != b.dim:
        raise DimensionError(f"matrix has {m.rows} rows but offset has dim {b.dim}")
    piece = AffinePiece(full_space(m.cols), m, b)
    return PwaFn(m.cols, m.rows, (piece,), univalence=VERIFIED)


def _row_diff(a: Mat, b: Mat, r: int) -> ColVec:
    return ColVec(x - y for x, y in zip(a.entries[r], b.entries[r]))


def _witness_beyond(region: Polyhedron, functional: ColVec, target: Fraction, above: bool) -> ColVec:
    """A point of region where functional.x is strictly off target.

    Only called when the relevant optimum is unbounded, so a point at
    distance one past the target is guaranteed to exist.
    """
    if above:
        cut = LinearConstraint(vec_scale(-1, functional), -(target + 1))
    else:
        cut = LinearConstraint(functional, target - 1)
    point = lp.feasible_point(intersect(region, Polyhedron(region.dim, (cut,))))
    assert point is not None
    return point


def _check_pair(fn: PwaFn, i: int, j: int) -> Optional[UnivalenceViolation]:
    """Search for a disagreement between pieces i and j on their overlap."""
    pi = fn.pieces[i]
    pj = fn.pieces[j]
    region = intersect(pi.polyhedron, pj.polyhedron)
    if lp.is_empty(region):
        return None
    for r in range(fn.out_dim):
        functional = _row_diff(pi.M, pj.M, r)
        target = pj.b[r] - pi.b[r]
        if all(a == 0 for a in functional.entries):
            if target == 0:
                continue
            point = lp.feasible_point(region)
            assert point is not None
            return UnivalenceViolation(i, j, r, point)
        hi = lp.solve(region, functional, lp.MAX)
        if isinstance(hi, lp.Unbounded):
            return UnivalenceViolation(i, j, r, _witness_beyond(region, functional, target, above=True))
        assert isinstance(hi, lp.Optimal)
        if hi.value != target:
            return UnivalenceViolation(i, j, r, hi.witness)
        lo = lp.solve(region, functional, lp.MIN)
        if isinstance(lo, lp.Unbounded):
            return UnivalenceViolation(i, j, r, _witness_beyond(region, functional, target, above=False))
        assert isinstance(lo, lp.Optimal)
        if lo.value != target:
            return UnivalenceViolation(i, j, r, lo.witness)
    return None


def _scan_chunk(payload) -> Optional[UnivalenceViolation]:
    fn, pairs = payload
    for i, j in pairs:
        found = _check_pair(fn, i, j)
        if found is not None:
            return found
    return None


def check_univalence(fn: PwaFn, jobs: int = 1) -> UnivalenceVerdict:
    """Decide whether all overlapping pieces of fn agree on their overlaps.

    Every unordered pair of pieces is examined; for each output row, two
    exact linear programs over the pair's intersection decide whether the
    row difference is pinned to the offset difference. The first violation
    in pair order (then row order) is returned with a witness point lying
    in both polyhedra.

    The verdict is cached on fn. jobs > 1 spreads the pair checks over
    that many worker processes; the reported violation is the same one the
    sequential scan would find.
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    pairs = list(itertools.combinations(range(len(fn.pieces)), 2))
    found: Optional[UnivalenceViolation] = None
    if jobs == 1 or len(pairs) <= 1:
        for i, j in pairs:
            found = _check_pair(fn, i, j)
            if found is not None:
                break
    else:
        import concurrent.futures

        workers = min(jobs, len(pairs))
        step = (len(pairs) + workers - 1) // workers
        chunks = [(fn, pairs[k : k + step]) for k in range(0, len(pairs), step)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_scan_chunk, chunks):
                if result is not None:
                    found = result
                    break
    if found is None:
        fn.univalence = VERIFIED
        fn.violation = None
        return Univalent()
    fn.univalence = REFUTED
    fn.violation = found
    return found


def prune_empty(fn: PwaFn) -> PwaFn:
    """Drop pieces whose polyhedra are empty; order and semantics survive.

    A cached verdict stays valid: an empty piece never overlaps anything,
    and the two pieces of a cached violation both contain its witness, so
    they are kept (their indices are remapped).
    """
    keep = [i for i, piece in enumerate(fn.pieces) if not lp.is_empty(piece.polyhedron)]
    new_index = {old: new for new, old in enumerate(keep)}
    violation = fn.violation
    if violation is not None:
        vi = new_index.get(violation.piece_i)
        vj = new_index.get(violation.piece_j)
        if vi is None or vj is None:
            violation = None
        else:
            violation = UnivalenceViolation(vi, vj, violation.row, violation.witness)
    return PwaFn(
        fn.in_dim,
        fn.out_dim,
        (fn.pieces[i] for i in keep),
        univalence=fn.univalence,
        violation=violation,
    )


def count_regions(fn: PwaFn) -> int:
    """Number of pieces whose polyhedron is non-empty."""
    return sum(1 for piece in fn.pieces if not lp.is_empty(piece.polyhedron))
