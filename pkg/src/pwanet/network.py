"""Feedforward networks as layer chains, and their compilation to PWA form.

A network is a list of layers ending in an output marker. Layers carrying
a PwaFn can be both evaluated and compiled; layers carrying an opaque host
function can only be evaluated; layers known by their dimensions alone can
do neither. Evaluation and compilation both treat "no answer" as a missing
value rather than an error, mirroring partial PWA domains.

ReLU is built here from first principles: the one-dimensional ReLU is two
affine pieces meeting at zero, and the n-dimensional version stacks fresh
one-dimensional copies with concat, one coordinate at a time. Its piece
count is 2^n, one piece per sign orthant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .numeric import ColVec, DimensionError, Mat
from .polyhedra import LinearConstraint, Polyhedron
from .pwa import AffinePiece, PwaFn, check_univalence, evaluate, identity_pwaf, linear_pwaf
from .pwa_algebra import compose, concat


@dataclass(frozen=True)
class OutputLayer:
    """Terminates the network and passes its input through unchanged."""

    dim: int


@dataclass(frozen=True)
class PwaLayer:
    """A layer whose function is piecewise-affine, hence compilable."""

    fn: PwaFn

    @property
    def in_dim(self) -> int:
        return self.fn.in_dim

    @property
    def out_dim(self) -> int:
        return self.fn.out_dim


@dataclass(frozen=True)
class PlainLayer:
    """An opaque host function: evaluable, but not compilable."""

    fn: Callable[[ColVec], ColVec]
    in_dim: int
    out_dim: int


@dataclass(frozen=True)
class UnknownLayer:
    """A layer known only by its dimensions: neither evaluable nor compilable."""

    in_dim: int
    out_dim: int


Layer = Union[OutputLayer, PwaLayer, PlainLayer, UnknownLayer]


@dataclass(frozen=True)
class Network:
    input_dim: int
    output_dim: int
    layers: tuple[Layer, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))


def layer_dims(layer: Layer) -> tuple[int, int]:
    if isinstance(layer, OutputLayer):
        return layer.dim, layer.dim
    return layer.in_dim, layer.out_dim


@dataclass(frozen=True)
class DimMismatch:
    """First place the dimension chain breaks, with what was expected there."""

    position: int
    expected: int
    found: int
    message: str


def validate_dims(net: Network) -> Optional[DimMismatch]:
    """Check the dimension chain; None when the network is well-formed.

    Each layer must consume exactly what the previous one produced, the
    first layer must consume input_dim, and the chain must end in a single
    OutputLayer whose pass-through dim equals output_dim.
    """
    current = net.input_dim
    for i, layer in enumerate(net.layers):
        lin, lout = layer_dims(layer)
        if lin != current:
            return DimMismatch(
                i, current, lin, f"layer {i}: expects input dim {lin}, gets dim {current}"
            )
        if isinstance(layer, OutputLayer):
            if i != len(net.layers) - 1:
                return DimMismatch(
                    i,
                    len(net.layers) - 1,
                    i,
                    f"layer {i}: output layer before the end of the network",
                )
            if layer.dim != net.output_dim:
                return DimMismatch(
                    i,
                    net.output_dim,
                    layer.dim,
                    f"layer {i}: output layer has dim {layer.dim}, "
                    f"network declares {net.output_dim}",
                )
            return None
        current = lout
    return DimMismatch(
        len(net.layers),
        net.output_dim,
        current,
        "network has no output layer",
    )


def nn_eval(net: Network, x: ColVec) -> Optional[ColVec]:
    """Feed x through the layers; None when some layer has no answer.

    A PWA layer yields nothing outside its domain and an unknown layer
    never yields anything; both make the whole evaluation come up empty.
    Shape violations, by contrast, raise.
    """
    if x.dim != net.input_dim:
        raise DimensionError(f"input of dim {x.dim} into network on dim {net.input_dim}")
    current = x
    for layer in net.layers:
        if isinstance(layer, OutputLayer):
            if current.dim != layer.dim:
                raise DimensionError(
                    f"output layer of dim {layer.dim} fed dim {current.dim}"
                )
            return current
        if isinstance(layer, PwaLayer):
            result = evaluate(layer.fn, current)
            if result is None:
                return None
            current = result
        elif isinstance(layer, PlainLayer):
            if current.dim != layer.in_dim:
                raise DimensionError(
                    f"layer of dim {layer.in_dim} fed dim {current.dim}"
                )
            current = layer.fn(current)
            if current.dim != layer.out_dim:
                raise DimensionError(
                    f"host function produced dim {current.dim}, layer declares "
                    f"{layer.out_dim}"
                )
        elif isinstance(layer, UnknownLayer):
            if current.dim != layer.in_dim:
                raise DimensionError(
                    f"layer of dim {layer.in_dim} fed dim {current.dim}"
                )
            return None
        else:
            raise TypeError(f"not a layer: {layer!r}")
    raise ValueError("network has no output layer")


def transform(net: Network) -> Optional[PwaFn]:
    """Collapse an all-PWA network into one PwaFn; None if any layer resists.

    The output marker becomes the identity, and each PWA layer is composed
    onto the collapse of everything after it. On the common layers the
    result evaluates exactly like nn_eval.
    """

    def build(idx: int) -> Optional[PwaFn]:
        if idx >= len(net.layers):
            return None
        layer = net.layers[idx]
        if isinstance(layer, OutputLayer):
            return identity_pwaf(layer.dim)
        if isinstance(layer, PwaLayer):
            rest = build(idx + 1)
            if rest is None:
                return None
            return compose(rest, layer.fn)
        return None

    return build(0)


def relu_1d() -> PwaFn:
    """max(0, x) on R: the zero map left of 0, the identity right of it.

    The two polyhedra share only the origin, where both maps send 0 to 0,
    so the function is univalent; the checker is run once here so the
    verdict is earned rather than asserted.
    """
    left = AffinePiece(
        Polyhedron(1, (LinearConstraint(ColVec([1]), 0),)),
        Mat([[0]]),
        ColVec([0]),
    )
    right = AffinePiece(
        Polyhedron(1, (LinearConstraint(ColVec([-1]), 0),)),
        Mat([[1]]),
        ColVec([0]),
    )
    fn = PwaFn(1, 1, (left, right))
    check_univalence(fn)
    return fn


def relu_nd(n: int) -> PwaFn:
    """Componentwise max(0, x) on R^n, built by stacking 1-d ReLUs.

    Each step concatenates a fresh 1-d ReLU on top of the function built
    so far, so the result has 2^n pieces, one per sign orthant.
    """
    if n < 0:
        raise DimensionError("relu_nd needs a nonnegative dimension")
    fn = identity_pwaf(0)
    one = relu_1d()
    for _ in range(n):
        fn = concat(one, fn)
    return fn


def nn_linear(weights: Mat, bias: ColVec) -> PwaLayer:
    """A dense layer x -> Wx + b."""
    return PwaLayer(linear_pwaf(weights, bias))


def nn_relu(n: int) -> PwaLayer:
    """A componentwise ReLU layer on R^n."""
    return PwaLayer(relu_nd(n))
