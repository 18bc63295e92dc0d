"""Layer chains: dimension validation, evaluation, ReLU, and compilation."""

import random
from fractions import Fraction

import pytest

from pwanet.numeric import ColVec, DimensionError, Mat
from pwanet.pwa import VERIFIED, evaluate, in_domain
from pwanet.network import (
    DimMismatch,
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

from genutil import colvec_of, mat_of, point, random_network, restricted_affine
from oracles import apply_affine, relu_reference

EXAMPLE_WEIGHTS = [["2.7", "0"], ["1", "0.01"]]
EXAMPLE_BIAS = ["1", "0.25"]


def example_network() -> Network:
    """Dense 2 -> 2 with decimal-string weights, then ReLU, then output."""
    linear = nn_linear(Mat(EXAMPLE_WEIGHTS), ColVec(EXAMPLE_BIAS))
    return Network(2, 2, (linear, nn_relu(2), OutputLayer(2)))


def example_oracle(x: ColVec) -> ColVec:
    pre = apply_affine(EXAMPLE_WEIGHTS, EXAMPLE_BIAS, list(x.entries))
    return relu_reference(ColVec(pre))


class TestLayerDims:
    def test_each_kind(self):
        assert layer_dims(OutputLayer(3)) == (3, 3)
        assert layer_dims(nn_relu(2)) == (2, 2)
        assert layer_dims(nn_linear(Mat([[1, 0]]), ColVec([0]))) == (2, 1)
        assert layer_dims(PlainLayer(lambda v: v, 4, 4)) == (4, 4)
        assert layer_dims(UnknownLayer(2, 5)) == (2, 5)


class TestValidateDims:
    def test_example_network_is_well_formed(self):
        assert validate_dims(example_network()) is None

    def test_output_only_network_is_well_formed(self):
        assert validate_dims(Network(2, 2, (OutputLayer(2),))) is None

    def test_relu_fed_wrong_width(self):
        net = Network(
            2,
            2,
            (nn_linear(mat_of(random.Random(0), 3, 2), ColVec([0, 0, 0])), nn_relu(2)),
        )
        mismatch = validate_dims(net)
        assert mismatch == DimMismatch(
            1, 3, 2, "layer 1: expects input dim 2, gets dim 3"
        )

    def test_first_layer_must_consume_input_dim(self):
        net = Network(3, 1, (nn_linear(Mat([[1, 0]]), ColVec([0])), OutputLayer(1)))
        mismatch = validate_dims(net)
        assert mismatch is not None and mismatch.position == 0
        assert (mismatch.expected, mismatch.found) == (3, 2)

    def test_missing_output_layer(self):
        net = Network(2, 2, (nn_relu(2),))
        mismatch = validate_dims(net)
        assert mismatch is not None
        assert mismatch.position == 1
        assert mismatch.message == "network has no output layer"

    def test_output_layer_in_the_middle(self):
        net = Network(2, 2, (OutputLayer(2), nn_relu(2), OutputLayer(2)))
        mismatch = validate_dims(net)
        assert mismatch is not None and mismatch.position == 0
        assert "before the end" in mismatch.message

    def test_output_layer_contradicts_declared_output_dim(self):
        net = Network(2, 3, (OutputLayer(2),))
        mismatch = validate_dims(net)
        assert mismatch is not None
        assert (mismatch.expected, mismatch.found) == (3, 2)


class TestNnEval:
    def test_example_value(self):
        got = nn_eval(example_network(), ColVec(["1", "1"]))
        assert got == ColVec([Fraction(37, 10), Fraction(63, 50)])

    def test_example_against_reference_loops(self):
        rng = random.Random(6601)
        net = example_network()
        for _ in range(200):
            x = point(rng, 2)
            assert nn_eval(net, x) == example_oracle(x)

    def test_relu_clips_negative_preactivations(self):
        got = nn_eval(example_network(), ColVec(["-1", "1"]))
        assert got == ColVec([Fraction(0), Fraction(0)])

    def test_output_only_is_identity(self):
        rng = random.Random(6602)
        net = Network(3, 3, (OutputLayer(3),))
        for _ in range(20):
            x = point(rng, 3)
            assert nn_eval(net, x) == x

    def test_unknown_layer_yields_nothing(self):
        net = Network(2, 2, (nn_relu(2), UnknownLayer(2, 2), OutputLayer(2)))
        assert nn_eval(net, ColVec([1, 1])) is None

    def test_plain_layer_is_applied(self):
        double = PlainLayer(lambda v: ColVec(2 * e for e in v), 2, 2)
        net = Network(2, 2, (double, OutputLayer(2),))
        assert nn_eval(net, ColVec([3, -5])) == ColVec([6, -10])

    def test_plain_layer_with_lying_output_dim(self):
        bad = PlainLayer(lambda v: ColVec([v[0]]), 2, 2)
        net = Network(2, 2, (bad, OutputLayer(2)))
        with pytest.raises(DimensionError):
            nn_eval(net, ColVec([1, 2]))

    def test_input_width_mismatch_raises(self):
        with pytest.raises(DimensionError):
            nn_eval(example_network(), ColVec([1, 2, 3]))

    def test_partial_pwa_layer_outside_its_domain(self):
        rng = random.Random(6603)
        fn = restricted_affine(rng, 1, 1)
        net = Network(1, 1, (PwaLayer(fn), OutputLayer(1)))
        outside = ColVec([1000])
        assert not in_domain(fn, outside)
        assert nn_eval(net, outside) is None

    def test_network_without_output_layer_raises(self):
        net = Network(2, 2, (nn_relu(2),))
        with pytest.raises(ValueError):
            nn_eval(net, ColVec([1, 1]))


class TestRelu1d:
    def test_piece_layout(self):
        fn = relu_1d()
        assert (fn.in_dim, fn.out_dim) == (1, 1)
        left, right = fn.pieces
        assert left.polyhedron.constraints[0].c == ColVec([1])
        assert left.polyhedron.constraints[0].b == 0
        assert left.M == Mat([[0]]) and left.b == ColVec([0])
        assert right.polyhedron.constraints[0].c == ColVec([-1])
        assert right.M == Mat([[1]]) and right.b == ColVec([0])

    def test_verdict_is_earned_in_the_constructor(self):
        assert relu_1d().univalence == VERIFIED

    def test_values(self):
        fn = relu_1d()
        for raw in ("-7", "-1/3", "0", "1/3", "7"):
            x = ColVec([raw])
            assert evaluate(fn, x) == relu_reference(x)


class TestReluNd:
    def test_dim_zero(self):
        fn = relu_nd(0)
        assert (fn.in_dim, fn.out_dim) == (0, 0)
        assert evaluate(fn, ColVec([])) == ColVec([])

    def test_dim_one_matches_relu_1d(self):
        rng = random.Random(6604)
        one = relu_1d()
        built = relu_nd(1)
        for _ in range(100):
            x = point(rng, 1)
            assert evaluate(built, x) == evaluate(one, x)

    def test_known_value(self):
        assert evaluate(relu_nd(2), ColVec([-1, 3])) == ColVec([0, 3])

    def test_piece_count_is_two_to_the_n(self):
        for n in range(6):
            assert len(relu_nd(n).pieces) == 2**n

    def test_pieces_are_the_sign_orthants(self):
        fn = relu_nd(3)
        seen = set()
        for piece in fn.pieces:
            pattern = {}
            for lc in piece.polyhedron.constraints:
                assert lc.b == 0
                support = [(k, e) for k, e in enumerate(lc.c) if e != 0]
                assert len(support) == 1
                axis, coeff = support[0]
                assert coeff in (1, -1) and axis not in pattern
                # x_k <= 0 clips the coordinate; -x_k <= 0 passes it through.
                pattern[axis] = 0 if coeff == 1 else 1
            key = tuple(pattern[k] for k in range(3))
            assert piece.M == Mat(
                [[key[r] if c == r else 0 for c in range(3)] for r in range(3)]
            )
            assert piece.b == ColVec([0, 0, 0])
            seen.add(key)
        assert len(seen) == 8

    def test_matches_componentwise_reference(self):
        rng = random.Random(6605)
        for n in range(1, 5):
            fn = relu_nd(n)
            for _ in range(50):
                x = point(rng, n)
                assert evaluate(fn, x) == relu_reference(x)

    def test_negative_dim_rejected(self):
        with pytest.raises(DimensionError):
            relu_nd(-1)


class TestTransform:
    def test_output_only_collapses_to_identity(self):
        rng = random.Random(6606)
        fn = transform(Network(2, 2, (OutputLayer(2),)))
        assert fn is not None and len(fn.pieces) == 1
        for _ in range(20):
            x = point(rng, 2)
            assert evaluate(fn, x) == x

    def test_example_network_compiles_to_four_pieces(self):
        fn = transform(example_network())
        assert fn is not None
        assert len(fn.pieces) == 4
        assert evaluate(fn, ColVec(["1", "1"])) == ColVec(
            [Fraction(37, 10), Fraction(63, 50)]
        )

    def test_example_agrees_with_nn_eval(self):
        rng = random.Random(6607)
        net = example_network()
        fn = transform(net)
        assert fn is not None
        for _ in range(300):
            x = point(rng, 2)
            assert evaluate(fn, x) == nn_eval(net, x)

    def test_plain_layer_blocks_compilation(self):
        net = Network(
            2, 2, (PlainLayer(lambda v: v, 2, 2), nn_relu(2), OutputLayer(2))
        )
        assert transform(net) is None

    def test_unknown_layer_blocks_compilation(self):
        net = Network(2, 2, (nn_relu(2), UnknownLayer(2, 2), OutputLayer(2)))
        assert transform(net) is None

    def test_piece_count_is_the_product_over_layers(self):
        rng = random.Random(6608)
        for _ in range(20):
            net = random_network(rng)
            fn = transform(net)
            assert fn is not None
            product = 1
            for layer in net.layers:
                if isinstance(layer, PwaLayer):
                    product *= len(layer.fn.pieces)
            assert len(fn.pieces) == product

    def test_random_networks_evaluate_identically(self):
        rng = random.Random(6609)
        for _ in range(30):
            net = random_network(rng)
            assert validate_dims(net) is None
            fn = transform(net)
            assert fn is not None
            assert (fn.in_dim, fn.out_dim) == (net.input_dim, net.output_dim)
            for _ in range(30):
                x = point(rng, net.input_dim)
                assert evaluate(fn, x) == nn_eval(net, x)
