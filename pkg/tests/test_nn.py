"""Weight-file codec and feedforward inference."""
import random
import struct

import numpy as np
import pytest

from masks import InputPoint, Layer, MlpNetwork, load_weights, write_weights
from masks.errors import (BadMagic, DimMismatch, InvalidSpec, NonFiniteWeight,
                          TruncatedFile)
from masks.nn import MAGIC, HalfplaneNoise

from oracles import scalar_forward_argmax


def random_net(rng: random.Random, max_layers: int = 4) -> MlpNetwork:
    np_rng = np.random.default_rng(rng.randrange(2**32))
    dims = [rng.randint(1, 6) for _ in range(rng.randint(1, max_layers) + 1)]
    layers = [Layer(np_rng.normal(size=(o, i)).astype(np.float32),
                    np_rng.normal(size=o).astype(np.float32))
              for i, o in zip(dims, dims[1:])]
    labels = tuple(f"c{i}" for i in range(dims[-1]))
    return MlpNetwork(tuple(layers), labels)


def hand_built_file() -> bytes:
    # 2 layers: 2 -> 3 -> 2, all weights 0.5, biases 0.25, labels a/b
    out = bytearray(MAGIC)
    out += struct.pack("<I", 2)
    out += struct.pack("<II", 2, 3) + struct.pack("<6f", *([0.5] * 6))
    out += struct.pack("<3f", *([0.25] * 3))
    out += struct.pack("<II", 3, 2) + struct.pack("<6f", *([0.5] * 6))
    out += struct.pack("<2f", *([0.25] * 2))
    out += struct.pack("<I", 2)
    for label in ("a", "b"):
        raw = label.encode()
        out += struct.pack("<H", len(raw)) + raw
    return bytes(out)


class TestCodec:
    def test_hand_built_file_decodes(self):
        net = load_weights(hand_built_file())
        assert len(net.layers) == 2
        assert net.layers[0].in_dim == 2 and net.layers[0].out_dim == 3
        assert net.layers[1].in_dim == 3 and net.layers[1].out_dim == 2
        assert net.labels == ("a", "b")

    def test_roundtrip_100_random_networks(self):
        rng = random.Random(51)
        for _ in range(100):
            net = random_net(rng)
            data = write_weights(net)
            again = load_weights(data)
            assert write_weights(again) == data
            assert again.labels == net.labels
            for a, b in zip(again.layers, net.layers):
                assert np.array_equal(a.weights, b.weights)
                assert np.array_equal(a.bias, b.bias)

    def test_bad_magic_offset_zero(self):
        data = b"MASKSNN2" + hand_built_file()[8:]
        with pytest.raises(BadMagic) as err:
            load_weights(data)
        assert err.value.offset == 0

    def test_truncated_file_names_the_offset(self):
        data = hand_built_file()
        with pytest.raises(TruncatedFile) as err:
            load_weights(data[:20])
        assert 0 <= err.value.offset <= 20

    def test_trailing_bytes_rejected(self):
        with pytest.raises(TruncatedFile):
            load_weights(hand_built_file() + b"\x00")

    def test_dim_mismatch_between_layers(self):
        data = bytearray(hand_built_file())
        # second layer header starts after magic+count+header+6w+3b
        offset = 8 + 4 + 8 + 24 + 12
        struct.pack_into("<I", data, offset, 4)  # in_dim 3 -> 4
        with pytest.raises(DimMismatch) as err:
            load_weights(bytes(data))
        assert err.value.offset == offset

    def test_label_count_must_match_final_out_dim(self):
        rng = random.Random(52)
        net = random_net(rng)
        data = bytearray(write_weights(net))
        # label count sits right after the layer records
        offset = len(data)
        for label in reversed(net.labels):
            offset -= 2 + len(label.encode())
        offset -= 4
        struct.pack_into("<I", data, offset, len(net.labels) + 1)
        with pytest.raises(DimMismatch):
            load_weights(bytes(data))

    def test_non_finite_weight_offset(self):
        data = bytearray(hand_built_file())
        weight_offset = 8 + 4 + 8 + 4 * 3  # fourth weight of layer 0
        struct.pack_into("<f", data, weight_offset, float("nan"))
        with pytest.raises(NonFiniteWeight) as err:
            load_weights(bytes(data))
        assert err.value.offset == weight_offset

    def test_digest_is_stable(self):
        rng = random.Random(53)
        net = random_net(rng)
        assert net.digest() == load_weights(write_weights(net)).digest()


class TestClassify:
    def test_identity_layer_picks_larger_input(self):
        net = MlpNetwork(
            (Layer(np.eye(2, dtype=np.float32), np.zeros(2, np.float32)),),
            ("a", "b"))
        x = InputPoint(np.array([0.3, 0.9], dtype=np.float32))
        assert net.classify(x) == "b"

    def test_all_zero_final_layer_ties_to_lowest_index(self):
        net = MlpNetwork(
            (Layer(np.zeros((3, 2), np.float32), np.zeros(3, np.float32)),),
            ("a", "b", "c"))
        x = InputPoint(np.array([1.0, -1.0], dtype=np.float32))
        assert net.classify(x) == "a"

    def test_matches_float64_scalar_reference(self):
        rng = random.Random(54)
        np_rng = np.random.default_rng(99)
        for _ in range(30):
            net = random_net(rng, max_layers=3)
            for _ in range(10):
                x = InputPoint(np_rng.normal(
                    size=net.in_dim).astype(np.float32))
                want = net.labels[scalar_forward_argmax(net.layers,
                                                        x.features)]
                assert net.classify(x) == want

    def test_final_layer_scaling_invariance(self):
        rng = random.Random(55)
        for _ in range(20):
            net = random_net(rng)
            lam = np.float32(rng.uniform(0.1, 10.0))
            last = net.layers[-1]
            scaled = MlpNetwork(
                net.layers[:-1] + (Layer(last.weights * lam,
                                         last.bias * lam),),
                net.labels)
            x = InputPoint(np.random.default_rng(1).normal(
                size=net.in_dim).astype(np.float32))
            assert net.classify(x) == scaled.classify(x)

    def test_input_dimension_checked(self):
        net = load_weights(hand_built_file())
        with pytest.raises(InvalidSpec):
            net.classify(InputPoint(np.zeros(5, dtype=np.float32)))

    def test_layer_dims_must_chain(self):
        good = Layer(np.zeros((3, 2), np.float32), np.zeros(3, np.float32))
        bad = Layer(np.zeros((2, 4), np.float32), np.zeros(2, np.float32))
        with pytest.raises(ValueError):
            MlpNetwork((good, bad), ("a", "b"))


class TestMocks:
    def test_halfplane_is_deterministic_per_seed(self):
        a = HalfplaneNoise(seed=7)
        b = HalfplaneNoise(seed=7)
        c = HalfplaneNoise(seed=8)
        xs = [InputPoint(np.array([v, 0.0], dtype=np.float32))
              for v in np.linspace(-0.2, 0.2, 21)]
        assert [a.classify(x) for x in xs] == [b.classify(x) for x in xs]
        assert any(a.classify(x) != c.classify(x) for x in xs)

    def test_halfplane_is_clean_outside_the_band(self):
        clf = HalfplaneNoise(seed=3, band=0.1)
        assert clf.classify(InputPoint(
            np.array([0.5, 0.0], dtype=np.float32))) == "pos"
        assert clf.classify(InputPoint(
            np.array([-0.5, 0.0], dtype=np.float32))) == "neg"
