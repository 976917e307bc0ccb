"""Dense feedforward inference from a portable weight file, plus
deterministic mock classifiers for oracle testing.

Weight file layout (little-endian, no padding, no checksum)::

    bytes 0-7   ASCII "MASKSNN1"
    u32         layer count L
    L records:  u32 in_dim, u32 out_dim,
                out_dim*in_dim f32 weights (output-neuron-major rows),
                out_dim f32 biases
    u32         label count (must equal the last out_dim)
    per label:  u16 byte length, UTF-8 bytes
"""
from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (BadMagic, DimMismatch, InvalidSpec, NonFiniteWeight,
                     TruncatedFile)
from .perturb import InputPoint

__all__ = [
    "MAGIC", "Layer", "MlpNetwork", "load_weights", "write_weights",
    "load_weights_file",
    "ConstantClassifier", "ScriptedClassifier", "Quadrant2D", "HalfplaneNoise",
]

MAGIC = b"MASKSNN1"


@dataclass(frozen=True, eq=False)
class Layer:
    weights: np.ndarray  # (out_dim, in_dim) float32
    bias: np.ndarray     # (out_dim,) float32

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float32)
        b = np.asarray(self.bias, dtype=np.float32)
        if w.ndim != 2 or b.ndim != 1 or w.shape[0] != b.shape[0]:
            raise ValueError("layer weights must be (out, in), bias (out,)")
        w = w.copy()
        b = b.copy()
        w.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", b)

    @property
    def in_dim(self) -> int:
        return self.weights.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True, eq=False)
class MlpNetwork:
    """Immutable dense network: ReLU hidden layers, linear output layer.

    The returned class is the argmax over output logits, ties broken by the
    lowest label index.
    """

    layers: tuple[Layer, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.layers:
            raise ValueError("network needs at least one layer")
        for a, b in zip(self.layers, self.layers[1:]):
            if a.out_dim != b.in_dim:
                raise ValueError("adjacent layer dimensions do not chain")
        if self.layers[-1].out_dim != len(self.labels):
            raise ValueError("label count must equal the final out_dim")

    @property
    def classes(self) -> tuple[str, ...]:
        return self.labels

    @property
    def in_dim(self) -> int:
        return self.layers[0].in_dim

    def logits(self, x: InputPoint) -> np.ndarray:
        if x.dim != self.in_dim:
            raise InvalidSpec(
                f"input dimension {x.dim} != network input {self.in_dim}")
        h = x.features  # float32 already
        for layer in self.layers[:-1]:
            h = np.maximum(layer.weights @ h + layer.bias, np.float32(0.0))
        last = self.layers[-1]
        return last.weights @ h + last.bias

    def classify(self, x: InputPoint) -> str:
        return self.labels[int(np.argmax(self.logits(x)))]

    def digest(self) -> str:
        return hashlib.sha256(write_weights(self)).hexdigest()


def _need(data: bytes, offset: int, n: int, what: str) -> None:
    if offset + n > len(data):
        raise TruncatedFile(f"file ends inside {what}", offset)


def load_weights(data: bytes) -> MlpNetwork:
    """Decode the weight format, validating dimension chaining and finiteness."""
    _need(data, 0, 8, "magic")
    if data[:8] != MAGIC:
        raise BadMagic(f"bad magic {data[:8]!r}", 0)
    offset = 8
    _need(data, offset, 4, "layer count")
    (layer_count,) = struct.unpack_from("<I", data, offset)
    offset += 4
    if layer_count == 0:
        raise DimMismatch("layer count must be >= 1", 8)

    layers = []
    prev_out = None
    for li in range(layer_count):
        _need(data, offset, 8, f"layer {li} header")
        in_dim, out_dim = struct.unpack_from("<II", data, offset)
        if in_dim == 0 or out_dim == 0:
            raise DimMismatch(f"layer {li} has a zero dimension", offset)
        if prev_out is not None and in_dim != prev_out:
            raise DimMismatch(
                f"layer {li} in_dim {in_dim} != previous out_dim {prev_out}",
                offset)
        offset += 8
        n = out_dim * in_dim
        _need(data, offset, 4 * n, f"layer {li} weights")
        w = np.frombuffer(data, dtype="<f4", count=n, offset=offset)
        if not np.all(np.isfinite(w)):
            bad = int(np.flatnonzero(~np.isfinite(w))[0])
            raise NonFiniteWeight(f"layer {li} weight is not finite",
                                  offset + 4 * bad)
        offset += 4 * n
        _need(data, offset, 4 * out_dim, f"layer {li} biases")
        b = np.frombuffer(data, dtype="<f4", count=out_dim, offset=offset)
        if not np.all(np.isfinite(b)):
            bad = int(np.flatnonzero(~np.isfinite(b))[0])
            raise NonFiniteWeight(f"layer {li} bias is not finite",
                                  offset + 4 * bad)
        offset += 4 * out_dim
        layers.append(Layer(w.reshape(out_dim, in_dim), b))
        prev_out = out_dim

    _need(data, offset, 4, "label count")
    (label_count,) = struct.unpack_from("<I", data, offset)
    if label_count != prev_out:
        raise DimMismatch(
            f"label count {label_count} != final out_dim {prev_out}", offset)
    offset += 4
    labels = []
    for i in range(label_count):
        _need(data, offset, 2, f"label {i} length")
        (ln,) = struct.unpack_from("<H", data, offset)
        offset += 2
        _need(data, offset, ln, f"label {i}")
        labels.append(data[offset:offset + ln].decode("utf-8"))
        offset += ln
    if offset != len(data):
        raise TruncatedFile("trailing bytes after labels", offset)
    return MlpNetwork(tuple(layers), tuple(labels))


def write_weights(net: MlpNetwork) -> bytes:
    out = bytearray(MAGIC)
    out += struct.pack("<I", len(net.layers))
    for layer in net.layers:
        out += struct.pack("<II", layer.in_dim, layer.out_dim)
        out += layer.weights.astype("<f4").tobytes()
        out += layer.bias.astype("<f4").tobytes()
    out += struct.pack("<I", len(net.labels))
    for label in net.labels:
        raw = label.encode("utf-8")
        out += struct.pack("<H", len(raw)) + raw
    return bytes(out)


def load_weights_file(path) -> MlpNetwork:
    with open(path, "rb") as fh:
        return load_weights(fh.read())


# --- deterministic mock classifiers -------------------------------------

@dataclass(frozen=True)
class ConstantClassifier:
    label: str
    classes: tuple[str, ...] = ()

    def classify(self, x: InputPoint) -> str:
        return self.label


class ScriptedClassifier:
    """Maps each point (by value) to a prescribed label.

    Build one from a perturbation set and a label sequence to reproduce any
    knowledge set exactly.
    """

    def __init__(self, script: dict[bytes, str], classes: Sequence[str] = ()):
        self._script = dict(script)
        self.classes = tuple(classes) or tuple(sorted(set(script.values())))

    @staticmethod
    def for_points(points: Sequence[InputPoint], labels: Sequence[str],
                   classes: Sequence[str] = ()) -> "ScriptedClassifier":
        if len(points) != len(labels):
            raise ValueError("one label per point")
        return ScriptedClassifier(
            {p.key(): lab for p, lab in zip(points, labels)}, classes)

    def classify(self, x: InputPoint) -> str:
        try:
            return self._script[x.key()]
        except KeyError:
            raise InvalidSpec("scripted classifier saw an unscripted point")


@dataclass(frozen=True)
class Quadrant2D:
    """Class = sign quadrant of a 2-D point (q1..q4, axes count as positive)."""

    classes: tuple[str, ...] = ("q1", "q2", "q3", "q4")

    def classify(self, x: InputPoint) -> str:
        a, b = float(x.features[0]), float(x.features[1])
        if a >= 0:
            return "q1" if b >= 0 else "q4"
        return "q2" if b >= 0 else "q3"


@dataclass(frozen=True)
class HalfplaneNoise:
    """Halfplane classifier (pos iff x[0] >= 0) whose answer flips
    pseudo-randomly inside a band around the boundary; deterministic given
    the seed."""

    seed: int
    band: float = 0.1
    classes: tuple[str, ...] = ("neg", "pos")

    def classify(self, x: InputPoint) -> str:
        v = float(x.features[0])
        label = "pos" if v >= 0 else "neg"
        if abs(v) < self.band:
            h = hashlib.blake2b(x.key(), digest_size=1,
                                key=self.seed.to_bytes(8, "little")).digest()
            if h[0] & 1:
                label = "neg" if label == "pos" else "pos"
        return label
