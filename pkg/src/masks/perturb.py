"""Perturbation-set generation.

A perturbation spec describes a finite, deterministic family of input
points around a base point: axis-aligned epsilon offsets, a translation
grid over an image, an explicit point list, or a union of those.  The base
point is always the first element of the generated set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidSpec, ShapeMissing

__all__ = [
    "InputPoint", "EpsilonGrid", "AffineGrid", "Explicit", "Composite",
    "PerturbationSpec", "generate_perturbations", "translate_image",
]


@dataclass(frozen=True, eq=False)
class InputPoint:
    """An immutable feature vector, optionally with 2-D image shape metadata."""

    features: np.ndarray
    shape: tuple[int, int] | None = None

    def __post_init__(self):
        arr = np.asarray(self.features, dtype=np.float32)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidSpec("input point must be a non-empty 1-D vector")
        if not np.all(np.isfinite(arr)):
            raise InvalidSpec("input point contains non-finite values")
        if self.shape is not None:
            h, w = self.shape
            if h * w != arr.size:
                raise InvalidSpec(f"shape {self.shape} does not match size {arr.size}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "features", arr)

    @property
    def dim(self) -> int:
        return int(self.features.size)

    def key(self) -> bytes:
        """Stable identity for de-duplication and scripted classifiers."""
        return self.features.tobytes()

    def image(self) -> np.ndarray:
        if self.shape is None:
            raise ShapeMissing("input point has no image shape metadata")
        return self.features.reshape(self.shape)


@dataclass(frozen=True)
class EpsilonGrid:
    """Axis-aligned offsets: ``steps`` values evenly spaced over [-eps, eps]
    applied to each configured axis (all axes when ``axes`` is None)."""

    epsilon: float
    metric: str = "linf"
    steps: int = 2
    axes: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.epsilon < 0:
            raise InvalidSpec("epsilon must be >= 0")
        if self.metric not in ("linf", "l2"):
            raise InvalidSpec(f"unknown metric {self.metric!r}")
        if self.steps < 1:
            raise InvalidSpec("steps must be >= 1")


@dataclass(frozen=True)
class AffineGrid:
    """Image translations by (t*width, t*height) pixels for ``steps`` evenly
    spaced values of t over [lo, hi], with zero padding."""

    lo: float
    hi: float
    steps: int
    axis: str = "diag"       # x | y | diag
    interp: str = "bilinear"  # nearest | bilinear

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidSpec("range lo must be <= hi")
        if self.steps < 1:
            raise InvalidSpec("steps must be >= 1")
        if self.axis not in ("x", "y", "diag"):
            raise InvalidSpec(f"unknown axis {self.axis!r}")
        if self.interp not in ("nearest", "bilinear"):
            raise InvalidSpec(f"unknown interpolation {self.interp!r}")


@dataclass(frozen=True)
class Explicit:
    points: tuple[InputPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))


@dataclass(frozen=True)
class Composite:
    """De-duplicated union of the parts, in order."""

    parts: tuple["PerturbationSpec", ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise InvalidSpec("composite spec needs at least one part")


PerturbationSpec = Union[EpsilonGrid, AffineGrid, Explicit, Composite]


def translate_image(image: np.ndarray, dx: float, dy: float,
                    interp: str = "bilinear") -> np.ndarray:
    """Shift image content by (dx, dy) pixels with zero padding.

    out[y, x] samples in[y - dy, x - dx]; bilinear interpolation reads the
    four surrounding pixels, values outside the frame are zero.
    """
    image = np.asarray(image, dtype=np.float32)
    h, w = image.shape
    ys = np.arange(h, dtype=np.float32)[:, None] - np.float32(dy)
    xs = np.arange(w, dtype=np.float32)[None, :] - np.float32(dx)
    if interp == "nearest":
        yi = np.rint(ys).astype(np.int64)
        xi = np.rint(xs).astype(np.int64)
        inside = (yi >= 0) & (yi < h) & (xi >= 0) & (xi < w)
        vals = image[np.clip(yi, 0, h - 1), np.clip(xi, 0, w - 1)]
        return np.where(inside, vals, np.float32(0.0)).astype(np.float32)

    y0 = np.floor(ys)
    x0 = np.floor(xs)
    fy = ys - y0
    fx = xs - x0
    y0 = y0.astype(np.int64)
    x0 = x0.astype(np.int64)

    def sample(yi, xi):
        inside = (yi >= 0) & (yi < h) & (xi >= 0) & (xi < w)
        vals = image[np.clip(yi, 0, h - 1), np.clip(xi, 0, w - 1)]
        return np.where(inside, vals, np.float32(0.0))

    one = np.float32(1.0)
    out = ((one - fy) * (one - fx) * sample(y0, x0)
           + (one - fy) * fx * sample(y0, x0 + 1)
           + fy * (one - fx) * sample(y0 + 1, x0)
           + fy * fx * sample(y0 + 1, x0 + 1))
    return out.astype(np.float32)


def _epsilon_points(x0: InputPoint, spec: EpsilonGrid) -> list[InputPoint]:
    axes = spec.axes if spec.axes is not None else tuple(range(x0.dim))
    for a in axes:
        if not 0 <= a < x0.dim:
            raise InvalidSpec(f"axis {a} out of range for dimension {x0.dim}")
    if spec.steps == 1:
        offsets = np.array([-spec.epsilon], dtype=np.float32)
    else:
        offsets = np.linspace(-spec.epsilon, spec.epsilon, spec.steps,
                              dtype=np.float32)
    out = []
    for axis in axes:
        for off in offsets:
            feats = np.array(x0.features, dtype=np.float32)
            feats[axis] += off
            out.append(InputPoint(feats, x0.shape))
    return out


def _affine_points(x0: InputPoint, spec: AffineGrid) -> list[InputPoint]:
    if x0.shape is None:
        raise ShapeMissing("affine perturbations need image shape metadata")
    h, w = x0.shape
    if spec.steps == 1:
        ts = [spec.lo]
    else:
        ts = list(np.linspace(spec.lo, spec.hi, spec.steps, dtype=np.float64))
    img = x0.image()
    out = []
    for t in ts:
        dx = t * w if spec.axis in ("x", "diag") else 0.0
        dy = t * h if spec.axis in ("y", "diag") else 0.0
        if dx == 0.0 and dy == 0.0:
            out.append(x0)
        else:
            shifted = translate_image(img, dx, dy, spec.interp)
            out.append(InputPoint(shifted.reshape(-1), x0.shape))
    return out


def _points(x0: InputPoint, spec: PerturbationSpec) -> list[InputPoint]:
    match spec:
        case EpsilonGrid():
            return _epsilon_points(x0, spec)
        case AffineGrid():
            return _affine_points(x0, spec)
        case Explicit(points):
            for p in points:
                if p.dim != x0.dim:
                    raise InvalidSpec("explicit point dimension mismatch")
            return list(points)
        case Composite(parts):
            out = []
            for part in parts:
                out.extend(_points(x0, part))
            return out
    raise InvalidSpec(f"not a perturbation spec: {spec!r}")


def generate_perturbations(x0: InputPoint,
                           spec: PerturbationSpec) -> list[InputPoint]:
    """The finite perturbation set for ``x0``: deterministic, de-duplicated,
    with ``x0`` itself as the first element."""
    seen = {x0.key()}
    out = [x0]
    for p in _points(x0, spec):
        k = p.key()
        if k not in seen:
            seen.add(k)
            out.append(p)
    return out
