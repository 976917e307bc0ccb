"""Labeled datasets and the IDX image/label container format.

Images file: big-endian u32 magic 0x00000803, u32 count, u32 rows, u32
cols, then count*rows*cols u8 pixels.  Labels file: u32 magic 0x00000801,
u32 count, count u8 labels.  Pixels are mapped to [0, 1] by dividing by 255.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import BadMagic, CountMismatch, TruncatedFile
from .perturb import InputPoint

__all__ = ["LabeledDataset", "load_idx_dataset", "dataset_from_arrays",
           "IMAGES_MAGIC", "LABELS_MAGIC"]

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801


@dataclass(frozen=True)
class LabeledDataset:
    items: tuple[tuple[InputPoint, str], ...]
    shape: tuple[int, int] | None

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        dims = {p.dim for p, _ in self.items}
        if len(dims) > 1:
            raise ValueError("all points must share one dimension")

    def __len__(self) -> int:
        return len(self.items)


def _read_u32s(data: bytes, offset: int, n: int, what: str) -> tuple:
    if offset + 4 * n > len(data):
        raise TruncatedFile(f"file ends inside {what}", offset)
    return struct.unpack_from(f">{n}I", data, offset)


def load_idx_dataset(images_path, labels_path) -> LabeledDataset:
    """Read an IDX image/label pair into points scaled to [0, 1] with
    labels c0..c9-style class names."""
    with open(images_path, "rb") as fh:
        img = fh.read()
    with open(labels_path, "rb") as fh:
        lab = fh.read()

    magic, count, rows, cols = _read_u32s(img, 0, 4, "image header")
    if magic != IMAGES_MAGIC:
        raise BadMagic(f"images magic 0x{magic:08x}", 0)
    if len(img) < 16 + count * rows * cols:
        raise TruncatedFile("image data shorter than header promises", 16)

    lmagic, lcount = _read_u32s(lab, 0, 2, "label header")
    if lmagic != LABELS_MAGIC:
        raise BadMagic(f"labels magic 0x{lmagic:08x}", 0)
    if lcount != count:
        raise CountMismatch(
            f"label count {lcount} != image count {count}", 4)
    if len(lab) < 8 + lcount:
        raise TruncatedFile("label data shorter than header promises", 8)

    pixels = np.frombuffer(img, dtype=np.uint8, count=count * rows * cols,
                           offset=16).reshape(count, rows * cols)
    labels = np.frombuffer(lab, dtype=np.uint8, count=count, offset=8)
    shape = (int(rows), int(cols))
    items = tuple(
        (InputPoint(pixels[i].astype(np.float32) / np.float32(255.0), shape),
         f"c{int(labels[i])}")
        for i in range(count))
    return LabeledDataset(items, shape)


def dataset_from_arrays(points, labels, shape=None) -> LabeledDataset:
    """Convenience constructor for synthetic datasets."""
    items = tuple((p if isinstance(p, InputPoint) else InputPoint(p, shape), l)
                  for p, l in zip(points, labels))
    return LabeledDataset(items, shape)
