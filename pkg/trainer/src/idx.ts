/**
 * IDX image/label containers (the classic big-endian handwriting-dataset
 * layout): images carry magic 0x00000803 then count/rows/cols u32s and
 * u8 pixels; labels carry magic 0x00000801 then a count u32 and u8 labels.
 * Pixels are scaled to [0, 1].
 */

export const IMAGES_MAGIC = 0x00000803;
export const LABELS_MAGIC = 0x00000801;

export interface Dataset {
  /** count x (rows*cols), scaled to [0, 1]. */
  images: Float32Array[];
  /** digit per image, 0-9. */
  labels: Uint8Array;
  rows: number;
  cols: number;
}

export function readIdxPair(images: Buffer, labels: Buffer): Dataset {
  if (images.length < 16) throw new Error("image header truncated");
  if (images.readUInt32BE(0) !== IMAGES_MAGIC) {
    throw new Error("bad images magic at offset 0");
  }
  const count = images.readUInt32BE(4);
  const rows = images.readUInt32BE(8);
  const cols = images.readUInt32BE(12);
  if (images.length < 16 + count * rows * cols) {
    throw new Error("image data shorter than header promises");
  }

  if (labels.length < 8) throw new Error("label header truncated");
  if (labels.readUInt32BE(0) !== LABELS_MAGIC) {
    throw new Error("bad labels magic at offset 0");
  }
  const labelCount = labels.readUInt32BE(4);
  if (labelCount !== count) {
    throw new Error(`label count ${labelCount} != image count ${count}`);
  }
  if (labels.length < 8 + count) {
    throw new Error("label data shorter than header promises");
  }

  const dim = rows * cols;
  const out: Float32Array[] = [];
  for (let i = 0; i < count; i++) {
    const features = new Float32Array(dim);
    for (let p = 0; p < dim; p++) {
      features[p] = images[16 + i * dim + p] / 255;
    }
    out.push(features);
  }
  return {
    images: out,
    labels: new Uint8Array(labels.subarray(8, 8 + count)),
    rows,
    cols,
  };
}
