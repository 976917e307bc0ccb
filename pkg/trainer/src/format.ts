/**
 * The MASKSNN1 portable weight file (little-endian, no padding):
 *
 *   bytes 0-7   ASCII "MASKSNN1"
 *   u32         layer count L
 *   L records:  u32 in_dim, u32 out_dim,
 *               out_dim*in_dim f32 weights (output-neuron-major rows),
 *               out_dim f32 biases
 *   u32         label count (must equal the last out_dim)
 *   per label:  u16 byte length, UTF-8 bytes
 */

export interface Layer {
  inDim: number;
  outDim: number;
  /** Row-major (outDim x inDim). */
  weights: Float32Array;
  bias: Float32Array;
}

export interface Network {
  layers: Layer[];
  labels: string[];
}

export const MAGIC = "MASKSNN1";

export function writeWeights(net: Network): Buffer {
  const encoder = new TextEncoder();
  const labelBytes = net.labels.map((l) => encoder.encode(l));
  let size = 8 + 4;
  for (const layer of net.layers) {
    size += 8 + 4 * layer.weights.length + 4 * layer.bias.length;
  }
  size += 4;
  for (const raw of labelBytes) size += 2 + raw.length;

  const buf = Buffer.alloc(size);
  let offset = buf.write(MAGIC, 0, "ascii");
  offset = buf.writeUInt32LE(net.layers.length, offset);
  for (const layer of net.layers) {
    if (layer.weights.length !== layer.inDim * layer.outDim ||
        layer.bias.length !== layer.outDim) {
      throw new Error("layer dimensions do not match its arrays");
    }
    offset = buf.writeUInt32LE(layer.inDim, offset);
    offset = buf.writeUInt32LE(layer.outDim, offset);
    for (const w of layer.weights) offset = buf.writeFloatLE(w, offset);
    for (const b of layer.bias) offset = buf.writeFloatLE(b, offset);
  }
  const last = net.layers[net.layers.length - 1];
  if (net.labels.length !== last.outDim) {
    throw new Error("label count must equal the final out_dim");
  }
  offset = buf.writeUInt32LE(net.labels.length, offset);
  for (const raw of labelBytes) {
    offset = buf.writeUInt16LE(raw.length, offset);
    offset += Buffer.from(raw).copy(buf, offset);
  }
  return buf;
}

/** Decode a weight file; used to round-trip-check exports. */
export function readWeights(data: Buffer): Network {
  if (data.length < 8 || data.toString("ascii", 0, 8) !== MAGIC) {
    throw new Error(`bad magic at offset 0`);
  }
  let offset = 8;
  const need = (n: number, what: string) => {
    if (offset + n > data.length) {
      throw new Error(`file ends inside ${what} at offset ${offset}`);
    }
  };
  need(4, "layer count");
  const layerCount = data.readUInt32LE(offset);
  offset += 4;
  const layers: Layer[] = [];
  let prevOut: number | null = null;
  for (let li = 0; li < layerCount; li++) {
    need(8, `layer ${li} header`);
    const inDim = data.readUInt32LE(offset);
    const outDim = data.readUInt32LE(offset + 4);
    offset += 8;
    if (prevOut !== null && inDim !== prevOut) {
      throw new Error(`layer ${li} in_dim ${inDim} != previous ${prevOut}`);
    }
    need(4 * inDim * outDim, `layer ${li} weights`);
    const weights = new Float32Array(inDim * outDim);
    for (let i = 0; i < weights.length; i++) {
      weights[i] = data.readFloatLE(offset);
      offset += 4;
    }
    need(4 * outDim, `layer ${li} biases`);
    const bias = new Float32Array(outDim);
    for (let i = 0; i < outDim; i++) {
      bias[i] = data.readFloatLE(offset);
      offset += 4;
    }
    layers.push({ inDim, outDim, weights, bias });
    prevOut = outDim;
  }
  need(4, "label count");
  const labelCount = data.readUInt32LE(offset);
  offset += 4;
  if (labelCount !== prevOut) {
    throw new Error(`label count ${labelCount} != final out_dim ${prevOut}`);
  }
  const labels: string[] = [];
  for (let i = 0; i < labelCount; i++) {
    need(2, `label ${i} length`);
    const len = data.readUInt16LE(offset);
    offset += 2;
    need(len, `label ${i}`);
    labels.push(data.toString("utf8", offset, offset + len));
    offset += len;
  }
  if (offset !== data.length) {
    throw new Error(`trailing bytes after labels at offset ${offset}`);
  }
  return { layers, labels };
}
