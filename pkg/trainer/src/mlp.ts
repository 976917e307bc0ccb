/**
 * A dense feedforward classifier trained with plain SGD: ReLU hidden
 * layers, linear output, softmax cross-entropy loss.  All arithmetic is
 * deterministic given the seed; no external numeric libraries.
 */
import { Layer, Network } from "./format";
import { Rng } from "./rng";

export function initNetwork(dims: number[], labels: string[],
                            rng: Rng): Network {
  const layers: Layer[] = [];
  for (let k = 0; k + 1 < dims.length; k++) {
    const inDim = dims[k];
    const outDim = dims[k + 1];
    // uniform init scaled to the fan-in keeps deep stacks trainable
    const bound = Math.sqrt(6 / (inDim + outDim));
    const weights = new Float32Array(inDim * outDim);
    for (let i = 0; i < weights.length; i++) {
      weights[i] = Math.fround(rng.uniform(-bound, bound));
    }
    layers.push({ inDim, outDim, weights, bias: new Float32Array(outDim) });
  }
  return { layers, labels };
}

/** Forward pass returning every layer's post-activation output. */
function forwardAll(net: Network, x: Float32Array): Float32Array[] {
  const outs: Float32Array[] = [x];
  let h = x;
  for (let k = 0; k < net.layers.length; k++) {
    const { inDim, outDim, weights, bias } = net.layers[k];
    const next = new Float32Array(outDim);
    const lastLayer = k === net.layers.length - 1;
    for (let o = 0; o < outDim; o++) {
      let acc = bias[o];
      const row = o * inDim;
      for (let i = 0; i < inDim; i++) acc += weights[row + i] * h[i];
      next[o] = lastLayer ? acc : Math.max(acc, 0);
    }
    outs.push(next);
    h = next;
  }
  return outs;
}

export function logits(net: Network, x: Float32Array): Float32Array {
  const outs = forwardAll(net, x);
  return outs[outs.length - 1];
}

/** Argmax class index, ties broken by the lowest index. */
export function classify(net: Network, x: Float32Array): number {
  const z = logits(net, x);
  let best = 0;
  for (let i = 1; i < z.length; i++) if (z[i] > z[best]) best = i;
  return best;
}

export function accuracy(net: Network, images: Float32Array[],
                         labels: Uint8Array): number {
  if (images.length === 0) return 0;
  let hits = 0;
  for (let i = 0; i < images.length; i++) {
    if (classify(net, images[i]) === labels[i]) hits++;
  }
  return hits / images.length;
}

export interface SgdOptions {
  epochs: number;
  learningRate: number;
  batchSize: number;
}

/** One training run over the data; mutates the network in place. */
export function trainSgd(net: Network, images: Float32Array[],
                         labels: Uint8Array, rng: Rng,
                         opts: SgdOptions): void {
  const n = images.length;
  const order = new Int32Array(n);
  for (let i = 0; i < n; i++) order[i] = i;

  for (let epoch = 0; epoch < opts.epochs; epoch++) {
    rng.shuffle(order);
    for (let start = 0; start < n; start += opts.batchSize) {
      const stop = Math.min(start + opts.batchSize, n);
      const grads = net.layers.map((l) => ({
        weights: new Float64Array(l.weights.length),
        bias: new Float64Array(l.bias.length),
      }));
      for (let b = start; b < stop; b++) {
        const idx = order[b];
        const outs = forwardAll(net, images[idx]);
        const z = outs[outs.length - 1];

        // softmax cross-entropy gradient on the logits
        let max = z[0];
        for (let i = 1; i < z.length; i++) if (z[i] > max) max = z[i];
        let sum = 0;
        const delta = new Float64Array(z.length);
        for (let i = 0; i < z.length; i++) {
          delta[i] = Math.exp(z[i] - max);
          sum += delta[i];
        }
        for (let i = 0; i < z.length; i++) delta[i] /= sum;
        delta[labels[idx]] -= 1;

        // backpropagate through the stack
        let upstream = delta;
        for (let k = net.layers.length - 1; k >= 0; k--) {
          const { inDim, outDim, weights } = net.layers[k];
          const input = outs[k];
          const g = grads[k];
          for (let o = 0; o < outDim; o++) {
            const d = upstream[o];
            if (d === 0) continue;
            g.bias[o] += d;
            const row = o * inDim;
            for (let i = 0; i < inDim; i++) g.weights[row + i] += d * input[i];
          }
          if (k > 0) {
            const next = new Float64Array(inDim);
            for (let o = 0; o < outDim; o++) {
              const d = upstream[o];
              if (d === 0) continue;
              const row = o * inDim;
              for (let i = 0; i < inDim; i++) next[i] += d * weights[row + i];
            }
            // ReLU gate of the layer below
            const activated = outs[k];
            for (let i = 0; i < inDim; i++) {
              if (activated[i] <= 0) next[i] = 0;
            }
            upstream = next;
          }
        }
      }

      const scale = opts.learningRate / (stop - start);
      for (let k = 0; k < net.layers.length; k++) {
        const layer = net.layers[k];
        const g = grads[k];
        for (let i = 0; i < layer.weights.length; i++) {
          layer.weights[i] = Math.fround(layer.weights[i] - scale * g.weights[i]);
        }
        for (let i = 0; i < layer.bias.length; i++) {
          layer.bias[i] = Math.fround(layer.bias[i] - scale * g.bias[i]);
        }
      }
    }
  }
}
