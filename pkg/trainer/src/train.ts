/**
 * Sample an architecture, train until an accuracy floor is met (with a
 * restart budget), and export accepted networks as MASKSNN1 files plus a
 * `file,seed,depth,widths,accuracy` manifest.
 */
import * as fs from "fs";
import * as path from "path";

import { Network, writeWeights } from "./format";
import { Dataset } from "./idx";
import { Rng } from "./rng";
import { SgdOptions, accuracy, initNetwork, trainSgd } from "./mlp";

export interface TrainConfig {
  nNets: number;
  seed: number;
  outDir: string;
  /** hidden-layer count range, inclusive. */
  depthRange: [number, number];
  /** hidden width range, inclusive. */
  widthRange: [number, number];
  accuracyFloor: number;
  restarts: number;
  sgd: SgdOptions;
  labels: string[];
}

export const DEFAULT_CONFIG: Omit<TrainConfig, "nNets" | "seed" | "outDir"> = {
  depthRange: [6, 7],
  widthRange: [64, 512],
  accuracyFloor: 0.975,
  restarts: 5,
  sgd: { epochs: 3, learningRate: 0.05, batchSize: 32 },
  labels: Array.from({ length: 10 }, (_, d) => `c${d}`),
};

export interface TrainedNet {
  file: string;
  seed: number;
  depth: number;
  widths: number[];
  accuracy: number;
  accepted: boolean;
}

export interface TrainResult {
  nets: TrainedNet[];
  manifestPath: string;
}

function sampleDims(rng: Rng, inDim: number, outDim: number,
                    config: TrainConfig): number[] {
  const hidden = rng.int(config.depthRange[0], config.depthRange[1]);
  const dims = [inDim];
  for (let k = 0; k < hidden; k++) {
    dims.push(rng.int(config.widthRange[0], config.widthRange[1]));
  }
  dims.push(outDim);
  return dims;
}

export function trainOne(train: Dataset, held: Dataset, netSeed: number,
                         config: TrainConfig):
    { net: Network; dims: number[]; accuracy: number; accepted: boolean } {
  const inDim = train.rows * train.cols;
  let best: { net: Network; dims: number[]; accuracy: number } | null = null;
  for (let attempt = 0; attempt <= config.restarts; attempt++) {
    const rng = new Rng(netSeed * 1000003 + attempt);
    const dims = sampleDims(rng, inDim, config.labels.length, config);
    const net = initNetwork(dims, config.labels, rng);
    trainSgd(net, train.images, train.labels, rng, config.sgd);
    const acc = accuracy(net, held.images, held.labels);
    if (best === null || acc > best.accuracy) best = { net, dims, accuracy: acc };
    if (acc >= config.accuracyFloor) {
      return { ...best, accepted: true };
    }
  }
  return { ...best!, accepted: false };
}

export function trainAndExport(train: Dataset, held: Dataset,
                               config: TrainConfig): TrainResult {
  fs.mkdirSync(config.outDir, { recursive: true });
  const nets: TrainedNet[] = [];
  for (let i = 0; i < config.nNets; i++) {
    const netSeed = config.seed + i;
    const { net, dims, accuracy: acc, accepted } =
        trainOne(train, held, netSeed, config);
    const widths = dims.slice(1, -1);
    let file = "";
    if (accepted) {
      file = `net_${String(i).padStart(3, "0")}_seed${netSeed}.nn`;
      fs.writeFileSync(path.join(config.outDir, file), writeWeights(net));
    }
    nets.push({ file, seed: netSeed, depth: widths.length, widths,
                accuracy: acc, accepted });
  }

  const lines = ["file,seed,depth,widths,accuracy"];
  for (const n of nets) {
    const name = n.accepted ? n.file : "UNREACHED_ACCURACY_FLOOR";
    lines.push(`${name},${n.seed},${n.depth},` +
               `${n.widths.join("|")},${n.accuracy.toFixed(4)}`);
  }
  const manifestPath = path.join(config.outDir, "manifest.csv");
  fs.writeFileSync(manifestPath, lines.join("\n") + "\n");
  return { nets, manifestPath };
}
