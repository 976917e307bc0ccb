#!/usr/bin/env node
/**
 * masks-train: train seeded MLP agents on an IDX image/label pair and
 * export them as MASKSNN1 weight files consumable by the verifier.
 *
 *   masks-train --n 9 --seed 7 --out nets/ \
 *       --images train-images.idx --labels train-labels.idx
 */
import * as fs from "fs";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { readIdxPair } from "./idx";
import { DEFAULT_CONFIG, trainAndExport } from "./train";

export function main(argv: string[]): number {
  const args = yargs(argv)
    .option("n", { type: "number", demandOption: true,
                   describe: "how many networks to train" })
    .option("seed", { type: "number", default: 0 })
    .option("out", { type: "string", demandOption: true,
                     describe: "output directory for .nn files" })
    .option("images", { type: "string", demandOption: true,
                        describe: "IDX training images" })
    .option("labels", { type: "string", demandOption: true,
                        describe: "IDX training labels" })
    .option("holdout", { type: "number", default: 10000,
                         describe: "items held out for the accuracy gate" })
    .option("depth-min", { type: "number",
                           default: DEFAULT_CONFIG.depthRange[0] })
    .option("depth-max", { type: "number",
                           default: DEFAULT_CONFIG.depthRange[1] })
    .option("width-min", { type: "number",
                           default: DEFAULT_CONFIG.widthRange[0] })
    .option("width-max", { type: "number",
                           default: DEFAULT_CONFIG.widthRange[1] })
    .option("accuracy-floor", { type: "number",
                                default: DEFAULT_CONFIG.accuracyFloor })
    .option("epochs", { type: "number",
                        default: DEFAULT_CONFIG.sgd.epochs })
    .strict()
    .parseSync();

  const full = readIdxPair(fs.readFileSync(args.images),
                           fs.readFileSync(args.labels));
  const holdout = Math.min(args.holdout, Math.floor(full.images.length / 5));
  const split = full.images.length - holdout;
  const train = {
    images: full.images.slice(0, split),
    labels: full.labels.slice(0, split),
    rows: full.rows, cols: full.cols,
  };
  const held = {
    images: full.images.slice(split),
    labels: full.labels.slice(split),
    rows: full.rows, cols: full.cols,
  };

  const result = trainAndExport(train, held, {
    ...DEFAULT_CONFIG,
    nNets: args.n,
    seed: args.seed,
    outDir: args.out,
    depthRange: [args["depth-min"], args["depth-max"]],
    widthRange: [args["width-min"], args["width-max"]],
    accuracyFloor: args["accuracy-floor"],
    sgd: { ...DEFAULT_CONFIG.sgd, epochs: args.epochs },
  });

  for (const net of result.nets) {
    const verdict = net.accepted ? net.file : "rejected";
    console.log(`seed ${net.seed}: depth ${net.depth} ` +
                `widths [${net.widths.join(", ")}] ` +
                `accuracy ${net.accuracy.toFixed(4)} -> ${verdict}`);
  }
  console.log(`manifest: ${result.manifestPath}`);
  return result.nets.some((n) => n.accepted) ? 0 : 1;
}

if (require.main === module) {
  process.exit(main(hideBin(process.argv)));
}
