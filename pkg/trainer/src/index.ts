export { Rng } from "./rng";
export { Layer, Network, MAGIC, writeWeights, readWeights } from "./format";
export { Dataset, IMAGES_MAGIC, LABELS_MAGIC, readIdxPair } from "./idx";
export { SgdOptions, initNetwork, logits, classify, accuracy,
         trainSgd } from "./mlp";
export { TrainConfig, DEFAULT_CONFIG, TrainedNet, TrainResult,
         trainOne, trainAndExport } from "./train";
