/**
 * Node bindings for the vadkit emotion-space pipeline.
 *
 * Every call shells out to the vadkit CLI and speaks its documented file
 * formats, so results are byte-identical to direct CLI use: the same
 * canonical JSON, the same error codes (surfaced here as typed
 * exceptions), the same determinism guarantees.
 */

import { spawnSync } from "node:child_process";
import { readFileSync } from "node:fs";

import { VadkitUsageError, dataErrorFromStderr } from "./errors.js";

export * from "./errors.js";

export type Vad = [number, number, number];

export type BasicEmotion =
  | "happy"
  | "sad"
  | "worried"
  | "surprised"
  | "angry"
  | "neutral";

export type Scale = "unit" | "polar";

export interface SpaceDocument {
  version: "vadkit-space/1";
  entries: Record<string, Vad>;
  seeds: Record<BasicEmotion, Vad>;
  config_hash: string;
  subset_hash: string;
}

export interface ClusterModelDocument {
  version: "vadkit-cluster-model/1";
  centroids: Vad[];
  labels: BasicEmotion[];
  assignments: Record<string, number>;
  iterations_run: number;
  final_wcss: number;
  params: { max_iterations: number; tolerance: number; pin_neutral: boolean };
  subset_hash: string;
}

export interface PredictionRecord {
  sample_id: string;
  vad: Vad;
  discrete?: BasicEmotion;
}

export interface ManifestRecord {
  sample_id: string;
  discrete?: BasicEmotion;
  open_labels?: string[];
  clip_seconds?: number;
  word_count?: number;
  split?: "train" | "val" | "test";
}

export interface OpenVocabResult {
  sample_id: string;
  terms: [string, number][];
  radius_used: number;
  fallback_applied: boolean;
  similarity?: { score: number; coverage: number };
}

export interface OpenVocabDocument {
  version: "vadkit-open-vocab/1";
  radius: number;
  results: OpenVocabResult[];
  mean_similarity?: { score: number; coverage: number };
}

export interface CalibrationResult {
  radius: number;
  target_mean: number;
  achieved_mean: number;
  probes: number;
}

export interface ReportDocument {
  version: "vadkit-report/1";
  continuous: {
    mean_l2: number;
    mse: number;
    mae: number;
    pcc_per_dim: [number | null, number | null, number | null];
    pcc_mean: number | null;
    pcc_flat: number | null;
    n_samples: number;
  };
  discrete: {
    confusion: number[][];
    per_class: Record<
      BasicEmotion,
      { precision: number; recall: number; f1: number; support: number }
    >;
    macro_precision: number;
    macro_recall: number;
    macro_f1: number;
    weighted_f1: number;
    accuracy: number;
  };
  open_vocab_similarity?: { score: number; coverage: number };
  dataset_summary: unknown;
  provenance: {
    config_hash: string;
    subset_hash: string;
    model_params: { max_iterations: number; tolerance: number; pin_neutral: boolean };
    tool_version: string;
  };
}

export interface ClientOptions {
  /** Python interpreter used to run the CLI module (default "python3"). */
  python?: string;
  /** Working directory for CLI invocations. */
  cwd?: string;
}

interface SpaceInput {
  space?: string;
  lexicon?: string;
  subset?: string;
  scale?: Scale;
  config?: string;
}

function spaceArgs(input: SpaceInput): string[] {
  const args: string[] = [];
  if (input.space) args.push("--space", input.space);
  if (input.lexicon) args.push("--lexicon", input.lexicon);
  if (input.subset) args.push("--subset", input.subset);
  if (input.scale) args.push("--scale", input.scale);
  if (input.config) args.push("--config", input.config);
  return args;
}

function parseJsonLines<T>(text: string): T[] {
  return text
    .split("\n")
    .filter((line) => line.trim().length > 0)
    .map((line) => JSON.parse(line) as T);
}

export class VadkitClient {
  private readonly python: string;
  private readonly cwd: string | undefined;

  constructor(options: ClientOptions = {}) {
    this.python = options.python ?? process.env.VADKIT_PYTHON ?? "python3";
    this.cwd = options.cwd;
  }

  /** Run a raw CLI command and return stdout exactly as emitted. */
  run(args: string[]): string {
    const proc = spawnSync(this.python, ["-m", "vadkit", ...args], {
      cwd: this.cwd,
      encoding: "utf-8",
      maxBuffer: 64 * 1024 * 1024,
    });
    if (proc.error) {
      throw new VadkitUsageError(`failed to launch ${this.python}: ${proc.error.message}`);
    }
    if (proc.status === 2) {
      throw dataErrorFromStderr(proc.stderr);
    }
    if (proc.status !== 0) {
      throw new VadkitUsageError(proc.stderr.trim() || `exit status ${proc.status}`);
    }
    return proc.stdout;
  }

  version(): string {
    return this.run(["--version"]).trim();
  }

  buildSpace(opts: {
    lexicon: string;
    subset?: string;
    scale?: Scale;
    config?: string;
    out?: string;
  }): SpaceDocument {
    const args = ["build-space", ...spaceArgs(opts)];
    if (opts.out) {
      this.run([...args, "--out", opts.out]);
      return JSON.parse(readFileSync(opts.out, "utf-8")) as SpaceDocument;
    }
    return JSON.parse(this.run(args)) as SpaceDocument;
  }

  fitClusters(opts: {
    space: string;
    maxIterations?: number;
    tolerance?: number;
    pinNeutral?: boolean;
    out?: string;
  }): ClusterModelDocument {
    const args = ["fit-clusters", "--space", opts.space];
    if (opts.maxIterations !== undefined) {
      args.push("--max-iterations", String(opts.maxIterations));
    }
    if (opts.tolerance !== undefined) args.push(`--tolerance=${opts.tolerance}`);
    if (opts.pinNeutral) args.push("--pin-neutral");
    if (opts.out) {
      this.run([...args, "--out", opts.out]);
      return JSON.parse(readFileSync(opts.out, "utf-8")) as ClusterModelDocument;
    }
    return JSON.parse(this.run(args)) as ClusterModelDocument;
  }

  discreteToVad(opts: SpaceInput & { label: BasicEmotion }): Vad {
    const out = this.run(["transcode", ...spaceArgs(opts), "--label", opts.label]);
    return (JSON.parse(out) as { vad: Vad }).vad;
  }

  vadToDiscrete(opts: SpaceInput & { model: string; point: Vad }): BasicEmotion {
    const out = this.run([
      "transcode",
      ...spaceArgs(opts),
      "--model",
      opts.model,
      `--point=${opts.point.join(",")}`,
    ]);
    return (JSON.parse(out) as { label: BasicEmotion }).label;
  }

  transcodePredictions(opts: SpaceInput & {
    model: string;
    predictions: string;
    out?: string;
  }): PredictionRecord[] {
    const args = [
      "transcode",
      ...spaceArgs(opts),
      "--model",
      opts.model,
      "--predictions",
      opts.predictions,
    ];
    if (opts.out) args.push("--out", opts.out);
    const text = opts.out
      ? (this.run(args), readFileSync(opts.out, "utf-8"))
      : this.run(args);
    return parseJsonLines<PredictionRecord>(text);
  }

  openVocab(opts: SpaceInput & {
    predictions: string;
    manifest?: string;
    embeddings?: string;
    radius?: number;
    exclude?: string[];
  }): OpenVocabDocument {
    const args = ["open-vocab", ...spaceArgs(opts), "--predictions", opts.predictions];
    if (opts.manifest) args.push("--manifest", opts.manifest);
    if (opts.embeddings) args.push("--embeddings", opts.embeddings);
    if (opts.radius !== undefined) args.push(`--radius=${opts.radius}`);
    for (const term of opts.exclude ?? []) args.push("--exclude", term);
    return JSON.parse(this.run(args)) as OpenVocabDocument;
  }

  calibrateRadius(opts: SpaceInput & {
    targetMean?: number;
    predictions?: string;
  }): CalibrationResult {
    const args = ["calibrate-radius", ...spaceArgs(opts)];
    if (opts.targetMean !== undefined) args.push("--target-mean", String(opts.targetMean));
    if (opts.predictions) args.push("--predictions", opts.predictions);
    return JSON.parse(this.run(args)) as CalibrationResult;
  }

  split(opts: {
    manifest: string;
    ratios?: [number, number, number];
    seed?: number;
    out?: string;
  }): ManifestRecord[] {
    const args = ["split", "--manifest", opts.manifest];
    if (opts.ratios) args.push(`--ratios=${opts.ratios.join(",")}`);
    if (opts.seed !== undefined) args.push("--seed", String(opts.seed));
    if (opts.out) args.push("--out", opts.out);
    const text = opts.out
      ? (this.run(args), readFileSync(opts.out, "utf-8"))
      : this.run(args);
    return parseJsonLines<ManifestRecord>(text);
  }

  summarize(opts: { manifest: string; format?: "structured" | "table" }): string {
    const args = ["summarize", "--manifest", opts.manifest];
    if (opts.format) args.push("--format", opts.format);
    return this.run(args);
  }

  /**
   * Full evaluation. Returns both the exact report text the CLI emitted
   * (byte-identical to a direct CLI run) and its parsed form.
   */
  evaluate(opts: SpaceInput & {
    model: string;
    manifest: string;
    predictions: string;
    embeddings?: string;
    radius?: number;
  }): { raw: string; report: ReportDocument } {
    const args = [
      "evaluate",
      ...spaceArgs(opts),
      "--model",
      opts.model,
      "--manifest",
      opts.manifest,
      "--predictions",
      opts.predictions,
    ];
    if (opts.embeddings) args.push("--embeddings", opts.embeddings);
    if (opts.radius !== undefined) args.push(`--radius=${opts.radius}`);
    const raw = this.run(args);
    return { raw, report: JSON.parse(raw) as ReportDocument };
  }

  renderReport(opts: { input: string; format?: "structured" | "table" }): string {
    const args = ["report", "--input", opts.input];
    if (opts.format) args.push("--format", opts.format);
    return this.run(args);
  }
}
