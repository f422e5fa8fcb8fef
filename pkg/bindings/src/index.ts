/**
 * Node bindings for the elastik time-series distance engines.
 *
 * The binding layer contains zero algorithmic code: it validates inputs,
 * serializes them, and dispatches to the `elastik` command-line interface
 * (the engine package's stable external surface), so every result is exactly
 * what the engines produce.  Values cross the boundary as shortest
 * round-trip decimal strings, which parse back to the identical IEEE double.
 *
 * Set ELASTIK_CLI to override how the CLI is launched (e.g.
 * "python -m elastik.cli"); the default is `elastik` on PATH.
 */

import { execFile } from "node:child_process";
import { mkdtemp, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import * as path from "node:path";
import { promisify } from "node:util";

const execFileAsync = promisify(execFile);

export const KINDS = ["dtw", "cdtw", "wdtw", "erp", "msm", "twe"] as const;
export const COST_MODES = ["squared", "absolute"] as const;
export const VARIANTS = ["base", "ea", "eapruned", "pruned_only"] as const;
export const LB_MODES = ["none", "keogh", "keogh2"] as const;

export type DistanceKind = (typeof KINDS)[number];
export type CostMode = (typeof COST_MODES)[number];
export type Variant = (typeof VARIANTS)[number];
export type LbMode = (typeof LB_MODES)[number];

/** Mirror of the engine package's distance parameterization. */
export interface DistanceSpec {
  kind: DistanceKind;
  /** Sakoe-Chiba band half-width; omit for unbounded (required for cdtw/erp). */
  window?: number;
  wdtwG?: number;
  erpGap?: number;
  msmC?: number;
  tweNu?: number;
  tweLambda?: number;
  costMode?: CostMode;
}

export interface DistanceOptions {
  variant?: Variant;
  /** Early-abandoning cutoff for the "ea"/"eapruned" variants. */
  cutoff?: number;
}

export interface NnOptions {
  variant?: Variant;
  lb?: LbMode;
  threads?: number;
}

export interface SubsequenceOptions {
  variant?: Variant;
  lb?: LbMode;
  /** z-normalize the query and every window before comparing. */
  normalize?: boolean;
}

export interface SubsequenceMatch {
  offset: number;
  distance: number;
  windows: number;
}

export type Series = Float64Array | readonly number[];

/** Validation failure raised before anything crosses the process boundary. */
export class SpecError extends Error {}

/** The CLI reported a failure (bad configuration, unreadable file, ...). */
export class CliError extends Error {}

export function validateSpec(spec: DistanceSpec): void {
  if (!KINDS.includes(spec.kind)) {
    throw new SpecError(
      `unknown distance kind '${spec.kind}'; expected one of ('dtw', 'cdtw', 'wdtw', 'erp', 'msm', 'twe')`,
    );
  }
  const mode = spec.costMode ?? "squared";
  if (!COST_MODES.includes(mode)) {
    throw new SpecError(
      `unknown cost mode '${mode}'; expected one of ('squared', 'absolute')`,
    );
  }
  if (spec.window !== undefined && (!Number.isInteger(spec.window) || spec.window < 0)) {
    throw new SpecError("window must be a non-negative integer or None");
  }
  if ((spec.kind === "cdtw" || spec.kind === "erp") && spec.window === undefined) {
    throw new SpecError(`${spec.kind} requires a finite window`);
  }
  if (spec.kind === "wdtw" && !(spec.wdtwG !== undefined && spec.wdtwG >= 0)) {
    throw new SpecError("wdtw requires a non-negative weight parameter wdtw_g");
  }
  if (spec.kind === "erp" && spec.erpGap === undefined) {
    throw new SpecError("erp requires a gap value erp_gap");
  }
  if (spec.kind === "msm" && !(spec.msmC !== undefined && spec.msmC >= 0)) {
    throw new SpecError("msm requires a non-negative split/merge cost msm_c");
  }
  if (spec.kind === "twe") {
    if (!(spec.tweNu !== undefined && spec.tweNu >= 0)) {
      throw new SpecError("twe requires a non-negative stiffness twe_nu");
    }
    if (!(spec.tweLambda !== undefined && spec.tweLambda >= 0)) {
      throw new SpecError("twe requires a non-negative penalty twe_lambda");
    }
  }
}

function asSeries(values: Series, name: string): number[] {
  if (ArrayBuffer.isView(values)) {
    if (!(values instanceof Float64Array)) {
      throw new SpecError(`${name} must be a Float64Array or an array of numbers`);
    }
  } else if (!Array.isArray(values)) {
    throw new SpecError(`${name} must be a Float64Array or an array of numbers`);
  }
  const out = new Array<number>(values.length);
  for (let i = 0; i < values.length; i += 1) {
    const v = (values as ArrayLike<unknown>)[i];
    if (typeof v !== "number" || !Number.isFinite(v)) {
      throw new SpecError(`${name} values must all be finite numbers`);
    }
    out[i] = v;
  }
  if (out.length < 1) {
    throw new SpecError(`${name} must contain at least one value`);
  }
  return out;
}

function specArgs(spec: DistanceSpec): string[] {
  validateSpec(spec);
  // --flag=value form: plain space-separated values that start with a minus
  // sign would be mistaken for options
  const args = [`--kind=${spec.kind}`, `--cost=${spec.costMode ?? "squared"}`];
  if (spec.window !== undefined) args.push(`--window=${spec.window}`);
  if (spec.wdtwG !== undefined) args.push(`--wdtw-g=${spec.wdtwG}`);
  if (spec.erpGap !== undefined) args.push(`--erp-gap=${spec.erpGap}`);
  if (spec.msmC !== undefined) args.push(`--msm-c=${spec.msmC}`);
  if (spec.tweNu !== undefined) args.push(`--twe-nu=${spec.tweNu}`);
  if (spec.tweLambda !== undefined) args.push(`--twe-lambda=${spec.tweLambda}`);
  return args;
}

function cliLaunch(): { cmd: string; baseArgs: string[] } {
  const override = process.env.ELASTIK_CLI;
  if (override && override.trim().length > 0) {
    const parts = override.trim().split(/\s+/);
    return { cmd: parts[0], baseArgs: parts.slice(1) };
  }
  return { cmd: "elastik", baseArgs: [] };
}

async function runCli(args: string[], okCodes: number[] = [0]): Promise<string> {
  const { cmd, baseArgs } = cliLaunch();
  try {
    const { stdout } = await execFileAsync(cmd, [...baseArgs, ...args], {
      maxBuffer: 256 * 1024 * 1024,
    });
    return stdout;
  } catch (err) {
    const failure = err as { code?: number; stdout?: string; stderr?: string };
    if (typeof failure.code === "number" && okCodes.includes(failure.code)) {
      return failure.stdout ?? "";
    }
    const detail = (failure.stderr ?? "").trim() || String(err);
    throw new CliError(detail);
  }
}

/**
 * Distance between two series under `spec`; Infinity when the computation
 * was early-abandoned under `opts.cutoff` (or the window forbids alignment).
 */
export async function distance(
  a: Series,
  b: Series,
  spec: DistanceSpec,
  opts: DistanceOptions = {},
): Promise<number> {
  const va = asSeries(a, "a");
  const vb = asSeries(b, "b");
  const args = [
    "dist",
    ...specArgs(spec),
    `--variant=${opts.variant ?? "base"}`,
    `--a=${va.map(String).join(",")}`,
    `--b=${vb.map(String).join(",")}`,
  ];
  if (opts.cutoff !== undefined) args.push(`--cutoff=${opts.cutoff}`);
  const out = await runCli(args, [0, 2]);
  const payload = JSON.parse(out) as { cost: number | "abandoned" };
  return payload.cost === "abandoned" ? Infinity : payload.cost;
}

function toTsvLines(labels: readonly number[], series: readonly Series[]): string {
  const lines: string[] = [];
  for (let i = 0; i < series.length; i += 1) {
    const values = asSeries(series[i], `series[${i}]`);
    lines.push(`${labels[i]}\t${values.map(String).join("\t")}`);
  }
  return lines.join("\n") + "\n";
}

async function withTempDir<T>(body: (dir: string) => Promise<T>): Promise<T> {
  const dir = await mkdtemp(path.join(tmpdir(), "elastik-"));
  try {
    return await body(dir);
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}

/**
 * 1-NN classification of `test` against the labelled `train` set.
 * Returns one predicted label per test series, in order.
 */
export async function nnClassify(
  train: { labels: readonly number[]; series: readonly Series[] },
  test: readonly Series[],
  spec: DistanceSpec,
  opts: NnOptions = {},
): Promise<number[]> {
  validateSpec(spec);
  if (train.series.length === 0) {
    throw new SpecError("train set must not be empty");
  }
  if (test.length === 0) {
    throw new SpecError("test set must not be empty");
  }
  if (train.labels.length !== train.series.length) {
    throw new SpecError(
      `train has ${train.labels.length} labels for ${train.series.length} series`,
    );
  }
  for (const label of train.labels) {
    if (!Number.isInteger(label)) {
      throw new SpecError("train labels must be integers");
    }
  }
  return withTempDir(async (dir) => {
    const trainPath = path.join(dir, "train.tsv");
    const testPath = path.join(dir, "test.tsv");
    await writeFile(trainPath, toTsvLines(train.labels, train.series));
    await writeFile(testPath, toTsvLines(test.map(() => 0), test));
    const out = await runCli([
      "nn",
      ...specArgs(spec),
      `--train=${trainPath}`,
      `--test=${testPath}`,
      `--variant=${opts.variant ?? "eapruned"}`,
      `--lb=${opts.lb ?? "none"}`,
      `--threads=${opts.threads ?? 1}`,
    ]);
    const rows = out
      .trim()
      .split("\n")
      .map((line) => JSON.parse(line) as Record<string, unknown>);
    const predictions = new Array<number>(test.length);
    for (const row of rows) {
      if (typeof row.query === "number" && typeof row.predicted === "number") {
        predictions[row.query] = row.predicted;
      }
    }
    return predictions;
  });
}

/**
 * Best-matching window of `reference` against `query`; ties keep the lowest
 * offset.
 */
export async function subsequenceSearch(
  query: Series,
  reference: Series,
  spec: DistanceSpec,
  opts: SubsequenceOptions = {},
): Promise<SubsequenceMatch> {
  const q = asSeries(query, "query");
  const ref = asSeries(reference, "reference");
  if (q.length > ref.length) {
    throw new SpecError(
      `query length ${q.length} exceeds reference length ${ref.length}`,
    );
  }
  return withTempDir(async (dir) => {
    const queryPath = path.join(dir, "query.tsv");
    const referencePath = path.join(dir, "reference.tsv");
    await writeFile(queryPath, toTsvLines([0], [q]));
    await writeFile(referencePath, toTsvLines([0], [ref]));
    const args = [
      "subseq",
      ...specArgs(spec),
      `--query=${queryPath}`,
      `--reference=${referencePath}`,
      `--variant=${opts.variant ?? "eapruned"}`,
      `--lb=${opts.lb ?? "none"}`,
    ];
    if (opts.normalize) args.push("--normalize");
    const out = await runCli(args);
    const payload = JSON.parse(out) as {
      offset: number;
      distance: number | "abandoned";
      windows: number;
    };
    return {
      offset: payload.offset,
      distance: payload.distance === "abandoned" ? Infinity : payload.distance,
      windows: payload.windows,
    };
  });
}
