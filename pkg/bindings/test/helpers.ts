import { execFile } from "node:child_process";
import { promisify } from "node:util";

const execFileAsync = promisify(execFile);

/** Launch the engine CLI directly, independently of the bindings' plumbing. */
export async function rawCli(args: string[], okCodes: number[] = [0]): Promise<string> {
  const override = process.env.ELASTIK_CLI;
  const parts = override && override.trim() ? override.trim().split(/\s+/) : ["elastik"];
  try {
    const { stdout } = await execFileAsync(parts[0], [...parts.slice(1), ...args], {
      maxBuffer: 256 * 1024 * 1024,
    });
    return stdout;
  } catch (err) {
    const failure = err as { code?: number; stdout?: string; stderr?: string };
    if (typeof failure.code === "number" && okCodes.includes(failure.code)) {
      return failure.stdout ?? "";
    }
    throw err;
  }
}

/** Deterministic PRNG so parity runs are reproducible. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a += 0x6d2b79f5;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randomWalk(rand: () => number, length: number, scale = 1.0): Float64Array {
  const out = new Float64Array(length);
  let acc = 0;
  for (let i = 0; i < length; i += 1) {
    acc += (rand() - 0.5) * 2 * scale;
    out[i] = acc;
  }
  return out;
}

export function parseTsv(text: string): { labels: number[]; series: Float64Array[] } {
  const labels: number[] = [];
  const series: Float64Array[] = [];
  for (const line of text.split("\n")) {
    if (!line.trim()) continue;
    const fields = line.split("\t");
    labels.push(Number(fields[0]));
    series.push(Float64Array.from(fields.slice(1), Number));
  }
  return { labels, series };
}
