// Manifest and results JSON shapes, field-compatible with the Python
// toolkit that generates manifests and merges results.

export const SCHEMA_VERSION = 1;

export type Mode = "ranking" | "search";
export type Response = "left" | "right" | "yes" | "no";

export interface RankingTrial {
  left_asset: string;
  right_asset: string;
}

export interface SearchTrial {
  scene_asset: string;
  target_present: boolean;
  target: "low" | "high";
}

export type Trial = RankingTrial | SearchTrial;

export interface TrialManifest {
  schema_version: number;
  mode: Mode;
  seed: number;
  instructions: string;
  participant_id: string | null;
  trials: Trial[];
}

export interface TrialRecord {
  trial_index: number;
  response: Response;
  rt: number;
}

export interface TrialResults {
  schema_version: number;
  participant_id: string;
  mode: Mode;
  records: TrialRecord[];
  started_at: string;
  completed_at: string;
  manifest: TrialManifest;
}

export class ManifestError extends Error {}

export function isRankingTrial(trial: Trial): trial is RankingTrial {
  return "left_asset" in trial;
}

export function parseManifest(json: string): TrialManifest {
  let doc: unknown;
  try {
    doc = JSON.parse(json);
  } catch (err) {
    throw new ManifestError(`manifest is not valid JSON: ${err}`);
  }
  const m = doc as TrialManifest;
  if (m.schema_version !== SCHEMA_VERSION) {
    throw new ManifestError(
      `unsupported manifest schema_version ${m.schema_version}`);
  }
  if (m.mode !== "ranking" && m.mode !== "search") {
    throw new ManifestError(`unknown mode ${m.mode}`);
  }
  if (typeof m.instructions !== "string" || m.instructions.length === 0) {
    throw new ManifestError("manifest has no instructions text");
  }
  if (!Array.isArray(m.trials) || m.trials.length === 0) {
    throw new ManifestError("manifest has no trials");
  }
  for (const [i, trial] of m.trials.entries()) {
    if (m.mode === "ranking") {
      const t = trial as RankingTrial;
      if (typeof t.left_asset !== "string" || typeof t.right_asset !== "string") {
        throw new ManifestError(`trial ${i} lacks left/right assets`);
      }
      if (t.left_asset === t.right_asset) {
        throw new ManifestError(`trial ${i} pairs an asset with itself`);
      }
    } else {
      const t = trial as SearchTrial;
      if (typeof t.scene_asset !== "string"
          || typeof t.target_present !== "boolean"
          || (t.target !== "low" && t.target !== "high")) {
        throw new ManifestError(`trial ${i} is not a valid search trial`);
      }
    }
  }
  return m;
}

export function assetList(manifest: TrialManifest): string[] {
  const assets = new Set<string>();
  for (const trial of manifest.trials) {
    if (isRankingTrial(trial)) {
      assets.add(trial.left_asset);
      assets.add(trial.right_asset);
    } else {
      assets.add(trial.scene_asset);
    }
  }
  return [...assets];
}
