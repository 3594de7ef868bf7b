// Session state machine. All timing comes in through `nowMs` arguments
// so the machine is clock-agnostic and fully testable; the DOM shell
// feeds it performance.now() (monotonic, never wall clock). Keypresses
// are only accepted while a stimulus is on screen, so early or repeated
// presses can never produce a record, and trials run strictly in
// manifest order.

import {
  Mode,
  Response,
  SCHEMA_VERSION,
  TrialManifest,
  TrialRecord,
  TrialResults,
} from "./types.js";

export type Phase = "instructions" | "blank" | "stimulus" | "done";

export interface SessionOptions {
  interTrialBlankMs?: number;
}

export type KeyOutcome =
  | { kind: "ignored" }
  | { kind: "started" }
  | { kind: "recorded"; trialIndex: number; response: Response; advanced: boolean };

const KEY_MAP: Record<Mode, Record<string, Response>> = {
  ranking: { ArrowLeft: "left", ArrowRight: "right" },
  search: { y: "yes", Y: "yes", n: "no", N: "no" },
};

export class Session {
  readonly manifest: TrialManifest;
  readonly interTrialBlankMs: number;
  phase: Phase = "instructions";
  currentIndex = 0;
  private onsetMs: number | null = null;
  private records: TrialRecord[] = [];

  constructor(manifest: TrialManifest, options: SessionOptions = {}) {
    if (manifest.trials.length === 0) {
      throw new Error("refusing to run an empty session");
    }
    this.manifest = manifest;
    this.interTrialBlankMs = options.interTrialBlankMs ?? 250;
  }

  get trialCount(): number {
    return this.manifest.trials.length;
  }

  get pendingRecords(): readonly TrialRecord[] {
    return this.records;
  }

  /** The DOM shell calls this when the current stimulus becomes visible. */
  stimulusShown(nowMs: number): void {
    if (this.phase !== "blank") {
      throw new Error(`stimulusShown in phase ${this.phase}`);
    }
    this.phase = "stimulus";
    this.onsetMs = nowMs;
  }

  handleKey(key: string, nowMs: number): KeyOutcome {
    if (this.phase === "instructions") {
      if (key === " " || key === "Space" || key === "Spacebar") {
        this.phase = "blank";
        return { kind: "started" };
      }
      return { kind: "ignored" };
    }
    if (this.phase !== "stimulus" || this.onsetMs === null) {
      return { kind: "ignored" }; // blank gap or finished session
    }
    const response = KEY_MAP[this.manifest.mode][key];
    if (response === undefined) {
      return { kind: "ignored" };
    }
    const rt = (nowMs - this.onsetMs) / 1000;
    const trialIndex = this.currentIndex;
    this.records.push({ trial_index: trialIndex, response, rt });
    this.onsetMs = null;
    this.currentIndex += 1;
    if (this.currentIndex >= this.trialCount) {
      this.phase = "done";
      return { kind: "recorded", trialIndex, response, advanced: false };
    }
    this.phase = "blank";
    return { kind: "recorded", trialIndex, response, advanced: true };
  }

  results(participantId: string, startedAt: string,
          completedAt: string): TrialResults {
    if (this.phase !== "done") {
      throw new Error("session is not complete; partial results are discarded");
    }
    return {
      schema_version: SCHEMA_VERSION,
      participant_id: participantId,
      mode: this.manifest.mode,
      records: [...this.records],
      started_at: startedAt,
      completed_at: completedAt,
      manifest: this.manifest,
    };
  }
}
