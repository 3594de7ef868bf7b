// POST round trip against the real trial server (`serve-trial`).

import { ChildProcess, spawn, spawnSync } from "node:child_process";
import { existsSync, mkdirSync, mkdtempSync, readdirSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { postResults } from "../src/export.js";
import { Session } from "../src/session.js";
import { TrialManifest } from "../src/types.js";

const PYTHON = process.env.ENTROGLYPH_PYTHON ?? "python3";

const available = spawnSync(PYTHON, ["-m", "entroglyph.cli", "--version"],
                            { encoding: "utf-8" }).status === 0;
const run = available ? describe : describe.skip;

function completedResults() {
  const manifest: TrialManifest = {
    schema_version: 1,
    mode: "ranking",
    seed: 1,
    instructions: "Press space when ready.",
    participant_id: "post-test",
    trials: [
      { left_asset: "A", right_asset: "B" },
      { left_asset: "B", right_asset: "A" },
    ],
  };
  const session = new Session(manifest);
  let now = 100;
  session.handleKey(" ", (now += 10));
  session.stimulusShown((now += 250));
  session.handleKey("ArrowLeft", (now += 400));
  session.stimulusShown((now += 250));
  session.handleKey("ArrowRight", (now += 400));
  return session.results("post-test", new Date().toISOString(),
                         new Date().toISOString());
}

run("serve-trial endpoint", () => {
  let server: ChildProcess;
  let base = "";
  let resultsDir = "";
  let staticDir = "";

  beforeAll(async () => {
    staticDir = mkdtempSync(join(tmpdir(), "trial-static-"));
    resultsDir = join(staticDir, "results-store");
    mkdirSync(resultsDir);
    writeFileSync(join(staticDir, "hello.txt"), "static ok");
    server = spawn(PYTHON, ["-m", "entroglyph.cli", "serve-trial",
                            "--dir", staticDir, "--results-dir", resultsDir,
                            "--port", "0"]);
    base = await new Promise<string>((resolve, reject) => {
      const timer = setTimeout(() => reject(new Error("server start timeout")),
                               15_000);
      server.stdout?.on("data", (chunk: Buffer) => {
        const match = /on (http:\/\/[^ ]+)/.exec(chunk.toString());
        if (match) {
          clearTimeout(timer);
          resolve(match[1]!);
        }
      });
    });
  }, 20_000);

  afterAll(() => {
    server?.kill();
  });

  it("serves static files", async () => {
    const response = await fetch(`${base}/hello.txt`);
    expect(response.status).toBe(200);
    expect(await response.text()).toBe("static ok");
  });

  it("stores posted results on disk", async () => {
    const outcome = await postResults(completedResults(), `${base}/results`);
    expect(outcome.posted).toBe(true);
    const stored = readdirSync(resultsDir)
      .filter((name) => name.startsWith("results_post-test"));
    expect(stored.length).toBe(1);
  });

  it("rejects malformed result payloads", async () => {
    const response = await fetch(`${base}/results`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: "{\"not\": \"a result file\"}",
    });
    expect(response.status).toBe(400);
  });
});

if (!available) {
  it("toolkit not available, serve test skipped", () => {
    expect(existsSync("/")).toBe(true);
  });
}
