// DOM shell around the session machine.
//
// Load with ?manifest=<url> (relative URLs resolve against the trial
// server root). The instruction text is shown character-for-character
// as the manifest carries it; space starts the session; response times
// are measured with performance.now() from stimulus onset to keypress.

import { downloadName, postResults, resultsJson } from "./export.js";
import { Session } from "./session.js";
import { assetList, isRankingTrial, parseManifest, TrialManifest } from "./types.js";

const RESULTS_ENDPOINT = "/results";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function isoNow(): string {
  return new Date().toISOString();
}

async function preloadAssets(manifest: TrialManifest): Promise<Map<string, HTMLImageElement>> {
  const images = new Map<string, HTMLImageElement>();
  await Promise.all(assetList(manifest).map((asset) =>
    new Promise<void>((resolve, reject) => {
      const img = new Image();
      img.onload = () => { images.set(asset, img); resolve(); };
      img.onerror = () => reject(new Error(`failed to load asset ${asset}`));
      img.src = asset;
    })));
  return images;
}

function showTrial(session: Session, images: Map<string, HTMLImageElement>): void {
  const stage = el<HTMLDivElement>("stage");
  stage.textContent = "";
  const trial = session.manifest.trials[session.currentIndex];
  if (trial === undefined) throw new Error("trial index out of range");
  const assets = isRankingTrial(trial)
    ? [trial.left_asset, trial.right_asset]
    : [trial.scene_asset];
  for (const asset of assets) {
    const source = images.get(asset);
    if (!source) throw new Error(`asset not preloaded: ${asset}`);
    const img = source.cloneNode() as HTMLImageElement;
    img.className = isRankingTrial(trial) ? "pair-image" : "scene-image";
    stage.appendChild(img);
  }
}

async function finish(session: Session, startedAt: string): Promise<void> {
  const participant = (el<HTMLInputElement>("participant").value.trim()
    || session.manifest.participant_id || "anonymous");
  const results = session.results(participant, startedAt, isoNow());
  const outcome = await postResults(results, RESULTS_ENDPOINT);
  const status = el<HTMLParagraphElement>("status");
  status.textContent = outcome.posted
    ? `Session complete. Results ${outcome.detail}.`
    : `Session complete. ${outcome.detail}; use the download link below.`;
  const link = el<HTMLAnchorElement>("download");
  link.href = URL.createObjectURL(
    new Blob([resultsJson(results)], { type: "application/json" }));
  link.download = downloadName(results);
  link.hidden = false;
  if (!outcome.posted) link.click();
  el<HTMLDivElement>("screen-done").hidden = false;
  el<HTMLDivElement>("screen-trial").hidden = true;
}

async function run(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const manifestUrl = params.get("manifest");
  const status = el<HTMLParagraphElement>("status");
  if (!manifestUrl) {
    status.textContent = "Add ?manifest=<url> to load a session manifest.";
    return;
  }

  let session: Session;
  let images: Map<string, HTMLImageElement>;
  try {
    const response = await fetch(manifestUrl);
    if (!response.ok) throw new Error(`manifest fetch: ${response.status}`);
    const manifest = parseManifest(await response.text());
    images = await preloadAssets(manifest);
    session = new Session(manifest);
  } catch (err) {
    // asset or manifest failure aborts the session; nothing is recorded
    status.textContent = `Cannot start session: ${err}`;
    return;
  }

  el<HTMLPreElement>("instructions").textContent = session.manifest.instructions;
  el<HTMLDivElement>("screen-instructions").hidden = false;
  if (session.manifest.participant_id) {
    el<HTMLInputElement>("participant").value = session.manifest.participant_id;
  }

  const startedAt = isoNow();
  const scheduleStimulus = () => {
    el<HTMLDivElement>("stage").textContent = "";
    window.setTimeout(() => {
      showTrial(session, images);
      session.stimulusShown(performance.now());
    }, session.interTrialBlankMs);
  };

  window.addEventListener("keydown", (event) => {
    if (session.phase === "instructions"
        && document.activeElement === el<HTMLInputElement>("participant")
        && event.key !== " ") {
      return; // let the participant-id field receive typing
    }
    const outcome = session.handleKey(event.key, performance.now());
    if (outcome.kind === "ignored") return;
    event.preventDefault();
    if (outcome.kind === "started") {
      el<HTMLInputElement>("participant").blur();
      document.documentElement.requestFullscreen?.().catch(() => undefined);
      el<HTMLDivElement>("screen-instructions").hidden = true;
      el<HTMLDivElement>("screen-trial").hidden = false;
      scheduleStimulus();
    } else if (outcome.advanced) {
      scheduleStimulus();
    } else {
      void finish(session, startedAt);
    }
  });
}

void run();
