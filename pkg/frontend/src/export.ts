// Result delivery: POST to the local trial server when available, with
// a file download as the fallback path (handled by the DOM shell).

import { TrialResults } from "./types.js";

export interface PostOutcome {
  posted: boolean;
  detail: string;
}

export function resultsJson(results: TrialResults): string {
  return JSON.stringify(results, null, 2);
}

export async function postResults(
  results: TrialResults,
  endpoint: string,
  fetchImpl: typeof fetch = globalThis.fetch,
): Promise<PostOutcome> {
  try {
    const response = await fetchImpl(endpoint, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: resultsJson(results),
    });
    if (!response.ok) {
      return { posted: false, detail: `server replied ${response.status}` };
    }
    return { posted: true, detail: `stored via ${endpoint}` };
  } catch (err) {
    return { posted: false, detail: `POST failed: ${err}` };
  }
}

export function downloadName(results: TrialResults): string {
  const safe = results.participant_id.replace(/[^A-Za-z0-9_-]+/g, "-")
    || "anonymous";
  return `results_${safe}_${results.mode}.json`;
}
