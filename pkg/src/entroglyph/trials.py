"""Trial manifests and result merging for the two experiment designs.

Ranking sessions show every ordered pair of glyph images once (both
orders of each pair, no self-pairs); search sessions show forty scenes,
ten target-present and ten target-absent for each of the low and high
targets. Manifests are shuffled with a seeded Mersenne Twister
(CPython's random.Random), so (assets, seed) fully determine the order.

Result files embed the manifest they were collected against, which
keeps them self-contained: merging needs the stimulus identity of every
trial, and the spec of a record is just (trial_index, response, rt).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass

from .analysis.bradley_terry import PairComparisonTable, merge_duplicates
from .analysis.sdt import SDTCounts
from .errors import MissingRecords, MixedModes, TooFewGlyphs, WrongBucketSize

__all__ = [
    "RANKING_INSTRUCTIONS",
    "SEARCH_INSTRUCTIONS",
    "RankingTrial",
    "SearchTrial",
    "TrialManifest",
    "TrialRecord",
    "TrialResults",
    "build_ranking_manifest",
    "build_search_manifest",
    "merge_results",
    "manifest_to_json",
    "manifest_from_json",
    "results_to_json",
    "results_from_json",
]

SCHEMA_VERSION = 1

RANKING_INSTRUCTIONS = (
    "You will see a series of image pairs.\n"
    "Each image represents a value and also represents a level of uncertainty.\n"
    "More complex shapes represent more uncertainty.\n"
    "Choose which image represents the most uncertain value to you.\n"
    "Left arrow for left. Right arrow for right.\n"
    "Press space when ready.")

SEARCH_INSTRUCTIONS = (
    "You will see a series of images.\n"
    "Each image shows several glyphs; you are searching for one target glyph.\n"
    "Decide whether the target glyph is present in the image.\n"
    "Press Y for present. Press N for absent.\n"
    "Press space when ready.")

SEARCH_TARGETS = ("low", "high")
_BUCKETS = ("low_present", "low_absent", "high_present", "high_absent")
BUCKET_SIZE = 10


@dataclass(frozen=True)
class RankingTrial:
    left_asset: str
    right_asset: str


@dataclass(frozen=True)
class SearchTrial:
    scene_asset: str
    target_present: bool
    target: str


@dataclass(frozen=True)
class TrialManifest:
    mode: str                  # "ranking" | "search"
    trials: tuple
    seed: int
    instructions: str
    participant_id: str | None = None

    def __post_init__(self):
        if self.mode not in ("ranking", "search"):
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "trials", tuple(self.trials))
        for i, trial in enumerate(self.trials):
            if self.mode == "ranking":
                if trial.left_asset == trial.right_asset:
                    raise ValueError(f"trial {i} pairs an asset with itself")
            elif trial.target not in SEARCH_TARGETS:
                raise ValueError(f"trial {i} has unknown target {trial.target!r}")

    def asset_set(self) -> frozenset:
        if self.mode == "ranking":
            return frozenset(a for t in self.trials
                             for a in (t.left_asset, t.right_asset))
        return frozenset(t.scene_asset for t in self.trials)

    def valid_responses(self) -> tuple:
        return ("left", "right") if self.mode == "ranking" else ("yes", "no")


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    response: str
    rt: float

    def __post_init__(self):
        if self.rt <= 0:
            raise ValueError(f"rt must be positive, got {self.rt}")


@dataclass(frozen=True)
class TrialResults:
    participant_id: str
    mode: str
    records: tuple
    started_at: str
    completed_at: str
    manifest: TrialManifest

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        if self.mode != self.manifest.mode:
            raise MixedModes(
                f"results say {self.mode!r}, manifest says "
                f"{self.manifest.mode!r}")
        valid = self.manifest.valid_responses()
        per_trial = [0] * len(self.manifest.trials)
        for rec in self.records:
            if rec.response not in valid:
                raise ValueError(
                    f"response {rec.response!r} invalid for {self.mode}")
            if not 0 <= rec.trial_index < len(per_trial):
                raise MissingRecords((rec.trial_index,))
            per_trial[rec.trial_index] += 1
        gaps = tuple(i for i, c in enumerate(per_trial) if c != 1)
        if gaps:
            raise MissingRecords(gaps)


def build_ranking_manifest(glyph_assets, seed: int,
                           instructions: str = RANKING_INSTRUCTIONS,
                           participant_id: str | None = None) -> TrialManifest:
    """All ordered pairs of the assets, shuffled deterministically."""
    assets = list(glyph_assets)
    if len(assets) < 2:
        raise TooFewGlyphs(f"need at least 2 glyph assets, got {len(assets)}")
    if len(set(assets)) != len(assets):
        raise ValueError("glyph assets must be distinct")
    trials = [RankingTrial(a, b) for a, b in itertools.permutations(assets, 2)]
    random.Random(seed).shuffle(trials)
    return TrialManifest("ranking", tuple(trials), int(seed), instructions,
                         participant_id)


def build_search_manifest(scenes: dict, seed: int,
                          instructions: str = SEARCH_INSTRUCTIONS,
                          participant_id: str | None = None) -> TrialManifest:
    """Forty search trials from four ten-asset buckets, shuffled by seed.

    ``scenes`` maps each of low_present, low_absent, high_present and
    high_absent to exactly ten scene asset references.
    """
    trials = []
    for bucket in _BUCKETS:
        assets = list(scenes.get(bucket, ()))
        if len(assets) != BUCKET_SIZE:
            raise WrongBucketSize(
                f"bucket {bucket!r} has {len(assets)} assets, "
                f"need {BUCKET_SIZE}")
        target, presence = bucket.rsplit("_", 1)
        for asset in assets:
            trials.append(SearchTrial(asset, presence == "present", target))
    random.Random(seed).shuffle(trials)
    return TrialManifest("search", tuple(trials), int(seed), instructions,
                         participant_id)


def merge_results(results):
    """Merge result files into analysis inputs.

    Ranking mode yields a PairComparisonTable with per-pair mean RTs;
    search mode yields {"low": SDTCounts, "high": SDTCounts} where hits
    are yes-responses on target-present trials and false alarms are
    yes-responses on target-absent trials. All files must share a mode
    and a stimulus set.
    """
    results = list(results)
    if not results:
        raise ValueError("no result files to merge")
    mode = results[0].mode
    assets = results[0].manifest.asset_set()
    for r in results[1:]:
        if r.mode != mode:
            raise MixedModes(f"modes {mode!r} and {r.mode!r} mixed")
        if r.manifest.asset_set() != assets:
            raise MixedModes("result files cover different stimulus sets")

    if mode == "ranking":
        records = []
        for r in results:
            for rec in r.records:
                trial = r.manifest.trials[rec.trial_index]
                records.append((trial.left_asset, trial.right_asset,
                                rec.response, rec.rt))
        return merge_duplicates(records)

    tallies = {target: {"hits": 0, "misses": 0, "false_alarms": 0,
                        "correct_rejections": 0}
               for target in SEARCH_TARGETS}
    for r in results:
        for rec in r.records:
            trial = r.manifest.trials[rec.trial_index]
            said_yes = rec.response == "yes"
            cell = tallies[trial.target]
            if trial.target_present:
                cell["hits" if said_yes else "misses"] += 1
            else:
                cell["false_alarms" if said_yes else "correct_rejections"] += 1
    return {target: SDTCounts(**cells) for target, cells in tallies.items()}


# --- JSON forms ------------------------------------------------------------

def manifest_to_json(manifest: TrialManifest) -> str:
    if manifest.mode == "ranking":
        trials = [{"left_asset": t.left_asset, "right_asset": t.right_asset}
                  for t in manifest.trials]
    else:
        trials = [{"scene_asset": t.scene_asset,
                   "target_present": t.target_present, "target": t.target}
                  for t in manifest.trials]
    return json.dumps({
        "schema_version": SCHEMA_VERSION,
        "mode": manifest.mode,
        "seed": manifest.seed,
        "instructions": manifest.instructions,
        "participant_id": manifest.participant_id,
        "trials": trials,
    }, indent=2)


def _manifest_from_dict(doc: dict) -> TrialManifest:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported manifest schema_version {doc.get('schema_version')!r}")
    mode = doc["mode"]
    if mode == "ranking":
        trials = tuple(RankingTrial(t["left_asset"], t["right_asset"])
                       for t in doc["trials"])
    else:
        trials = tuple(SearchTrial(t["scene_asset"], bool(t["target_present"]),
                                   t["target"])
                       for t in doc["trials"])
    return TrialManifest(mode, trials, int(doc["seed"]), doc["instructions"],
                         doc.get("participant_id"))


def manifest_from_json(text: str) -> TrialManifest:
    return _manifest_from_dict(json.loads(text))


def results_to_json(results: TrialResults) -> str:
    return json.dumps({
        "schema_version": SCHEMA_VERSION,
        "participant_id": results.participant_id,
        "mode": results.mode,
        "records": [{"trial_index": r.trial_index, "response": r.response,
                     "rt": r.rt} for r in results.records],
        "started_at": results.started_at,
        "completed_at": results.completed_at,
        "manifest": json.loads(manifest_to_json(results.manifest)),
    }, indent=2)


def results_from_json(text: str) -> TrialResults:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported results schema_version {doc.get('schema_version')!r}")
    return TrialResults(
        doc["participant_id"],
        doc["mode"],
        tuple(TrialRecord(int(r["trial_index"]), r["response"], float(r["rt"]))
              for r in doc["records"]),
        doc["started_at"],
        doc["completed_at"],
        _manifest_from_dict(doc["manifest"]),
    )
