"""JSON and Markdown renderings of a classification run."""

from __future__ import annotations

import json
from collections import Counter
from importlib import resources
from typing import Any, Sequence

import jsonschema

from .classifier import GOLDEN_TABLE, ClassificationRun, exclude_veronese_cone

SCHEMA_VERSION = 1

CITATION_NOTES = (
    "degree 4: quartic and quadric in P(1,1,1,1,1,2), reported from the literature, not recomputed",
    "smooth realizations of the listed threefolds: cited, not recomputed",
    "smoothness of the (2,1,1,1) blow-up at [0:1] for (7,5): one-sided F_p scan evidence only",
)


def load_schema() -> dict:
    text = resources.files("fano_enriques").joinpath("schemas/classify.schema.json").read_text()
    return json.loads(text)


def build_report(run: ClassificationRun, seeds: Sequence[int], scan_prime: int) -> dict[str, Any]:
    reports = list(run.positive) + list(run.zero)
    failures = Counter(r.first_failure for r in reports if not r.accepted)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": {"bound": run.bound, "seeds": list(seeds), "scan_prime": scan_prime},
        "table": run.table(),
        "accepted": [list(row) for row in run.accepted()],
        "golden": [list(row) for row in GOLDEN_TABLE],
        "golden_match": run.matches_golden(),
        "rejections_by_filter": dict(sorted(failures.items())),
        "veronese_cone": exclude_veronese_cone(),
        "notes": list(CITATION_NOTES),
        "candidates": {
            "positive_d3": [r.to_json() for r in run.positive],
            "zero_d3": [r.to_json() for r in run.zero],
        },
    }


def validate(report: dict) -> None:
    jsonschema.validate(report, load_schema())


def to_json(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def to_markdown(report: dict) -> str:
    cfg = report["config"]
    lines = [
        "# Scroll double covers with an Enriques-type involution",
        "",
        f"bound {cfg['bound']}, seeds {cfg['seeds']}, scan prime {cfg['scan_prime']}",
        "",
        "| d1 | d2 | d3 | -K^3 | genus | source |",
        "|---:|---:|---:|---:|---:|---|",
    ]
    for row in report["table"]:
        d = row["d"] or ["", "", ""]
        lines.append(f"| {d[0]} | {d[1]} | {d[2]} | {row['degree']} | {row['genus']} | {row['source']} |")
    lines += ["", f"matches golden list: {'yes' if report['golden_match'] else 'NO'}", ""]
    lines += ["## Rejections by first failing filter", ""]
    for name, count in report["rejections_by_filter"].items():
        lines.append(f"- {name}: {count}")
    lines += ["", "## Accepted d3 = 0 pairs", ""]
    lines.append("| pair | involution | generic | [1:0] | [0:1] |")
    lines.append("|---|---|---|---|---|")
    for r in report["candidates"]["zero_d3"]:
        if not r["accepted"]:
            continue
        canon = next(f for f in r["filters"] if f["name"] == "canonical")["detail"]["notes"][r["involution"]]["points"]
        cells = []
        for p in canon:
            cell = p["cdv"]["verdict"]
            if p["evidence"] == "SCAN":
                cell += f", crepant (disc {p['discrepancy']['value']}), scan {'clean' if p['scan']['clean'] else 'FAILED'}"
            cells.append(cell)
        d1, d2, _ = r["triple"]
        lines.append(f"| ({d1},{d2}) | {r['involution']} | " + " | ".join(cells) + " |")
    v = report["veronese_cone"]
    lines += [
        "",
        "## Cone over the Veronese surface",
        "",
        f"- fixed locus of {v['involution']}: {v['fixed_locus']}",
        f"- family {v['quadric_families']['K1']}: contains C1 ({v['K1']['certified']})",
        f"- family {v['quadric_families']['K2']}: passes through O ({v['K2']['certified']})",
        f"- invariant sextic support: {v['sextic']['invariant_support_size']} monomials;"
        f" beyond the expected list: {v['sextic']['missing_from_expected']}",
        "",
        "## Notes",
        "",
    ]
    lines += [f"- {n}" for n in report["notes"]]
    return "\n".join(lines) + "\n"
