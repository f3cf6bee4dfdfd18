import json
import logging
import sys

from pyperverse.app import app
from pyperverse.models import RunReport, StoredReport
from pyperverse.utils import canonical_json


def render_text(report: RunReport) -> str:
    lines = [f"{report.command}: {'ok' if report.ok else 'FAILED'}"]
    for name, verdict in sorted(report.verdicts.items()):
        line = f"  {name}: {'ok' if verdict.ok else 'FAILED'}"
        if not verdict.ok and verdict.witness:
            line += f" {json.dumps(verdict.witness, sort_keys=True)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


@app.dispatcher
def write_report(report: RunReport, args):
    document = canonical_json(report.to_json())
    sys.stdout.write(document if args.format == "json" else render_text(report))
    if args.output:
        with open(args.output, mode="w", encoding="utf-8") as f:
            f.write(document)


@app.dispatcher
def store_report(report: RunReport, _):
    if (store := app.store) is None:
        return
    store.put(StoredReport.of(report))
    logging.debug(f"Report {report.key} stored")
