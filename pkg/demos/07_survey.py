"""
A small survey through the command-line driver, then re-verification of its records.
"""

import json
import tempfile
from pathlib import Path

from caperiod.cli import main
from caperiod.survey import verify_record

out = Path(tempfile.mkdtemp()) / "survey.jsonl"
main(["survey", "eca:30,eca:90,eca:204,example2", "--out", str(out),
      "--gilman-samples", "500", "--max-blocking-len", "4"])

for line in out.read_text(encoding="utf-8").splitlines():
    rec = json.loads(line)
    print(rec["rule"]["id"], rec["rule"]["name"], rec["gilman"]["class"],
          rec["kurka"]["equicontinuous"], rec["stp"]["count"],
          rec["factors"].get("spectrum", rec["factors"].get("skipped")))

results = [r for line in out.read_text(encoding="utf-8").splitlines()
           for r in verify_record(json.loads(line))]
print(sum(r["ok"] for r in results), "of", len(results), "certificates re-verified")
