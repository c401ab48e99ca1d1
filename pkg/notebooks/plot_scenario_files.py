"""
Scenarios as JSON files
=======================

Scenarios can be written to and read from JSON.  This is the same format
the ``intertrace`` command reads.
"""

import json
import tempfile
from pathlib import Path

from intertrace import parse_scenario, run_chain, serialize_scenario
from intertrace.cli import main
from intertrace.exceptions import ScenarioError

doc = {
    "systems": [
        {"label": "T", "prep": {"pauli": {"axis": "x"}}},
        {"label": "E1", "prep": {"pauli": {"axis": "z", "sign": "-"}}},
        {"label": "E2", "prep": {"matrix": [[0.5, 0.0], [0.0, 0.5]]}},
    ],
    "interactions": [
        {"pair": ["T", "E1"], "coupling": 2.0, "steps": 300},
        {"pair": ["T", "E2"]},
    ],
    "policy": "minimal",
}
scenario = parse_scenario(json.dumps(doc))
print(serialize_scenario(scenario))

rep = run_chain(scenario)
for label, b in rep.final_bloch.items():
    print(label, b)

###############################################################################
# Mistakes are reported with their location in the document.

for bad in ('{"systems": [}', json.dumps({**doc, "policy": "frugal"})):
    try:
        parse_scenario(bad)
    except ScenarioError as exc:
        print("rejected:", exc)

###############################################################################
# The command line takes the same file.

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "chain.json"
    path.write_text(json.dumps(doc))
    code = main(["run", str(path), "--format", "table-csv"])
    print("exit code", code)
