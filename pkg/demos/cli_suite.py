"""Write a small suite document and run it through the command line entry point.

The flatness check on the collapse map is a genuine refutation, so the exit
code is 1.
"""
import json
import tempfile
from pathlib import Path

from relscheme.cli import main

doc = {
    "name": "demo",
    "seed": 3,
    "monoids": {
        "z2": {"elements": ["e", "g"], "unit": "e", "table": [[0, 1], [1, 0]]},
        "one": {"elements": ["e"], "unit": "e", "table": [[0]]},
    },
    "morphisms": {
        "u": {"dom": "one", "cod": "z2", "map": {"e": "e"}},
        "c": {"dom": "z2", "cod": "one", "map": {"e": "e", "g": "e"}},
    },
    "actions": {"set": {"kind": "self"}},
    "checks": [
        {"op": "check_comm_monoid", "args": ["z2"]},
        {"op": "is_epi", "args": ["u"], "expect": "FAIL"},
        {"op": "flatness_probe", "args": ["c", "set"], "budget": {"max_module_size": 2}},
    ],
}

with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "demo.json"
    path.write_text(json.dumps(doc, indent=2))
    code = main(["verify", str(path)])
    print("exit code:", code)
