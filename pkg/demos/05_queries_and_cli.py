# Acceptance queries through the library and the command line.
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from wadf import parse_framework
from wadf.semantics import parse_predicate, query

FLAT4 = """structure unit-flat
statement a: 0.8
statement b: !b
statement c: a & b
statement d: !b | 0.6
"""

fw = parse_framework(FLAT4)
pred = parse_predicate("ge:0.6", fw.structure)
for mode in ("credulous", "skeptical"):
    res = query(fw, "model", "d", pred, mode)
    print(mode, res.answer, res.count)

# the same through the CLI; results are JSON with a format field
tmp = Path(tempfile.mkdtemp())
(tmp / "flat4.wadf").write_text(FLAT4)
(tmp / "model.json").write_text('{"a": "0.8", "b": "0.5", "c": "0.5", "d": "0.6"}')


def wadf(*args):
    proc = subprocess.run([sys.executable, "-m", "wadf", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout or proc.stderr


code, out = wadf("solve", "--sem", "complete", str(tmp / "flat4.wadf"))
print(code, json.loads(out)["interpretations"])
code, out = wadf("stable", "--interpretation", str(tmp / "model.json"), "--assumed", "[0,0.5)", str(tmp / "flat4.wadf"))
print(code, json.loads(out)["verdict"])
code, out = wadf("reduct", "--interpretation", str(tmp / "model.json"), "--assumed", "[0,0.5]", str(tmp / "flat4.wadf"))
print(out)

# errors come back as one JSON line with a documented exit code
print(wadf("solve", "--sem", "preferred", str(tmp / "flat4.wadf")))
