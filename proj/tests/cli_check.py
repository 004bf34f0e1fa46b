"""Runs the fpmn executable over the fixtures, checks exit codes and text
output, and validates every --json report and written artifact against the
schemas."""

import json
import re
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

fpmn, fixtures, schemas = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])


def load(name):
    schema = json.loads((schemas / name).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


report = load("report.schema.json")
artifact = {"certificate": load("certificate.schema.json"), "witness": load("witness.schema.json")}
failures = []
COMMANDS = {"index", "present", "certify", "class", "witness", "recheck"}


def fx(name):
    return str(fixtures / name)


def check(args, code, pattern=None):
    text = subprocess.run([fpmn, *args], capture_output=True, text=True)
    if text.returncode != code:
        failures.append(f"{args}: exit {text.returncode}, expected {code}\n{text.stdout}{text.stderr}")
        return None
    if pattern and not re.search(pattern, text.stdout, re.M):
        failures.append(f"{args}: output does not match {pattern!r}\n{text.stdout}")
    if args[0] not in COMMANDS:
        return None
    js = subprocess.run([fpmn, *args, "--json"], capture_output=True, text=True)
    if js.returncode != code:
        failures.append(f"{args} --json: exit {js.returncode}, expected {code}")
        return None
    try:
        doc = json.loads(js.stdout)
    except json.JSONDecodeError:
        # argument errors are reported by the parser before any JSON is written
        return None
    for err in report.iter_errors(doc):
        failures.append(f"{args} --json: {err.message} at {list(err.absolute_path)}")
    if doc.get("exit_code") != code:
        failures.append(f"{args} --json: exit_code field {doc.get('exit_code')}")
    for key in ("witness", "certificate"):
        if key in doc:
            for err in artifact[key].iter_errors(doc[key]):
                failures.append(f"{args} --json {key}: {err.message}")
    return doc


def check_artifact(path, kind):
    doc = json.loads(Path(path).read_text())
    for err in artifact[kind].iter_errors(doc):
        failures.append(f"{path}: {err.message} at {list(err.absolute_path)}")
    return doc


check(["index", fx("e1.txt")], 0, r"^index: 1$")
check(["index", fx("e2.txt")], 0, r"^transversal: 1, y$")
check(["index", fx("s3.txt")], 0, r"^index: 6$")
check(["index", fx("e3.txt")], 0, r"^index: infinite")
check(["index", fx("s3.txt"), "--max-cosets", "2"], 2, r"undecided")
check(["present", fx("e1.txt")], 0, r"^F/\[M,N\] = < a, b \| a\^-1\*b\^-1\*a\*b >$")
check(["present", fx("e2.txt")], 0, r"^relators: 3 distinct of 4 formal$")
check(["present", fx("s3.txt")], 0, r"^F/\[M,N\] = <")
check(["present", fx("e3.txt")], 5, r"refused")
check(["present", fx("nonexistent.txt")], 5)
check(["certify", fx("e2.txt"), "--m", "x", "--f", "y^3", "--n", "y^2"], 0, r"^verified: yes$")
check(["certify", fx("e2.txt"), "--m", "3"], 5)
check(["certify", fx("e2.txt"), "--f", "y^9 x y^7", "--budget", "2"], 4)
check(["certify", fx("s3.txt"), "--random", "20"], 0, r"^certified 20 of 20")
check(["class", fx("e2.txt")], 0, r"^class: 1$")
check(["class", fx("e3.txt")], 5)
check(["class", fx("e3.txt"), "--backend", "free:x->1,y->t"], 0, r"^class: 1$")
check(["class", fx("e3.txt"), "--backend", "cyclic"], 5)
check(["witness", fx("e2.txt"), "--Y", ""], 5)
check(["witness", fx("free3.txt"), "--Y", ""], 0, r"^check \(i\) distant: pass$")
check(["frobnicate"], 5)
check(["--help"], 0)

with tempfile.TemporaryDirectory() as tmp:
    cert = str(Path(tmp) / "c.json")
    check(["certify", fx("e2.txt"), "--f", "x y^-3", "--out", cert], 0)
    check_artifact(cert, "certificate")
    check(["recheck", cert], 0, r"^certificate: valid$")

    wit = str(Path(tmp) / "w.json")
    doc = check(["witness", fx("e3.txt"), "--backend", "free:x->1,y->t", "--Y", "[x^y,x]", "--out", wit], 0,
                r"^omega: y\^-2\*x\^-1\*y\^2\*x\^-1\*y\^-2\*x\*y\^2\*x$")
    w = check_artifact(wit, "witness")
    if doc is not None and doc["witness"] != w:
        failures.append("witness file differs from the JSON report")
    check(["recheck", wit], 0, r"^witness: valid$")

    w["g"] = "t^3"
    Path(wit).write_text(json.dumps(w))
    check(["recheck", wit], 3, r"INVALID")
    Path(wit).write_text("[]")
    check(["recheck", wit], 5)

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
