#!/usr/bin/env python3
"""Drives the grforge CLI end to end and validates every document it writes."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

CLI = str(pathlib.Path(sys.argv[1]).resolve())
SCHEMAS = pathlib.Path(sys.argv[2])

registry = Registry()
for path in SCHEMAS.glob("*.schema.json"):
    registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))

def validator(name):
    schema = json.loads((SCHEMAS / name).read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)

BY_FORMAT = {
    "grforge.algebra": validator("algebra.schema.json"),
    "grforge.module": validator("module.schema.json"),
    "grforge.graded_subalgebra": validator("graded_subalgebra.schema.json"),
    "grforge.report": validator("report.schema.json"),
}

failures = []

def expect(cond, msg):
    print(("ok   " if cond else "FAIL ") + msg)
    if not cond:
        failures.append(msg)

def run(args, cwd, code):
    r = subprocess.run([CLI, "--report-dir", str(cwd / "reports"), "-q", *args], cwd=cwd,
                       capture_output=True, text=True)
    expect(r.returncode == code, f"{' '.join(args)} exits {code} (got {r.returncode}) {r.stderr.strip()}")
    return r

with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    fx = tmp / "fx"
    for args in (["z5"], ["z5s"], ["qschur", "--d", "3", "--p", "3"], ["qschur", "--d", "2", "--p", "5"],
                 ["usl2", "--p", "3"]):
        run(["gen", *args, "-o", "fx"], tmp, 0)
    run(["gen", "inflate", "--input", "fx/z5.json", "--nu", "1", "--copies", "2", "-o", "fx"], tmp, 0)
    run(["gen", "perturb", "--input", "fx/z5.json", "--seed", "11", "--count", "2", "-o", "fx"], tmp, 0)

    # generation is deterministic
    first = {p.name: p.read_bytes() for p in fx.glob("*.json")}
    run(["gen", "z5", "-o", "fx"], tmp, 0)
    run(["gen", "qschur", "--d", "3", "--p", "3", "-o", "fx"], tmp, 0)
    expect(all(first[p.name] == p.read_bytes() for p in fx.glob("*.json")), "regenerated fixtures are byte-identical")

    run(["certify", "fx/z5.json"], tmp, 0)
    run(["certify", "fx/z5s.json"], tmp, 1)
    run(["gr", "fx/z5.json", "-o", "fx/z5_gr.json"], tmp, 0)
    run(["verify", "thm417", "fx/z5.json", "fx/qschur_2_3_p3.json", "fx/z5_inflate_1x2.json"], tmp, 0)
    run(["verify", "cor416", "fx/z5.json", "fx/z5.regular.json"], tmp, 0)
    run(["verify", "conds51", "fx/z5.json", "fx/z5.path_grading.json"], tmp, 0)
    run(["verify", "thm53", "fx/z5.json", "fx/z5.path_grading.json"], tmp, 0)
    run(["verify", "thm53", "fx/qschur_2_2_p5.json", "fx/qschur_2_2_p5.trivial_grading.json"], tmp, 0)
    run(["verify", "appendix1", "fx/qschur_2_3_p3.json"], tmp, 0)
    run(["verify", "appendix2", "--p", "5", "--type", "A1", "--order", "8"], tmp, 0)
    run(["verify", "prop52", "fx/z5.json", "fx/z5.path_grading.json", "--trials", "30"], tmp, 0)
    run(["verify", "primitivity", "fx/z5.json", "--trials", "200"], tmp, 0)
    run(["filtration", "fx/z5.json", "fx/z5.regular.json"], tmp, 0)

    # malformed input and usage errors
    (tmp / "bad.json").write_text('{"format": "grforge.algebra",\n "rank": }\n')
    r = run(["certify", "bad.json"], tmp, 2)
    expect("line 2" in r.stderr, "parse error names the line")
    doc = json.loads((fx / "z5.json").read_text())
    doc["structure_constants"][0][3] = "1/0"
    (tmp / "bad2.json").write_text(json.dumps(doc))
    r = run(["certify", "bad2.json"], tmp, 2)
    expect("/structure_constants/0" in r.stderr, "bad scalar names the field")
    run(["verify", "nosuch", "fx/z5.json"], tmp, 2)
    run(["gen", "qschur", "--d", "9", "-o", "fx"], tmp, 2)

    reports = sorted((tmp / "reports").glob("*.json"))
    expect(len(reports) >= 12, f"{len(reports)} reports written")
    for path in sorted(fx.glob("*.json")) + reports:
        text = path.read_text()
        doc = json.loads(text)
        v = BY_FORMAT.get(doc.get("format"))
        errors = [] if v is None else [e.message for e in v.iter_errors(doc)]
        expect(v is not None and not errors, f"{path.name} validates {errors[:1]}")
        expect(json.dumps(doc, indent=2, ensure_ascii=False) + "\n" == text, f"{path.name} reserializes byte-identically")

    # reports are byte-stable once the timing field is dropped
    def stable(name):
        d = json.loads((tmp / "reports" / name).read_text())
        d.pop("wall_clock_ms")
        return json.dumps(d, sort_keys=True)
    before = stable("certify-z5.json".replace(".json", ".report.json"))
    run(["certify", "fx/z5.json"], tmp, 0)
    expect(before == stable("certify-z5.report.json"), "certify report is byte-stable")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
