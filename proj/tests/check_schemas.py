"""Validates the sample corpus and generated reports against schemas/v1."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

root = pathlib.Path(sys.argv[1])
dmiso = sys.argv[2]
schemas = root / "schemas" / "v1"
docs = json.loads((schemas / "documents.schema.json").read_text())
report = json.loads((schemas / "report.schema.json").read_text())
for s in (docs, report):
    jsonschema.Draft202012Validator.check_schema(s)
doc_v = jsonschema.Draft202012Validator(docs)
rep_v = jsonschema.Draft202012Validator(report)
cert_v = jsonschema.Draft202012Validator({"$defs": report["$defs"], "$ref": "#/$defs/certificate"})
policy_v = jsonschema.Draft202012Validator({"$defs": docs["$defs"], "$ref": "#/$defs/policy"})

failures = 0


def check(v, obj, what):
    global failures
    errs = list(v.iter_errors(obj))
    for e in errs[:3]:
        print(f"{what}: {e.message} at {list(e.absolute_path)}")
    failures += bool(errs)


def certificates(node):
    if isinstance(node, dict):
        if "certificate" in node:
            yield node
        for v in node.values():
            yield from certificates(v)
    elif isinstance(node, list):
        for v in node:
            yield from certificates(v)


items = sorted((root / "corpus").glob("*.json"))
for p in items:
    check(doc_v, json.loads(p.read_text()), p.name)

with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp) / "report.json"
    subprocess.run([dmiso, "corpus", str(root / "corpus"), "-o", str(out)], check=False)
    rep = json.loads(out.read_text())
    check(rep_v, rep, "corpus report")
    check(policy_v, rep["policy"], "policy")
    n = 0
    for c in certificates(rep):
        check(cert_v, c, "certificate")
        n += 1
    # documents echoed into the report are valid inputs again
    for e in rep["entries"]:
        if "input" in e:
            check(doc_v, e["input"], e["item"] + " echo")
    subprocess.run([dmiso, "verify", "--input", str(out), "-o", str(pathlib.Path(tmp) / "v.json")], check=False)
    check(rep_v, json.loads((pathlib.Path(tmp) / "v.json").read_text()), "verify report")

print(f"{len(items)} documents, {n} certificates checked, {failures} failure(s)")
sys.exit(1 if failures else 0)
