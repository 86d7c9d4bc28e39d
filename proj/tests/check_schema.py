"""Runs the CLI on the shipped configs and validates every JSON report
against schema/report.schema.json. Usage: check_schema.py <endlab> <srcdir>"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

RUNS = [
    ("estimate", "z3z3.json", None, 0),
    ("boundary-dim", "z3z3.json", None, 0),
    ("doubling", "f2.json", None, 0),
    ("tracking", "z2z.json", None, 0),
    ("tree-dim", "tree-binary.json", None, 0),
    # Partial run: the vertex cap forces a smaller window.
    ("boundary-dim", "f2.json", {"budgets": {"vertex_cap": 20000}}, 3),
]


def main() -> int:
    cli, src = sys.argv[1], pathlib.Path(sys.argv[2])
    schema = json.loads((src / "schema" / "report.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        for i, (command, config, patch, want_exit) in enumerate(RUNS):
            cfg = json.loads((src / "configs" / config).read_text())
            for key, value in (patch or {}).items():
                cfg.setdefault(key, {}).update(value)
            cfg_path = tmp / f"config{i}.json"
            cfg_path.write_text(json.dumps(cfg))
            out = tmp / f"run{i}"
            proc = subprocess.run([cli, command, "--config", str(cfg_path), "--out", str(out), "--quiet"],
                                  capture_output=True, text=True)
            reports = [p for p in out.glob("*.json") if not p.name.endswith(".timing.json")]
            label = f"{command} {config}"
            if proc.returncode != want_exit or len(reports) != 1:
                print(f"FAIL {label}: exit {proc.returncode} (want {want_exit}), {len(reports)} reports\n{proc.stderr}")
                failures += 1
                continue
            report = json.loads(reports[0].read_text())
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            if want_exit == 3 and report.get("truncated") is not True:
                errors.append("partial run without \"truncated\": true")
            for e in errors:
                print(f"FAIL {label}: {getattr(e, 'message', e)}")
            failures += bool(errors)
            if not errors:
                print(f"PASS {label} -> {reports[0].name}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
