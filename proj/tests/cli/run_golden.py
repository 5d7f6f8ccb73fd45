"""Replays CLI transcripts and compares stdout and exit codes.

Transcript syntax, one directive per line:
  $ args...          run the binary; {tmp} is a scratch directory, {root} the checkout
  <text>             expected stdout line (all of them, in order)
  ~ text             stdout contains text
  ! text             stderr contains text
  ? code             expected exit code (default 0)
  @data              copy conventions/ and diagrams/ to {tmp}/data and use it
  @sed file old new  replace text in a file under {tmp}
  # ...              comment
"""

import os
import shlex
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path


def parse(path):
    cases, cur = [], None
    for n, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        if line.startswith("@") or line.startswith("$ "):
            cur = {"line": n, "cmd": line, "out": [], "has": [], "err": [], "code": 0}
            cases.append(cur)
        elif cur is None:
            sys.exit(f"{path}:{n}: expectation before any command")
        elif line.startswith("~ "):
            cur["has"].append(line[2:])
        elif line.startswith("! "):
            cur["err"].append(line[2:])
        elif line.startswith("? "):
            cur["code"] = int(line[2:])
        else:
            cur["out"].append(line)
    return cases


def main():
    exe, transcript = str(Path(sys.argv[1]).resolve()), sys.argv[2]
    root = Path(__file__).resolve().parents[2]
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        env = dict(os.environ)
        env.pop("HOPFINV_DATA", None)
        for c in parse(transcript):
            cmd = c["cmd"].replace("{tmp}", tmp).replace("{root}", str(root))
            if cmd == "@data":
                data = Path(tmp) / "data"
                shutil.rmtree(data, ignore_errors=True)
                for sub in ("conventions", "diagrams"):
                    shutil.copytree(root / sub, data / sub)
                env["HOPFINV_DATA"] = str(data)
                continue
            if cmd.startswith("@sed "):
                _, f, old, new = shlex.split(cmd)
                p = Path(tmp) / f
                text = p.read_text()
                if old not in text:
                    print(f"FAIL line {c['line']}: '{old}' not in {f}")
                    failures += 1
                p.write_text(text.replace(old, new, 1))
                continue
            args = [exe] + shlex.split(cmd[2:])
            r = subprocess.run(args, capture_output=True, text=True, env=env, cwd=tmp)
            problems = []
            if r.returncode != c["code"]:
                problems.append(f"exit {r.returncode}, expected {c['code']}")
            got = r.stdout.splitlines()
            if c["out"] and got != c["out"]:
                problems.append("stdout:\n    " + "\n    ".join(got))
            problems += [f"stdout lacks '{h}'" for h in c["has"] if h not in r.stdout]
            problems += [f"stderr lacks '{h}'" for h in c["err"] if h not in r.stderr]
            status = "FAIL" if problems else "ok"
            print(f"{status:4}  line {c['line']}: {cmd}")
            for p in problems:
                print("      " + p)
            if problems:
                print("      stderr: " + r.stderr.strip())
                failures += 1
    print(f"{failures} failing")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
