#!/usr/bin/env python3
"""Replay every bundled case study through the command-line workbench.

Prints each listing under a heading, in the same order the walkthroughs are
usually read: single-machine reachability, pair reachability, controllability
checks, composition, synthesis and nonblocking verification, and the two
language closures.  A few cases are *supposed* to end with a failing verdict
(exit code 1); the script records the expectation next to each invocation and
exits 0 only if every case matched its expected status.
"""
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
MODELS = ROOT / "models"


def workbench(*args):
    exe = shutil.which("fdes")
    cmd = [exe] if exe else [sys.executable, "-m", "fdes.cli"]
    return subprocess.run(cmd + list(args), capture_output=True, text=True)


def model(name):
    return str(MODELS / name)


def main():
    tmp = Path(tempfile.mkdtemp(prefix="fdes-case-studies-"))
    sup_ok = str(tmp / "chain_supervisor_ok.json")
    sup_bad = str(tmp / "chain_supervisor_bad.json")

    two = [model("maxmin_plant_2state.json"), model("maxmin_spec_2state.json")]
    three = [model("maxmin_plant_3state.json"), model("maxmin_spec_3state.json")]
    chain = [model("chain_plant.json"), model("chain_spec_language.json")]
    lattice = [model("lattice_k.json"), model("lattice_m.json"),
               "--attrs", model("attrs_lattice.json")]

    cases = [
        ("reachable states of the two-state machine",
         ["reach", two[0]], 0),
        ("computing tree of the two-state machine",
         ["tree", two[0]], 0),
        ("reachable pairs of the two-state plant/spec",
         ["pairs", *two], 0),
        ("controllability check, two-state pair (fails at (a1, a1))",
         ["check", *two, "--attrs", model("attrs_2state.json"), "--first-failure"], 1),
        ("reachable pairs of the three-state plant/spec",
         ["pairs", *three], 0),
        ("controllability check, mixed attributes (fails at the empty string)",
         ["check", *three, "--attrs", model("attrs_3state_mixed.json"), "--first-failure"], 1),
        ("controllability check, every event at 0.2 (passes)",
         ["check", *three, "--attrs", model("attrs_3state_low.json")], 0),
        ("parallel composition of the two three-state machines",
         ["compose", model("compose_left_3state.json"),
          model("compose_right_3state.json")], 0),
        ("supervisor synthesis for the chain plant, c fully controllable",
         ["synthesize", *chain, "--attrs", model("attrs_chain_nonblocking.json"),
          "--out", sup_ok], 0),
        ("controlled languages of the synthesized supervisor on 'a b'",
         ["eval", sup_ok, chain[0], "a b"], 0),
        ("nonblocking verification, c fully controllable (nonblocking)",
         ["nonblock", sup_ok, *chain,
          "--attrs", model("attrs_chain_nonblocking.json")], 0),
        ("supervisor synthesis for the chain plant, uc(c) = 0.3",
         ["synthesize", *chain, "--attrs", model("attrs_chain_blocking.json"),
          "--out", sup_bad], 0),
        ("nonblocking verification, uc(c) = 0.3 (blocking at a b c)",
         ["nonblock", sup_bad, *chain,
          "--attrs", model("attrs_chain_blocking.json")], 1),
        ("supremal controllable sublanguage of the lattice case",
         ["suplang", *lattice, "--format", "text"], 0),
        ("infimal prefix-closed controllable superlanguage of the lattice case",
         ["inflang", *lattice, "--format", "text"], 0),
    ]

    mismatches = 0
    for title, args, expected in cases:
        res = workbench(*args)
        status = "ok" if res.returncode == expected else "UNEXPECTED"
        if status == "UNEXPECTED":
            mismatches += 1
        print(f"=== {title}")
        print(f"    $ fdes {' '.join(Path(a).name if '/' in a else a for a in args)}")
        print(f"    [exit {res.returncode}, expected {expected}: {status}]")
        body = res.stdout if res.stdout else res.stderr
        for line in body.rstrip("\n").splitlines():
            print(f"    {line}")
        if res.stdout and res.stderr:
            for line in res.stderr.rstrip("\n").splitlines():
                print(f"    ! {line}")
        print()

    shutil.rmtree(tmp, ignore_errors=True)
    if mismatches:
        print(f"{mismatches} case(s) did not match their expected exit status")
        return 1
    print(f"all {len(cases)} cases matched their expected exit status")
    return 0


if __name__ == "__main__":
    sys.exit(main())
