#!/usr/bin/env python3
"""Smoke test for the _rigidport Python extension.

Builds the cdylib with cargo, loads it, and exercises the vector space
algebra and a netlist analysis end to end.
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    subprocess.run(
        ["cargo", "build", "-p", "rigidport-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "debug" / "lib_rigidport.so"
    if not built.exists():  # macOS
        built = ROOT / "target" / "debug" / "lib_rigidport.dylib"
    stage = Path(tempfile.mkdtemp(prefix="rigidport_py_"))
    shutil.copy(built, stage / "_rigidport.so")
    return stage


def main() -> None:
    stage = build_extension()
    sys.path.insert(0, str(stage))
    import _rigidport as rp

    # Exact linear algebra on labeled columns.
    v = rp.VectorSpace(["a", "b"], [["1", "1"]])
    w = v.orthocomplement()
    assert w.basis() == [["1", "-1"]], w.basis()
    assert w.orthocomplement() == v
    assert v.sum(w).rank() == 2
    assert v.intersect(w).rank() == 0

    v_sp = rp.VectorSpace(["s", "p"], [["1", "2"]])
    v_pq = rp.VectorSpace(["p", "q"], [["1", "-1"]])
    composed = v_sp.matched(v_pq)
    assert composed.columns() == ["q", "s"]
    assert composed.rank() == 1

    # A Thevenin one-port end to end.
    thevenin = """
edge e 1 2
edge p 1 3
edge r 2 3
vsource e 6
resistor r 3
port p
"""
    n = rp.Multiport(thevenin)
    assert n.ports() == ["p"]
    assert n.necessity() and n.sufficiency()

    rigidity = json.loads(n.rigidity())
    assert rigidity["verdict"] == "rigid", rigidity

    hybrid = json.loads(n.hybrid())
    assert hybrid["r22"] == [["-3"]], hybrid
    assert hybrid["s2"] == ["6"], hybrid

    solution = json.loads(n.solve({"p.i": "0"}))
    assert solution["status"] == "unique"
    assert solution["values"]["p'"] == "6", solution

    behaviour = json.loads(n.behaviour())
    assert behaviour["void"] is False and behaviour["rank"] == 1

    union = json.loads(n.matroid_union())
    assert union["union_rank"] >= 2

    print("smoke test passed")


if __name__ == "__main__":
    main()
