"""Smoke test for the spbcast_py extension.

Build first:  cargo build --release -p spbcast-py
then run:     python3 python/smoke_test.py
(or install with maturin: `maturin develop -m crates/py/Cargo.toml`).
"""

import importlib
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("spbcast_py")
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libspbcast_py.so"
        if lib.exists():
            tmp = pathlib.Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "spbcast_py.so")
            sys.path.insert(0, str(tmp))
            return importlib.import_module("spbcast_py")
    sys.exit("spbcast_py not built: run `cargo build --release -p spbcast-py`")


def main():
    sb = load()

    mb = sb.Graph.family("mb", 3)
    assert mb.n == 8 and mb.roles["s"] == 0
    assert mb.is_sp() and mb.is_planar() and mb.is_biconnected()
    rounds, witness = mb.exact_broadcast_time(0)
    assert rounds == 4 and mb.validate(witness) == 4
    assert mb.broadcast_time() == (4, 0)

    sched = mb.schedule("mb", 1)
    assert mb.validate(sched) <= 4
    back = sb.Schedule.from_csv(sched.to_csv())
    assert back.rounds == sched.rounds and back.origin == 1

    ab = sb.Graph.family("ab", 2)
    assert not ab.is_sp()
    [report] = map(json.loads, ab.verify("sp"))
    assert report["verdict"] == "fail" and report["witness"]["kind"] == "kernel"

    g = sb.Graph.from_json(mb.to_json())
    assert g.edges == mb.edges

    path = sb.Graph(4, [(0, 1), (1, 2), (2, 3)], {"s": 0, "t": 3})
    try:
        path.validate(sb.Schedule.from_csv("round,caller,callee\n1,0,2\n"))
    except ValueError as e:
        assert "edge" in str(e)
    else:
        raise AssertionError("non-edge call accepted")

    for line in sb.verify_family("eb", 2, 5, "scheme,exact"):
        assert json.loads(line)["verdict"] == "pass", line

    try:
        sb.Graph.family("zz", 3)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown family accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
