"""Smoke test for the tritree_py extension.

Build first:
    cargo build --release -p tritree-py
    cp target/release/libtritree_py.so python/tritree_py.so
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import tritree_py as tt


def main():
    e = tt.encode("19/54", "14/54")
    assert e["representation"] == "[2,0,1,1];[2,2]", e
    assert e["word"] == "LLIILIILR", e
    assert e["anchor"] == "root"
    assert e["rank"] == "9"
    assert e["matrix"] == "[[23,31,11],[8,11,4],[6,8,3]]"

    assert tt.decode("LLIILIILR") == "19/54,14/54"
    assert tt.decode_repr("[2,0,1,1];[2,2]") == "19/54,14/54"

    assert [len(tt.tree_level(n)) for n in (0, 1, 2)] == [3, 7, 16]

    digits, rem, kind = tt.triangle_sequence("19/54,14/54")
    assert digits == ["2", "0", "1", "1"] and kind == "interior", (digits, rem, kind)

    rows = tt.approximants("[1,1];[4,1]*", 9)
    assert rows[-1][1] == "23/46,19/46", rows[-1]

    try:
        tt.encode("1/2", "3/2")
    except ValueError as err:
        assert "OutOfTriangle" in str(err)
    else:
        raise AssertionError("expected ValueError")

    print("smoke test ok")


if __name__ == "__main__":
    main()
