#!/usr/bin/env python3
"""Smoke test for the monoid_growth_py extension module.

Build the extension first:

    cargo build --release -p monoid-growth-py

then run:

    python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    names = ("libmonoid_growth_py.so", "monoid_growth_py.so", "libmonoid_growth_py.dylib")
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in names
    ]
    lib = next((c for c in candidates if c.exists()), None)
    if lib is None:
        sys.exit("extension not found; run: cargo build --release -p monoid-growth-py")
    staging = Path(tempfile.mkdtemp(prefix="monoid_growth_py_"))
    shutil.copy2(lib, staging / "monoid_growth_py.so")
    sys.path.insert(0, str(staging))
    import monoid_growth_py

    return monoid_growth_py


def main():
    mg = load_module()

    bii = mg.Presentation.preset("bii")
    assert bii.alphabet() == ["a", "b", "c"]
    assert bii.relations()[0] == ("cbb", "bba")

    assert mg.growth(bii, 8) == [1, 3, 7, 14, 25, 41, 63, 92, 129]
    assert mg.skew(bii, 8) == [1, -3, 2, 1, 0, -1, -1, 0, 1]

    report = mg.verify_inversion(bii, 8)
    assert report["verdict"] == "pass", report
    assert report["product"] == [1, 0, 0, 0, 0, 0, 0, 0, 0]

    assert mg.canonical(bii, "cbb") == "bba"
    assert mg.equivalence_class(bii, "ab") == ["ab", "bc"]
    assert mg.are_equivalent(bii, "ac", "ca")
    assert not mg.are_equivalent(bii, "ab", "ba")
    assert mg.left_divides(bii, "b", "cbb")
    assert not mg.left_divides(bii, "a", "b")

    multiples = mg.mcm(bii, ["b", "c"], 8)
    assert len(multiples) == 6
    assert multiples[0] == ("bba", 3)
    assert [deg for _, deg in multiples] == [3, 4, 5, 6, 7, 8]

    pairs = mg.right_complements(bii, "a", "b", 3)
    assert ("b", "c") in pairs
    assert all(mg.are_equivalent(bii, "a" + x, "b" + y) for x, y in pairs)

    assert mg.observed_height(bii, 8) == 3
    assert mg.observed_height(mg.Presentation.preset("gn:3"), 7) == 2

    towers = mg.towers_within(mg.Presentation.preset("abel:2"), 4)
    assert [t["height"] for t in towers] == [0, 1, 2, 3]
    assert towers[1]["stages"] == [["a", "b"]]
    assert towers[1]["top_mcm"] == ["aa", "ab"]

    free2 = mg.Presentation.preset("free:2")
    assert mg.skew(free2, 5) == [1, -2, 0, 0, 0, 0]
    assert mg.growth(free2, 5) == [1, 2, 4, 8, 16, 32]

    abel = mg.Presentation.parse("alphabet a b\nrel a a = b b\nrel a b = b a\n")
    assert mg.growth(abel, 3) == [1, 2, 2, 2]
    assert mg.graded_elements(abel, 2) == [["1"], ["a", "b"], ["aa", "ab"]]

    clean = mg.cancellative_up_to(bii, 7)
    assert clean["verdict"] == "no-counterexample", clean

    control = mg.Presentation.parse("alphabet a b\nrel a b = b b\n")
    broken = mg.cancellative_up_to(control, 3)
    assert broken["verdict"] == "counterexample"
    assert broken["witness"]["side"] == "right"
    assert (broken["witness"]["x"], broken["witness"]["y"]) == ("a", "b")

    cl = mg.condition_l(bii, 4)
    assert cl["verdict"] == "violated"
    assert any(w["subset"] == ["b", "c"] for w in cl["witnesses"])

    cl_free = mg.condition_l(mg.Presentation.preset("free:3"), 5)
    assert cl_free["verdict"] == "no-violation-found"

    rev = bii.reversed()
    assert rev.relations()[0] == ("bbc", "abb")
    assert mg.Presentation.parse(bii.serialize()).relations() == bii.relations()

    try:
        mg.Presentation.preset("nosuch")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown preset should raise ValueError")

    try:
        mg.growth(bii, 99)
    except ValueError:
        pass
    else:
        raise AssertionError("degree above the cap should raise ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
