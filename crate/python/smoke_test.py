#!/usr/bin/env python3
"""End-to-end smoke test for the loopsmith_py extension module.

Builds the extension with `cargo build -p loopsmith-py --release` first if the
cdylib is missing, stages it under a temp directory with the import name Python
expects, then exercises the full binding surface: plane-loop construction,
structural analysis, the Bol associate, isomorphism testing, classification,
search, and the residue-count closed form.
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def stage_module() -> None:
    """Copy the built cdylib somewhere importable as `loopsmith_py`."""
    candidates = [
        REPO / "target" / "release" / "libloopsmith_py.so",
        REPO / "target" / "debug" / "libloopsmith_py.so",
        REPO / "target" / "release" / "libloopsmith_py.dylib",
        REPO / "target" / "debug" / "libloopsmith_py.dylib",
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        subprocess.run(
            ["cargo", "build", "-p", "loopsmith-py", "--release"],
            cwd=REPO,
            check=True,
        )
        built = candidates[0]
    stage = Path(tempfile.mkdtemp(prefix="loopsmith_py_"))
    shutil.copy2(built, stage / "loopsmith_py.so")
    sys.path.insert(0, str(stage))


def check(cond: bool, what: str) -> None:
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"  ok: {what}")


def main() -> None:
    stage_module()
    import loopsmith_py as lp

    print("[1/7] plane loop construction and structure")
    q = lp.qa_loop(3, [0, 1, 2, 0])
    check(q.order() == 27, "order-27 loop from a 2x2 matrix over GF(3)")
    check(q.is_automorphic(), "loop is automorphic")
    check(not q.is_associative(), "loop is nonassociative")
    check(q.is_power_associative(), "loop is power-associative")
    check(q.exponent() == 3, "exponent 3")
    check(q.center() == [0], "trivial center")
    check(len(q.middle_nucleus()) == 9, "middle nucleus has 9 elements")
    check(q.left_nucleus() == [0] and q.right_nucleus() == [0], "left/right nuclei trivial")
    check(q.nilpotency_class() is None, "not centrally nilpotent")
    check(q.mul(1, 2) == q.table()[1][2], "table agrees with mul")
    e = q.mul(5, q.inverse(5))
    check(e == 0, "x * x^-1 is the identity")
    check(q.ldiv(5, q.mul(5, 7)) == 7, "left division inverts left multiplication")

    print("[2/7] structure report JSON")
    report = json.loads(q.structure_report_json(mlt=True))
    check(report["order"] == 27, "report order")
    check(report["automorphic"] is True, "report automorphic flag")
    check(report["nilpotency_class"] == "not_nilpotent", "report nilpotency class")
    check(report["mlt_order"] == "1944", "multiplication group order 1944 = 2^3 * 3^5")

    print("[3/7] Bol associate of a commutative automorphic loop of odd order")
    z9 = lp.cyclic_group(9)
    b = z9.bruck_associate()
    check(b.order() == 9, "associate has the same order")
    check(b.is_commutative(), "associate commutative")
    z9.verify_base_identities()
    check(z9.centers_theorem_holds(), "central series of loop and associate agree")

    print("[4/7] isomorphism testing")
    z4 = lp.cyclic_group(4)
    v4 = lp.direct_product(lp.cyclic_group(2), lp.cyclic_group(2))
    check(lp.are_isomorphic(z4, v4) is None, "Z4 and Z2xZ2 are not isomorphic")
    w = lp.are_isomorphic(lp.cyclic_group(6), lp.direct_product(lp.cyclic_group(2), lp.cyclic_group(3)))
    check(w is not None and sorted(w) == list(range(6)), "Z6 = Z2xZ3 with a verified witness")
    q2 = lp.qa_loop(3, [0, 2, 1, 0])
    check(lp.are_isomorphic(q, q2) is not None, "scaled plane matrices give isomorphic loops")

    print("[5/7] classification at p = 3")
    cls = lp.classify_qa(3)
    check(cls.p == 3 and cls.confidence == "verified", "classification is fully verified")
    check(len(cls.classes()) == 2, "two isomorphism classes at p = 3")
    check(sorted(c.plane_type for c in cls.classes()) == [1, 3], "class plane types 1 and 3")
    check(sum(c.member_count for c in cls.classes()) == cls.anisotropic_matrix_count,
          "every anisotropic matrix lands in a class")
    rep = cls.classes()[0].representative_loop()
    check(rep.order() == 27, "class representative is an order-27 loop")

    print("[6/7] constrained search")
    res = lp.search_loops(6, nonassociative=True, automorphic=True,
                          limit=5, budget_seconds=60, seed=7)
    check(res.exhausted, "order-6 search ran to exhaustion")
    check(len(res.loops()) == 1, "exactly one nonassociative automorphic loop of order 6")
    found = res.loops()[0]
    check(not found.is_commutative() and found.center() == [0],
          "it is noncommutative with trivial center")

    print("[7/7] residue-count closed form")
    for p in (5, 13, 29):
        for a in range(1, p):
            if lp.perron_counts(p, a) != lp.perron_closed_form(p, a):
                raise SystemExit(f"FAIL: residue counts diverge at p={p}, a={a}")
    check(lp.type_witness(2, 1) is None, "no type-1 matrix at p = 2")
    check(lp.type_witness(5, 3) is not None, "type-3 matrix exists at p = 5")
    print("  ok: residue counts match the closed form for p in {5, 13, 29}")

    print("\nsmoke test passed")


if __name__ == "__main__":
    main()
