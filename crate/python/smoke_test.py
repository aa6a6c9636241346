"""Smoke test for the Python bindings.

    pip install --no-build-isolation -e crates/py
    python3 python/smoke_test.py
"""
from fractions import Fraction

import secant_py as s


def main():
    g = s.GroupDescriptor("A2xC3[1,0|1,0,0]")
    assert g.is_tame(), g.classify()
    assert g.max_rank()["max_rank"] == 3

    wild = s.GroupDescriptor("C7[0,0,0,0,1,0,0]")
    cert = wild.wild_certificate()
    assert cert is not None and cert["chain"], cert
    print(f"{wild}: wild via {cert['base_case']}")

    table = s.tame_table(8)
    with open("crates/core/tests/fixtures/tame_table_rank8.txt") as f:
        fixture = set(f.read().split())
    assert {r["descriptor"] for r in table} == fixture
    print(f"table: {len(table)} tame descriptors")

    psi = s.wedge3_from_terms([(1, 1, 2, 4), (1, 1, 5, 3), (1, 6, 2, 3)])
    assert s.wedge3_rank(psi) == 3

    x = s.AlbertElement([1, Fraction(1, 2), 0] + [0] * 24)
    d, a, b = x.rank2_split()
    assert x.rank() == 2 and a + a == x and d != 0

    grading = [dim for _, dim in s.grading("E8", 1)]
    assert grading == [1, 56, 134, 56, 1], grading

    t = s.RankTable("gr:2,5", 2)
    assert t.max_rank() == 2 and t.check()["below_bfs"] == 0
    print("histogram gr:2,5 over F2:", t.histogram())
    print("ok")


if __name__ == "__main__":
    main()
