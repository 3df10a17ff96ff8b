"""Smoke tests for the python module: the main operations round-trip."""

import json
import math
import sys

import conecert


def check(cond, what):
    if not cond:
        print("FAIL:", what)
        sys.exit(1)


def main():
    # exact dual basis
    h = conecert.dual_basis("A2")
    check(h[0] == ["2/3", "-1/3", "-1/3"], "A2 H1")
    check(h[1] == ["1/3", "1/3", "-2/3"], "A2 H2")

    roots = conecert.positive_roots("BC2")
    check(len(roots) == 6, "BC2 root count")
    check({r["cls"] for r in roots} == {"m1", "m2", "m3"}, "BC2 classes")

    orbit, sphere = conecert.orbit_dimension("C2", "a1", {"m1": 4, "m2": 3})
    check(orbit == "11" and sphere == "15", "C2 dimensions")

    # symbolic certification
    res = conecert.certify("A2", "a1", mult={"m": 2}, mode="symbolic")
    check(res["verdict"] == "CERTIFIED", "A2 m=2 verdict")
    check(res["j2_leq_1"], "A2 J2 record")
    report = json.loads(res["report_json"])
    check(report["schema"] == 1, "report schema")
    check(len(report["certificates"]) == 2, "record count")

    # numeric scan stays below one for a certified instance
    res = conecert.certify("G2", "a1", mult={"m": 2}, mode="numeric", grid=200)
    check(res["verdict"] == "NUMERICALLY_SUPPORTED", "G2 numeric verdict")
    scan = json.loads(res["report_json"])["numeric"]
    check(scan["max_j"] <= 1 + 1e-9, "G2 numeric max")

    # minimal orbit base point
    bp = conecert.minimal_orbit("A3", "a1,a3")
    check(bp["exact"], "A3 point is exact")
    check(abs(bp["ambient"][0] - 1 / math.sqrt(2)) < 1e-12, "A3 ambient[0]")
    check(abs(bp["ambient"][3] + 1 / math.sqrt(2)) < 1e-12, "A3 ambient[3]")

    # product profile and composition
    prof = conecert.profile_check(3, 3)
    check(prof["max_is_one_at_diagonal"], "profile(3,3)")
    check(conecert.profile_check(1, 5)["max_d"] > 1 + 1e-9, "profile(1,5)")

    a2 = conecert.certify("A2", "a1", mult={"m": 2}, mode="symbolic")
    prod = conecert.compose(a2["report_json"], a2["report_json"], grid=24)
    check(prod["verdict"] == "CERTIFIED", "product verdict")
    check(prod["k1"] == 4 and prod["k2"] == 4, "product dims")
    check(not prod["numeric"]["failed"], "product numeric")

    # reference table: 32 rows, exactly one flagged dimension discrepancy
    table = json.loads(conecert.table_json())
    check(len(table["rows"]) == 32, "table rows")
    flagged = [r for r in table["rows"] if r["dims"] == "DISCREPANCY"]
    check(len(flagged) == 1 and flagged[0]["type"] == "BC2", "BC2 discrepancy flag")
    check(all(r["verdict"] == "ok" for r in table["rows"]), "verdict marks")

    # pipeline errors surface as exceptions
    try:
        conecert.certify("F4", "a1")
        check(False, "F4 must be rejected")
    except conecert.ConecertError:
        pass

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
