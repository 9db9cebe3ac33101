#!/usr/bin/env python3
"""Assembles data/fixtures.jsonl from the curve table below.

One entry per row of the isogeny-torsion taxonomy tables plus one per row of
the CM table. Sources: "paper-table-*" entries use equations printed in the
paper; "lmfdb-lookup" entries carry coefficients the implementer supplied for
the labeled class (reconstructed offline and cross-checked against the class's
conductor support and classification -- see the repository tests).
"""

import json
from fractions import Fraction

# label, a-invariants, shape, config, source
TABLE_ROWS = [
    ("37.a", ["0", "0", "1", "-1", "0"], "L1", ["[1]"], "lmfdb-lookup"),
    ("46.a", ["1", "-1", "0", "-10", "-12"], "L2(2)", ["[2]", "[2]"], "lmfdb-lookup"),
    ("196.a", "PENDING-196a", "L2(3)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("44.a", ["0", "1", "0", "3", "-1"], "L2(3)", ["[3]", "[1]"], "lmfdb-lookup"),
    ("75.c", "PENDING-75c", "L2(5)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("38.b", ["1", "1", "1", "0", "1"], "L2(5)", ["[5]", "[1]"], "lmfdb-lookup"),
    ("208.d", "PENDING-208d", "L2(7)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("26.b", ["1", "-1", "1", "-3", "3"], "L2(7)", ["[7]", "[1]"], "lmfdb-lookup"),
    ("121.a", ["1", "1", "1", "-30", "-76"], "L2(11)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("147.b", ["0", "1", "1", "-114", "473"], "L2(13)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("14450.b", "PENDING-14450b", "L2(17)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("361.a", ["0", "0", "1", "-38", "90"], "L2(19)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("1225.b", "PENDING-1225b", "L2(37)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("1849.b", ["0", "0", "1", "-860", "9707"], "L2(43)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("4489.b", ["0", "0", "1", "-7370", "243528"], "L2(67)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("26569.b", "PENDING-26569b", "L2(163)", ["[1]", "[1]"], "lmfdb-lookup"),
    ("175.b", "PENDING-175b", "L3(9)", ["[1]", "[1]", "[1]"], "lmfdb-lookup"),
    ("19.a", ["0", "1", "1", "-9", "-15"], "L3(9)", ["[3]", "[3]", "[1]"], "lmfdb-lookup"),
    ("54.b", ["3", "6", "6", "0", "0"], "L3(9)", ["[9]", "[3]", "[1]"], "lmfdb-lookup"),
    ("99.d", "PENDING-99d", "L3(25)", ["[1]", "[1]", "[1]"], "lmfdb-lookup"),
    ("11.a", ["0", "-1", "1", "0", "0"], "L3(25)", ["[5]", "[5]", "[1]"], "lmfdb-lookup"),
    ("432.e", ["0", "0", "0", "0", "128"], "L4", ["[1]", "[1]", "[1]", "[1]"], "paper-table-cm"),
    ("27.a", ["0", "0", "0", "0", "16"], "L4", ["[3]", "[3]", "[3]", "[1]"], "paper-table-cm"),
    ("120.a", "PENDING-120a", "T4", ["[2,2]", "[2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("33.a", "PENDING-33a", "T4", ["[2,2]", "[4]", "[2]", "[2]"], "lmfdb-lookup"),
    ("17.a", ["1", "-1", "1", "-6", "-4"], "T4", ["[2,2]", "[4]", "[4]", "[2]"], "paper-example"),
    ("24.a", ["0", "-1", "0", "-4", "4"], "T6", ["[2,4]", "[4]", "[4]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("21.a", ["1", "-9", "-27", "0", "0"], "T6", ["[2,4]", "[8]", "[4]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("126.a", "PENDING-126a", "T6", ["[2,2]", "[2]", "[2]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("63.a", "PENDING-63a", "T6", ["[2,2]", "[4]", "[2]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("210.e", ["-7", "-90", "-270", "0", "0"], "T8", ["[2,8]", "[8]", "[8]", "[2,4]", "[4]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("195.a", "PENDING-195a", "T8", ["[2,4]", "[4]", "[4]", "[2,4]", "[4]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("15.a", "PENDING-15a", "T8", ["[2,4]", "[4]", "[4]", "[2,4]", "[8]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("1230.f", "PENDING-1230f", "T8", ["[2,4]", "[8]", "[4]", "[2,4]", "[4]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("45.a", "PENDING-45a", "T8", ["[2,2]", "[2]", "[2]", "[2,2]", "[2]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("75.b", "PENDING-75b", "T8", ["[2,2]", "[4]", "[2]", "[2,2]", "[2]", "[2,2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("80.b", "PENDING-80b", "R4(6)", ["[2]", "[2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("20.a", ["0", "1", "0", "4", "4"], "R4(6)", ["[6]", "[6]", "[2]", "[2]"], "lmfdb-lookup"),
    ("150.a", "PENDING-150a", "R4(10)", ["[2]", "[2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("66.c", ["5", "-6", "-18", "0", "0"], "R4(10)", ["[10]", "[10]", "[2]", "[2]"], "lmfdb-lookup"),
    ("49.a", ["0", "0", "0", "-35", "-98"], "R4(14)", ["[2]", "[2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("400.d", ["0", "0", "0", "-435", "-4210"], "R4(15)", ["[1]", "[1]", "[1]", "[1]"], "lmfdb-lookup"),
    ("50.a", ["-5", "0", "25", "0", "0"], "R4(15)", ["[3]", "[3]", "[1]", "[1]"], "lmfdb-lookup"),
    ("50.b", ["1", "-2", "-4", "0", "0"], "R4(15)", ["[5]", "[5]", "[1]", "[1]"], "lmfdb-lookup"),
    ("1296.f", "PENDING-1296f", "R4(21)", ["[1]", "[1]", "[1]", "[1]"], "lmfdb-lookup"),
    ("162.b", "PENDING-162b", "R4(21)", ["[3]", "[3]", "[1]", "[1]"], "lmfdb-lookup"),
    ("98.a", "PENDING-98a", "R6", ["[2]", "[2]", "[2]", "[2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("14.a", ["1", "0", "1", "4", "-6"], "R6", ["[6]", "[6]", "[6]", "[6]", "[2]", "[2]"], "lmfdb-lookup"),
    ("240.b", "PENDING-240b", "S", ["[2,2]", "[2,2]", "[2]", "[2]", "[2]", "[2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("150.b", "PENDING-150b", "S", ["[2,2]", "[2,2]", "[4]", "[4]", "[2]", "[2]", "[2]", "[2]"], "lmfdb-lookup"),
    ("30.a", ["1", "0", "1", "1", "2"], "S", ["[2,6]", "[2,2]", "[6]", "[2]", "[6]", "[2]", "[6]", "[2]"], "lmfdb-lookup"),
    ("90.c", "PENDING-90c", "S", ["[2,6]", "[2,2]", "[12]", "[4]", "[6]", "[2]", "[6]", "[2]"], "lmfdb-lookup"),
]

CM_ROWS = [
    ("36.a4", ["0", "0", "0", "0", "1"], "R4(6)", ["[6]", "[6]", "[2]", "[2]"]),
    ("144.a3", ["0", "0", "0", "0", "8"], "R4(6)", ["[2]", "[2]", "[2]", "[2]"]),
    ("27.a3", ["0", "0", "0", "0", "16"], "L4", ["[3]", "[3]", "[3]", "[1]"]),
    ("432.e3", ["0", "0", "0", "0", "128"], "L4", ["[1]", "[1]", "[1]", "[1]"]),
    ("108.a2", ["0", "0", "0", "0", "4"], "L2(3)", ["[3]", "[1]"]),
    ("225.c1", ["0", "0", "0", "0", "5"], "L2(3)", ["[1]", "[1]"]),
    ("36.a1", ["0", "0", "0", "-15", "22"], "R4(6)", ["[6]", "[6]", "[2]", "[2]"]),
    ("144.a1", ["0", "0", "0", "-60", "176"], "R4(6)", ["[2]", "[2]", "[2]", "[2]"]),
    ("27.a2", ["0", "0", "0", "-38880", "2950992"], "L4", ["[3]", "[3]", "[3]", "[1]"]),
    ("432.e1", ["0", "0", "0", "-155520", "23607936"], "L4", ["[1]", "[1]", "[1]", "[1]"]),
    ("32.a3", ["0", "0", "0", "-1", "0"], "T4", ["[2,2]", "[4]", "[4]", "[2]"]),
    ("64.a3", ["0", "0", "0", "1", "0"], "T4", ["[2,2]", "[4]", "[2]", "[2]"]),
    ("288.d3", ["0", "0", "0", "9", "0"], "T4", ["[2,2]", "[2]", "[2]", "[2]"]),
    ("256.b1", ["0", "0", "0", "2", "0"], "L2(2)", ["[2]", "[2]"]),
    ("32.a2", ["0", "0", "0", "-11", "14"], "T4", ["[2,2]", "[4]", "[4]", "[2]"]),
    ("64.a1", ["0", "0", "0", "-44", "112"], "T4", ["[2,2]", "[4]", "[2]", "[2]"]),
    ("288.d1", ["0", "0", "0", "-99", "378"], "T4", ["[2,2]", "[2]", "[2]", "[2]"]),
    ("49.a2", ["0", "0", "0", "-35", "-98"], "R4(14)", ["[2]", "[2]", "[2]", "[2]"]),
    ("49.a1", "PENDING-49a1", "R4(14)", ["[2]", "[2]", "[2]", "[2]"]),
    ("256.a1", ["0", "4", "0", "2", "0"], "L2(2)", ["[2]", "[2]"]),
    ("121.b1", ["0", "-1", "1", "-7", "10"], "L2(11)", ["[1]", "[1]"]),
    ("361.a1", ["0", "0", "1", "-38", "90"], "L2(19)", ["[1]", "[1]"]),
    ("1849.b1", ["0", "0", "1", "-860", "9707"], "L2(43)", ["[1]", "[1]"]),
    ("4489.b1", ["0", "0", "1", "-7370", "243528"], "L2(67)", ["[1]", "[1]"]),
    ("26569.a1", ["0", "0", "1", "-2174420", "1234136692"], "L2(163)", ["[1]", "[1]"]),
]


def main():
    entries = []
    pending = []
    for label, a, shape, config, source in TABLE_ROWS:
        if isinstance(a, str):
            pending.append((label, a))
            continue
        entries.append({"label": label, "a_invariants": a, "expected_shape": shape,
                        "expected_config": config, "source": source})
    for label, a, shape, config in CM_ROWS:
        if isinstance(a, str):
            pending.append((label, a))
            continue
        entries.append({"label": label, "a_invariants": a, "expected_shape": shape,
                        "expected_config": config, "source": "paper-table-cm"})
    with open("data/fixtures.jsonl", "w") as fh:
        for e in entries:
            fh.write(json.dumps(e) + "\n")
    print(f"wrote {len(entries)} entries; {len(pending)} pending: "
          f"{[p[0] for p in pending]}")


if __name__ == "__main__":
    main()
