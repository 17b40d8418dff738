"""Regenerate the bundled knot table from the KnotInfo database.

Needs ``pip install database_knotinfo`` (build-time only).  Writes

* ``src/rimcalc/data/knot_table.csv``: braid, PD and DT rows for the unknot,
  every prime knot up to 10 crossings, and two 11-crossing knots with trivial
  Alexander polynomial;
* ``tests/data/knotinfo_alexander.json``: KnotInfo's own Alexander
  polynomials, kept as an external reference for the test suite.
"""
import csv
import json
import re
from pathlib import Path

from database_knotinfo import link_list

ROOT = Path(__file__).resolve().parents[1]
EXTRAS = ("11n_34", "11n_42")  # Conway and Kinoshita-Terasaka


def braid_text(notation):
    first = re.match(r"\[*([^\]]*)", notation).group(1)
    letters = [int(x) for x in re.findall(r"-?\d+", first)]
    strands = max(abs(g) for g in letters) + 1
    return f"{strands}: " + " ".join(map(str, letters))


def pd_text(notation):
    return " ".join(f"X({x})" for x in re.findall(r"\[(\d+,\d+,\d+,\d+)\]", notation))


def dt_text(notation):
    return " ".join(re.findall(r"-?\d+", notation))


def alexander_terms(text):
    terms = {}
    for m in re.finditer(r"([+-]?)(\d*)\*?(t(?:\^(\d+))?)?", text.replace(" ", "")):
        if not m.group(0):
            continue
        c = int(m.group(2)) if m.group(2) else 1
        e = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        terms[e] = terms.get(e, 0) + (-c if m.group(1) == "-" else c)
    return terms


def main():
    records = [r for r in link_list() if r["name"] not in ("name", "Name")]
    chosen = []
    for r in records:
        n = r["crossing_number"]
        if (n and 3 <= int(n) <= 10) or r["name"] in EXTRAS:
            chosen.append(r)
    rows = [("0_1", "braid", "2: 1"), ("0_1", "pd", ""), ("0_1", "dt", "")]
    reference = {"0_1": {"0": 1}}
    for r in chosen:
        rows.append((r["name"], "braid", braid_text(r["braid_notation"])))
        rows.append((r["name"], "pd", pd_text(r["pd_notation"])))
        rows.append((r["name"], "dt", dt_text(r["dt_notation"])))
        terms = alexander_terms(r["alexander_polynomial"])
        lo, hi = min(terms), max(terms)
        shift = -(lo + hi) // 2
        sign = 1 if sum(terms.values()) == 1 else -1
        reference[r["name"]] = {str(e + shift): sign * c for e, c in sorted(terms.items())}
    with open(ROOT / "src/rimcalc/data/knot_table.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["name", "format", "code"])
        w.writerows(rows)
    with open(ROOT / "tests/data/knotinfo_alexander.json", "w") as fh:
        json.dump(reference, fh, indent=0, sort_keys=True)
        fh.write("\n")
    print(f"{len(reference)} knots, {len(rows)} rows")


if __name__ == "__main__":
    main()
