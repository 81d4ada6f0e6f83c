#!/usr/bin/env python3
"""Write knot records for the bundled corpus from a KnotInfo CSV export.

usage: corpus_from_knotinfo.py knotinfo_data_complete.csv OUT_DIR
       corpus_from_knotinfo.py --links linkinfo_data_complete.csv OUT_DIR

Writes every knot with at most 9 crossings plus a few 12-crossing knots, or
with --links every link with at most 7 crossings. Links are stored as braid
words, which fix the orientation of each component. Hand-written records
(Hopf links, matrix-only examples) live next to these and are not touched.
"""
import csv
import re
import sys
from pathlib import Path

EXTRA = {"12a_628", "12a_665", "12a_828", "12a_1044", "12n_553"}
FIELDS = ["determinant", "signature", "unknotting_number", "jones_polynomial"]


def matrix_block(text):
    rows = re.findall(r"\[([^\[\]]*)\]", text)
    rows = [[int(x) for x in r.split(",")] for r in rows]
    lines = [str(len(rows))] + [" ".join(str(x) for x in r) for r in rows]
    return "\n".join(lines)


def jones_in_t(text):
    """Rewrites a polynomial in x = t^(1/2) as a sum of t^(k/2) terms."""
    terms = {}
    body = text.replace(" ", "")
    for sign, coef, div, power in re.findall(r"([+-]?)(\d*)(\*|/)?(x(?:\^\(?-?\d+\)?)?)?", body):
        if not (coef or power):
            continue
        c = int(coef or "1") * (-1 if sign == "-" else 1)
        e = 0
        if power:
            m = re.search(r"-?\d+", power)
            e = int(m.group()) if m else 1
            if div == "/":
                e = -e
        terms[e] = terms.get(e, 0) + c
    out = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        if c == 0:
            continue
        mono = "" if e == 0 else f"t^({e}/2)" if e % 2 else f"t^({e // 2})"
        mag = str(abs(c)) if (abs(c) != 1 or not mono) else ""
        body = mag + ("*" if mag and mono else "") + mono
        out.append(("-" if c < 0 else "+") + body)
    s = "".join(out)
    return s[1:] if s.startswith("+") else s


def links(src, out):
    rows = csv.reader(open(src, newline=""), delimiter="|")
    header = next(rows)
    next(rows)
    col = {k: header.index(k) for k in ["name", "crossing_number", "braid_notation",
                                        "jones_polynomial", "determinant", "signature"]}
    count = 0
    for row in rows:
        name = row[col["name"]]
        if int(row[col["crossing_number"]]) > 7:
            continue
        nums = [int(x) for x in re.findall(r"-?\d+", row[col["braid_notation"]])]
        strands, word = nums[0], nums[1:]
        slug = re.sub(r"[{},]", "_", name).strip("_").replace("__", "_")
        lines = [
            f"name: {name}",
            f"braid: {' '.join(map(str, word))}",
            f"strands: {strands}",
            f"jones: {jones_in_t(row[col['jones_polynomial']])}",
            f"determinant: {row[col['determinant']]}",
            f"signature: {row[col['signature']]}",
        ]
        (out / f"{slug}.link").write_text("\n".join(lines) + "\n")
        count += 1
    print(f"wrote {count} link records", file=sys.stderr)


def main():
    csv.field_size_limit(1 << 30)
    if sys.argv[1] == "--links":
        links(sys.argv[2], Path(sys.argv[3]))
        return
    src, out = sys.argv[1], Path(sys.argv[2])
    rows = csv.reader(open(src, newline=""), delimiter="|")
    header = next(rows)
    next(rows)
    col = {k: header.index(k) for k in ["name", "crossing_number", "pd_notation",
                                        "braid_notation", "seifert_matrix"] + FIELDS}
    count = 0
    for row in rows:
        name = row[col["name"]]
        n = int(row[col["crossing_number"]])
        if n == 0 or (n > 9 and name not in EXTRA):
            continue
        braid = re.findall(r"-?\d+", row[col["braid_notation"]])
        lines = [
            f"name: {name}",
            "components: 1",
            f"pd: {row[col['pd_notation']]}",
            f"braid: {' '.join(braid)}",
        ]
        for k in FIELDS:
            lines.append(f"{k.replace('_polynomial', '').replace('_number', '')}: {row[col[k]]}")
        lines.append("seifert:")
        lines.append(matrix_block(row[col["seifert_matrix"]]))
        (out / f"{name}.link").write_text("\n".join(lines) + "\n")
        count += 1
    print(f"wrote {count} records", file=sys.stderr)


if __name__ == "__main__":
    main()
