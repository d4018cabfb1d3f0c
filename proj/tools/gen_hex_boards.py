#!/usr/bin/env python3
"""Regenerates the #board sections of the hexagonal games in games/.

Hex uses a 9x9 rhombus in axial coordinates; Yavalath a hexagon of side 5.
Directions: E (q+1, r), W (q-1, r), NE (q+1, r-1), SW (q-1, r+1),
NW (q, r-1), SE (q, r+1). Vertices are named h{q}_{r}, listed row by row.
"""
import argparse
import pathlib
import re

DIRECTIONS = [("NW", 0, -1), ("NE", 1, -1), ("E", 1, 0), ("SE", 0, 1), ("SW", -1, 1), ("W", -1, 0)]


def name(q, r):
    return f"h{q}_{r}"


def board_section(cells, piece="e"):
    lines = []
    cell_set = set(cells)
    for q, r in cells:
        edges = [f"{d}: {name(q + dq, r + dr)}" for d, dq, dr in DIRECTIONS if (q + dq, r + dr) in cell_set]
        lines.append(f"    {name(q, r)}[{piece}]{{{', '.join(edges)}}}")
    return "#board =\n" + "\n".join(lines) + "\n"


def rhombus(size):
    return [(q, r) for r in range(size) for q in range(size)]


def hexagon(side):
    n = side - 1
    # Shifted by n so that names stay non-negative.
    return [(q + n, r + n) for r in range(-n, n + 1) for q in range(-n, n + 1) if abs(q + r) <= n]


def replace_board(path, section):
    text = path.read_text()
    new, count = re.subn(r"#board =.*?(?=\n#)", section.rstrip("\n"), text, count=1, flags=re.S)
    if count != 1:
        raise SystemExit(f"{path}: no #board section found")
    path.write_text(new)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--games", default=pathlib.Path(__file__).resolve().parent.parent / "games", type=pathlib.Path)
    args = parser.parse_args()
    replace_board(args.games / "hex.rbg", board_section(rhombus(9)))
    replace_board(args.games / "yavalath.rbg", board_section(hexagon(5)))


if __name__ == "__main__":
    main()
