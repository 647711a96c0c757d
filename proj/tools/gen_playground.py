#!/usr/bin/env python3
"""Writes the two desk layouts used by the density experiment.

set1: 20 red vs 20 blue; set3: 20 red vs 200 blue. Both are Gaussian blobs
on a 400x400 desk in pixel coordinates, rounded to whole pixels. The seed is
fixed so the files are reproducible.
"""
import csv
import pathlib
import random

DESK = 400


def blob(rng, n, cx, cy, sd):
    pts = []
    while len(pts) < n:
        x, y = round(rng.gauss(cx, sd)), round(rng.gauss(cy, sd))
        if 0 <= x <= DESK and 0 <= y <= DESK:
            pts.append((x, y))
    return pts


def write(path, red, blue):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["class", "x", "y"])
        for x, y in red:
            w.writerow(["red", x, y])
        for x, y in blue:
            w.writerow(["blue", x, y])


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "playground"
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240601)
    red = blob(rng, 20, 130, 200, 30)
    write(out / "set1.csv", red, blob(rng, 20, 270, 200, 30))
    write(out / "set3.csv", red, blob(rng, 200, 270, 200, 30))


if __name__ == "__main__":
    main()
