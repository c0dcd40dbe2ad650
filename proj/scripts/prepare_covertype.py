#!/usr/bin/env python3
"""Convert the UCI Covertype file into the two CSV files the demo reads.

    scripts/prepare_covertype.py covtype.data.gz          # from the UCI archive
    scripts/prepare_covertype.py --sklearn                # via sklearn.datasets.fetch_covtype

Writes covertype.csv (54 features per line) and covertype.labels.csv (cover
type 1-7, one per line) into --out-dir, default data/covertype.
"""

import argparse
import csv
import gzip
import sys
from pathlib import Path

FEATURES = 54
EXPECTED_ROWS = 581012


def rows_from_uci(path):
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rt", newline="") as f:
        for lineno, row in enumerate(csv.reader(f), start=1):
            if not row:
                continue
            if len(row) != FEATURES + 1:
                sys.exit(f"{path}:{lineno}: expected {FEATURES + 1} fields, found {len(row)}")
            yield row[:FEATURES], row[FEATURES]


def rows_from_sklearn():
    from sklearn.datasets import fetch_covtype

    bunch = fetch_covtype()
    for x, y in zip(bunch.data, bunch.target):
        yield [f"{v:g}" for v in x], str(int(y))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("source", nargs="?", type=Path, help="covtype.data or covtype.data.gz")
    parser.add_argument("--sklearn", action="store_true", help="fetch through scikit-learn instead")
    parser.add_argument("--out-dir", type=Path, default=Path("data/covertype"))
    args = parser.parse_args()
    if args.sklearn == (args.source is not None):
        parser.error("give exactly one of SOURCE or --sklearn")

    rows = rows_from_sklearn() if args.sklearn else rows_from_uci(args.source)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(args.out_dir / "covertype.csv", "w") as data, open(args.out_dir / "covertype.labels.csv", "w") as labels:
        for features, label in rows:
            data.write(",".join(features) + "\n")
            labels.write(label + "\n")
            count += 1
    print(f"wrote {count} points to {args.out_dir}")
    if count != EXPECTED_ROWS:
        print(f"warning: the full dataset has {EXPECTED_ROWS} points", file=sys.stderr)


if __name__ == "__main__":
    main()
