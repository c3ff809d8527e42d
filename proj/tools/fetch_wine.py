#!/usr/bin/env python3
"""Write the UCI Wine dataset (wine.data layout: class in column 0, 1-based,
no header, 13 numeric columns) to the given path.

Tries the UCI repository first; without network access it falls back to the
copy of the same data bundled with scikit-learn.
"""
import csv
import os
import sys
import urllib.request

UCI_URL = "https://archive.ics.uci.edu/ml/machine-learning-databases/wine/wine.data"


def from_uci(path):
    with urllib.request.urlopen(UCI_URL, timeout=15) as resp:
        data = resp.read()
    with open(path, "wb") as f:
        f.write(data)


def from_sklearn(path):
    import sklearn

    src = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data", "wine_data.csv")
    with open(src, newline="") as f:
        rows = list(csv.reader(f))
    n, p = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != n or any(len(r) != p + 1 for r in body):
        raise SystemExit("unexpected layout in " + src)
    with open(path, "w", newline="") as f:
        for r in body:
            f.write(",".join([str(int(r[-1]) + 1)] + r[:-1]) + "\n")


def main():
    if len(sys.argv) != 2:
        raise SystemExit("usage: fetch_wine.py OUTPUT")
    out = sys.argv[1]
    os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
    try:
        from_uci(out)
        print("fetched", UCI_URL)
    except Exception as err:  # offline
        print("UCI download failed (%s); using scikit-learn copy" % err)
        from_sklearn(out)


if __name__ == "__main__":
    main()
