#!/usr/bin/env python3
"""Write data/diabetes.csv: the standardized diabetes benchmark data.

Columns age..glu are the ten predictors, each centered and scaled to unit
Euclidean norm (the usual LARS normalization, as shipped by scikit-learn's
load_diabetes with scaled=True). Column y is the raw response.

Run from the repository root:

    python3 tools/make_diabetes_csv.py
"""

import csv

from sklearn.datasets import load_diabetes


def main():
    data = load_diabetes(scaled=True)
    names = ["age", "sex", "bmi", "map", "tc", "ldl", "hdl", "tch", "ltg", "glu"]
    with open("data/diabetes.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names + ["y"])
        for row, target in zip(data.data, data.target):
            writer.writerow([f"{v:.17g}" for v in row] + [f"{target:.17g}"])
    print(f"wrote data/diabetes.csv ({len(data.target)} rows)")


if __name__ == "__main__":
    main()
