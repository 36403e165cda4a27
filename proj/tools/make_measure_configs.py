"""Writes the sample measure configs under data/measures/."""

import json
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parents[1] / "data" / "measures"


def write(name, doc):
    (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write("gaussian.json", {"kind": "gaussian"})
    write("logistic.json", {"kind": "logistic", "params": {"scale": 1.0}})
    write("laplace.json", {"kind": "laplace", "params": {"rate": 1.0}})
    write("laplace_profile.json",
          {"kind": "custom", "name": "laplace-profile", "custom_profile": [[0.0, 0.0], [0.5, 0.5]]})
    write("uniform.json",
          {"kind": "custom", "name": "uniform", "custom_profile": [[0.0, 1.0], [0.5, 1.0]]})
    knots = []
    for i in range(201):
        s = i / 400
        knots.append([s, round(s * (1 - s) * (1 + 0.5 * math.sin(20 * s)), 15)])
    write("perturbed.json", {"kind": "custom", "name": "perturbed", "custom_profile": knots})


if __name__ == "__main__":
    main()
