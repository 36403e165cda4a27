"""Regenerates tests/fixtures/regression_constants.json with mpmath.

Everything here is computed from closed forms at 40 digits, independently of
the C++ library, and rounded to 12 significant digits.
"""

import json
import pathlib

from mpmath import erfinv, exp, log, mp, mpf, nstr, pi, sqrt

mp.dps = 40


def phi(x):
    return exp(-x * x / 2) / sqrt(2 * pi)


def Phi(x):
    return mp.ncdf(x)


def Phi_inv(p):
    return sqrt(2) * erfinv(2 * mpf(p) - 1)


def J(t):
    return phi(Phi_inv(t))


def K(x, y):
    x, y = mpf(x), mpf(y)
    if y <= x:
        return J(x - y / 2) - J(x) + J(y / 2)
    return J(x + y / 2) - J(x) + J(y / 2)


def L(x, y):
    x, y = mpf(x), mpf(y)
    if y <= x:
        return J(y / 2) - y / (2 * x) * J(x)
    return J(y / 2) - y / (2 * (1 - x)) * J(x)


def r12(v):
    return float(nstr(v, 12))


def main():
    out = {}
    g = out["gaussian"] = {}
    g["density_0"] = r12(1 / sqrt(2 * pi))
    g["quantile_0.841344746"] = r12(Phi_inv(mpf("0.841344746")))
    g["cdf_1"] = r12(Phi(1))
    g["cdf_-3"] = r12(Phi(-3))
    g["cdf_5"] = r12(Phi(5))
    g["cdf_-8"] = r12(Phi(-8))
    g["quantile_1e-10"] = r12(Phi_inv(mpf("1e-10")))
    g["quantile_0.975"] = r12(Phi_inv(mpf("0.975")))
    g["profile_1e-4"] = r12(J(mpf("1e-4")))
    g["profile_0.3"] = r12(J(mpf("0.3")))

    mu = Phi(1) - Phi(-1)
    per = 2 * phi(1)
    g["deficit_interval"] = {
        "mu": r12(mu),
        "m": r12(1 - mu),
        "perimeter": r12(per),
        "j_at_mu": r12(J(mu)),
        "delta": r12(per - J(mu)),
    }
    g["K_0.25_0.1"] = r12(K("0.25", "0.1"))
    g["L_0.25_0.1"] = r12(L("0.25", "0.1"))
    g["bound_0.3_0.4"] = r12(J(mpf("0.5")) + J(mpf("0.2")))
    g["bound_0.3_0.2"] = r12(J(mpf("0.2")) + J(mpf("0.1")))
    g["K_0.3_0.2"] = r12(K("0.3", "0.2"))
    g["L_0.3_0.2"] = r12(L("0.3", "0.2"))
    g["optimal_d2_0.3_0.2"] = {
        "hi_left": r12(Phi_inv(mpf("0.2"))),
        "lo_right": r12(Phi_inv(mpf("0.9"))),
        "perimeter": r12(phi(Phi_inv(mpf("0.2"))) + phi(Phi_inv(mpf("0.9")))),
    }
    g["optimal_d1_0.3_0.5"] = {"lo": r12(Phi_inv(mpf("0.25"))), "hi": r12(Phi_inv(mpf("0.55")))}
    g["optimal_d3_0.7_0.2"] = {"lo": r12(Phi_inv(mpf("0.2"))), "hi": r12(Phi_inv(mpf("0.9")))}
    g["two_tails_1"] = {"mu": r12(2 * Phi(-1)), "perimeter": r12(2 * phi(1))}
    ratios = {}
    for k in range(3, 9):
        y = mpf(10) ** (-k)
        ratios[f"1e-{k}"] = r12(K(mpf("0.25"), y) / (y / 2 * sqrt(2 * log(2 / y))))
    g["asymptotic_ratio"] = ratios

    lo = out["logistic"] = {}
    lo["density_0"] = 0.25
    lo["cdf_2"] = r12(1 / (1 + exp(-2)))
    lo["quantile_0.9"] = r12(log(mpf("0.9") / mpf("0.1")))
    lo["profile_0.2"] = r12(mpf("0.2") * mpf("0.8"))

    la = out["laplace"] = {}
    la["cdf_-ln2"] = 0.25
    la["quantile_0.25"] = r12(-log(2))
    la["quantile_0.3"] = r12(log(mpf("0.6")))
    la["quantile_0.9"] = r12(-log(mpf("0.2")))

    path = pathlib.Path(__file__).resolve().parents[2] / "tests" / "fixtures" / "regression_constants.json"
    path.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
