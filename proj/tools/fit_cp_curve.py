#!/usr/bin/env python3
"""Derive the default analytic Cp(lambda) coefficients.

Starts from the common exponential form (zero pitch)

    Cp = c1 * (c2 / li - c4) * exp(-c5 / li) + c6 * lambda,
    1/li = 1/lambda - c7

with the widely used base set c1=0.5176, c2=116, c4=5, c5=21, c6=0.0068,
c7=0.035, then rescales lambda and Cp so that the maximum lands on
(lambda_opt, cp_max). The substitution lambda -> lambda/s keeps the same
algebraic form with c2' = s*c2, c5' = s*c5, c6' = c6/s, c7' = c7/s, and a
height factor k multiplies c1 and c6.

Prints the coefficients pasted into src/aero.cpp.
"""
import math
from scipy.optimize import brentq, minimize_scalar

LAMBDA_OPT = 5.75
CP_MAX = 0.33

BASE = dict(c1=0.5176, c2=116.0, c4=5.0, c5=21.0, c6=0.0068, c7=0.035)


def cp(lam, c1, c2, c4, c5, c6, c7):
    inv = 1.0 / lam - c7
    return c1 * (c2 * inv - c4) * math.exp(-c5 * inv) + c6 * lam


def peak(coef, lo, hi):
    res = minimize_scalar(lambda l: -cp(l, **coef), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    return res.x, -res.fun


lam_star, cp_star = peak(BASE, 2, 14)
s = LAMBDA_OPT / lam_star
k = CP_MAX / cp_star
coef = dict(c1=k * BASE["c1"], c2=s * BASE["c2"], c4=BASE["c4"], c5=s * BASE["c5"],
            c6=k * BASE["c6"] / s, c7=BASE["c7"] / s)
for name, value in coef.items():
    print(f"{name} = {value:.17g}")

lam2, cp2 = peak(coef, 1, 12)
print(f"check: max {cp2:.12f} at lambda {lam2:.12f}")
cutout = brentq(lambda l: cp(l, **coef), lam2, 2.5 * lam2, xtol=1e-14)
print(f"cutout lambda = {cutout:.12f}")
