#!/usr/bin/env python3
"""Generate data/thermo_nasa7.dat, the reduced-species NASA-7 database.

Provenance:
  * O2, N2, H2, H2O, CO2, CO, OH, H, O, NO: 7-coefficient polynomial fits
    from the GRI-Mech 3.0 thermodynamic database (Smith et al.,
    http://combustion.berkeley.edu/gri-mech/), which in turn derive from
    the NASA/Burcat compilations.
  * C4H6 (1,3-butadiene): fitted here by constrained least squares to
    rigid-rotor/harmonic-oscillator ideal-gas properties computed from the
    Shimanouchi vibrational assignment of trans-1,3-butadiene, anchored to
    dHf(298.15) = 108.8 kJ/mol and S(298.15) = 278.7 J/(mol K) (NIST
    WebBook values).

Every record is checked against tabulated 298.15 K anchors (formation
enthalpy, standard entropy, heat capacity) and for cp/h/s continuity at
the common temperature before the file is written.
"""

import math
import sys

import numpy as np

R = 8.31446261815324  # J/(mol K)
T_REF = 298.15

ATOMIC_MASS = {"C": 12.011, "H": 1.008, "O": 15.999, "N": 14.007}

# name -> (elements, (Tmin, Tcommon, Tmax), low coeffs a1..a7, high coeffs a1..a7)
GRI = {
    "O2": (
        {"O": 2}, (200.0, 1000.0, 3500.0),
        [3.78245636e+00, -2.99673416e-03, 9.84730201e-06, -9.68129509e-09,
         3.24372837e-12, -1.06394356e+03, 3.65767573e+00],
        [3.28253784e+00, 1.48308754e-03, -7.57966669e-07, 2.09470555e-10,
         -2.16717794e-14, -1.08845772e+03, 5.45323129e+00],
    ),
    "N2": (
        {"N": 2}, (300.0, 1000.0, 5000.0),
        [3.29867700e+00, 1.40824040e-03, -3.96322200e-06, 5.64151500e-09,
         -2.44485400e-12, -1.02089990e+03, 3.95037200e+00],
        [2.92664000e+00, 1.48797680e-03, -5.68476000e-07, 1.00970380e-10,
         -6.75335100e-15, -9.22797700e+02, 5.98052800e+00],
    ),
    "H2": (
        {"H": 2}, (200.0, 1000.0, 3500.0),
        [2.34433112e+00, 7.98052075e-03, -1.94781510e-05, 2.01572094e-08,
         -7.37611761e-12, -9.17935173e+02, 6.83010238e-01],
        [3.33727920e+00, -4.94024731e-05, 4.99456778e-07, -1.79566394e-10,
         2.00255376e-14, -9.50158922e+02, -3.20502331e+00],
    ),
    "H2O": (
        {"H": 2, "O": 1}, (200.0, 1000.0, 3500.0),
        [4.19864056e+00, -2.03643410e-03, 6.52040211e-06, -5.48797062e-09,
         1.77197817e-12, -3.02937267e+04, -8.49032208e-01],
        [3.03399249e+00, 2.17691804e-03, -1.64072518e-07, -9.70419870e-11,
         1.68200992e-14, -3.00042971e+04, 4.96677010e+00],
    ),
    "CO2": (
        {"C": 1, "O": 2}, (200.0, 1000.0, 3500.0),
        [2.35677352e+00, 8.98459677e-03, -7.12356269e-06, 2.45919022e-09,
         -1.43699548e-13, -4.83719697e+04, 9.90105222e+00],
        [3.85746029e+00, 4.41437026e-03, -2.21481404e-06, 5.23490188e-10,
         -4.72084164e-14, -4.87591660e+04, 2.27163806e+00],
    ),
    "CO": (
        {"C": 1, "O": 1}, (200.0, 1000.0, 3500.0),
        [3.57953347e+00, -6.10353680e-04, 1.01681433e-06, 9.07005884e-10,
         -9.04424499e-13, -1.43440860e+04, 3.50840928e+00],
        [2.71518561e+00, 2.06252743e-03, -9.98825771e-07, 2.30053008e-10,
         -2.03647716e-14, -1.41518724e+04, 7.81868772e+00],
    ),
    "OH": (
        {"O": 1, "H": 1}, (200.0, 1000.0, 3500.0),
        [3.99201543e+00, -2.40131752e-03, 4.61793841e-06, -3.88113333e-09,
         1.36411470e-12, 3.61508056e+03, -1.03925458e-01],
        [3.09288767e+00, 5.48429716e-04, 1.26505228e-07, -8.79461556e-11,
         1.17412376e-14, 3.85865700e+03, 4.47669610e+00],
    ),
    "H": (
        {"H": 1}, (200.0, 1000.0, 3500.0),
        [2.50000000e+00, 7.05332819e-13, -1.99591964e-15, 2.30081632e-18,
         -9.27732332e-22, 2.54736599e+04, -4.46682853e-01],
        [2.50000001e+00, -2.30842973e-11, 1.61561948e-14, -4.73515235e-18,
         4.98197357e-22, 2.54736599e+04, -4.46682914e-01],
    ),
    "O": (
        {"O": 1}, (200.0, 1000.0, 3500.0),
        [3.16826710e+00, -3.27931884e-03, 6.64306396e-06, -6.12806624e-09,
         2.11265971e-12, 2.91222592e+04, 2.05193346e+00],
        [2.56942078e+00, -8.59741137e-05, 4.19484589e-08, -1.00177799e-11,
         1.22833691e-15, 2.92175791e+04, 4.78433864e+00],
    ),
    "NO": (
        {"N": 1, "O": 1}, (200.0, 1000.0, 6000.0),
        [4.21847630e+00, -4.63897600e-03, 1.10443049e-05, -9.34061350e-09,
         2.80577464e-12, 9.84462300e+03, 2.28084600e+00],
        [3.26060560e+00, 1.19110430e-03, -4.29170480e-07, 6.94576690e-11,
         -4.03360990e-15, 9.92097460e+03, 6.36930270e+00],
    ),
}

# 298.15 K anchors: dHf [kJ/mol], S [J/(mol K)], cp [J/(mol K)], tolerances
ANCHORS = {
    "O2":  (0.0,      205.15, 29.38, 1.5, 1.0, 0.02),
    "N2":  (0.0,      191.61, 29.12, 1.5, 1.0, 0.02),
    "H2":  (0.0,      130.68, 28.84, 1.5, 1.0, 0.02),
    "H2O": (-241.83,  188.84, 33.59, 1.5, 1.0, 0.02),
    "CO2": (-393.52,  213.79, 37.12, 1.5, 1.0, 0.02),
    "CO":  (-110.53,  197.66, 29.14, 1.5, 1.0, 0.02),
    "OH":  (38.99,    183.71, 29.89, 3.0, 2.0, 0.03),
    "H":   (218.00,   114.72, 20.79, 1.5, 1.0, 0.02),
    "O":   (249.18,   161.06, 21.90, 1.5, 1.0, 0.02),
    "NO":  (90.29,    210.76, 29.86, 3.0, 2.0, 0.03),
    "C4H6": (108.8,   278.7,  79.5,  2.0, 3.0, 0.05),
}

# trans-1,3-butadiene fundamentals [cm^-1], Shimanouchi (NSRDS-NBS 39)
C4H6_FREQS = [
    3101, 3062, 3055, 3014, 2992, 2984, 1643, 1599, 1442, 1385, 1296, 1291,
    1205, 1013, 990, 967, 912, 908, 890, 753, 524, 513, 301, 163,
]
HC_K = 1.4387768877  # cm K, second radiation constant


def rrho_cp(T):
    """Cp/R for a nonlinear rigid rotor + harmonic oscillators."""
    total = 4.0  # 3/2 trans + 3/2 rot + 1 (Cp - Cv)
    for nu in C4H6_FREQS:
        x = HC_K * nu / T
        e = math.exp(-x)
        total += x * x * e / (1.0 - e) ** 2
    return total


def rrho_h_minus_href(T):
    """(H(T) - H(298.15))/R for the same model."""
    total = 4.0 * (T - T_REF)
    for nu in C4H6_FREQS:
        th = HC_K * nu
        total += th / (math.exp(th / T) - 1.0) - th / (math.exp(th / T_REF) - 1.0)
    return total


def rrho_s_minus_sref(T):
    """(S(T) - S(298.15))/R for the same model."""
    total = 4.0 * math.log(T / T_REF)
    for nu in C4H6_FREQS:
        for sign, t in ((1.0, T), (-1.0, T_REF)):
            x = HC_K * nu / t
            total += sign * (x / (math.exp(x) - 1.0) - math.log(1.0 - math.exp(-x)))
    return total


def fit_band(Ts, cps, t_join, cp_join):
    """Least-squares fit of a1..a5 to cp/R with an exact join-point value."""
    A = np.vander(Ts, 5, increasing=True)
    c = np.array([t_join**k for k in range(5)])
    # KKT system for min ||A a - cps||^2 s.t. c.a = cp_join
    AtA = A.T @ A
    kkt = np.zeros((6, 6))
    kkt[:5, :5] = 2.0 * AtA
    kkt[:5, 5] = c
    kkt[5, :5] = c
    rhs = np.concatenate([2.0 * A.T @ cps, [cp_join]])
    sol = np.linalg.solve(kkt, rhs)
    return sol[:5]


def poly_cp(a, T):
    return a[0] + a[1] * T + a[2] * T**2 + a[3] * T**3 + a[4] * T**4


def poly_h(a, T):  # H/R given a1..a6
    return T * (a[0] + a[1] * T / 2 + a[2] * T**2 / 3 + a[3] * T**3 / 4
                + a[4] * T**4 / 5) + a[5]


def poly_s(a, T):  # S/R given a1..a5, a7 in a[6]
    return (a[0] * math.log(T) + a[1] * T + a[2] * T**2 / 2 + a[3] * T**3 / 3
            + a[4] * T**4 / 4 + a[6])


def fit_c4h6():
    t_join = 1000.0
    cp_join = rrho_cp(t_join)
    lo_T = np.linspace(200.0, 1000.0, 81)
    hi_T = np.linspace(1000.0, 3500.0, 101)
    a_lo = fit_band(lo_T, np.array([rrho_cp(t) for t in lo_T]), t_join, cp_join)
    a_hi = fit_band(hi_T, np.array([rrho_cp(t) for t in hi_T]), t_join, cp_join)

    hf = 108.8e3 / R  # dHf(298.15)/R
    s0 = 278.7 / R

    low = list(a_lo) + [0.0, 0.0]
    low[5] = hf - poly_h(low, T_REF)
    low[6] = s0 - poly_s(low + [0.0], T_REF) if False else s0 - (
        low[0] * math.log(T_REF) + low[1] * T_REF + low[2] * T_REF**2 / 2
        + low[3] * T_REF**3 / 3 + low[4] * T_REF**4 / 4)

    high = list(a_hi) + [0.0, 0.0]
    high[5] = poly_h(low, t_join) - poly_h(high, t_join) + high[5]
    high[6] = poly_s(low, t_join) - (
        high[0] * math.log(t_join) + high[1] * t_join + high[2] * t_join**2 / 2
        + high[3] * t_join**3 / 3 + high[4] * t_join**4 / 4)

    # fit quality on each band
    for Ts, a in ((lo_T, low), (hi_T, high)):
        rel = max(abs(poly_cp(a, t) - rrho_cp(t)) / rrho_cp(t) for t in Ts)
        print(f"  C4H6 band cp fit max residual {rel:.2e}")
        assert rel < 2e-2, f"C4H6 cp fit residual {rel:.2e}"
    return (200.0, 1000.0, 3500.0), low, high


def molar_mass(elements):
    return sum(ATOMIC_MASS[e] * n for e, n in elements.items()) * 1e-3


def check(name, trange, low, high):
    dhf, s0, cp0, tol_h, tol_s, tol_cp = ANCHORS[name]
    cp = poly_cp(low, T_REF) * R
    h = poly_h(low, T_REF) * R
    s = poly_s(low, T_REF) * R
    assert abs(h / 1e3 - dhf) < tol_h, f"{name}: h298 {h/1e3:.2f} vs {dhf}"
    assert abs(s - s0) < tol_s, f"{name}: s298 {s:.2f} vs {s0}"
    assert abs(cp - cp0) / cp0 < tol_cp, f"{name}: cp298 {cp:.2f} vs {cp0}"
    tc = trange[1]
    cp_lo, cp_hi = poly_cp(low, tc), poly_cp(high, tc)
    h_lo, h_hi = poly_h(low, tc), poly_h(high, tc)
    s_lo, s_hi = poly_s(low, tc), poly_s(high, tc)
    assert abs(cp_lo - cp_hi) / cp_lo < 5e-3, f"{name}: cp joint {cp_lo} {cp_hi}"
    assert abs(h_lo - h_hi) / abs(h_lo) < 2e-3, f"{name}: h joint {h_lo} {h_hi}"
    assert abs(s_lo - s_hi) / abs(s_lo) < 2e-3, f"{name}: s joint {s_lo} {s_hi}"
    print(f"  {name:5s} h298={h/1e3:9.2f} kJ/mol  s298={s:7.2f}  cp298={cp:6.2f}  OK")


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "data/thermo_nasa7.dat"
    records = []
    for name, (elements, trange, low, high) in GRI.items():
        records.append((name, elements, trange, low, high))
    trange, low, high = fit_c4h6()
    records.append(("C4H6", {"C": 4, "H": 6}, trange, low, high))

    print("anchor checks:")
    for name, elements, trange, low, high in records:
        check(name, trange, low, high)

    lines = [
        "# NASA-7 thermodynamic data, reduced species set.",
        "# Record: name  molar_mass[kg/mol]  n_elem  (elem count)...",
        "#         Tmin Tcommon Tmax",
        "#         a1..a7 (low range)",
        "#         a1..a7 (high range)",
        "# Sources: GRI-Mech 3.0 fits; C4H6 fitted to RRHO statistical-",
        "# mechanics properties anchored at NIST WebBook 298.15 K values",
        "# (see scripts/make_thermo_data.py).",
        "",
    ]
    for name, elements, trange, low, high in records:
        elem = "  ".join(f"{e} {int(n)}" for e, n in sorted(elements.items()))
        lines.append(f"{name}  {molar_mass(elements):.7e}  {len(elements)}  {elem}")
        lines.append(f"  {trange[0]:.1f} {trange[1]:.1f} {trange[2]:.1f}")
        lines.append("  " + " ".join(f"{c: .9e}" for c in low[:7]))
        lines.append("  " + " ".join(f"{c: .9e}" for c in high[:7]))
        lines.append("")
    with open(out, "w") as f:
        f.write("\n".join(lines))
    print(f"wrote {out} ({len(records)} species)")


if __name__ == "__main__":
    main()
