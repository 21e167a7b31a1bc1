#!/usr/bin/env python3
"""Independent reference values for the C++ tests.

Everything here is recomputed from the governing formulas with numpy/scipy
and written to tests/oracle_values.hpp plus the tables in tests/data/. The
outputs are committed; rerun only when a formula or input changes.
"""
import math
import pathlib

import numpy as np
from scipy import signal, special

HERE = pathlib.Path(__file__).resolve().parent
TESTS = HERE.parent
DATA = TESTS / "data"

GAMMA_HZ = 28e9
GAMMA = 2 * math.pi * GAMMA_HZ
K_B = 1.381e-23
HBAR = 1.054571817e-34
MU_B = 9.274e-24
MU_0 = 1.257e-6
G_E = 2.0
MS = 1.42e5

values = {}


def put(name, v):
    values[name] = float(v)


# Leeson model with the fitted reference parameters.
FL, FC, F, PS, T = 600e3, 6.6e3, 8.0, 2e-3, 300.0


def leeson(f):
    return 0.5 * F * K_B * T / PS * (FL**2 / f**2 + 1) * (FC / f + 1)


put("l_dbc_10k", 10 * math.log10(leeson(10e3)))
put("l_dbc_100k", 10 * math.log10(leeson(100e3)))
put("l_dbc_1k", 10 * math.log10(leeson(1e3)))
put("l_floor_dbc", 10 * math.log10(0.5 * F * K_B * T / PS))


def eta(f):
    return math.sqrt(2) * f / GAMMA_HZ * math.sqrt(leeson(f))


for f, tag in [(3e3, "3k"), (35e3, "35k"), (100e3, "100k"), (1e6, "1m")]:
    put(f"eta_{tag}", eta(f))
put("eta_plateau", 0.5 * (4 * math.pi * FL) / GAMMA * math.sqrt(F * K_B * T / PS))
# Invert the measured -154.4 dBc/Hz at 100 kHz.
put("eta_measured_100k", math.sqrt(2) * 100e3 / GAMMA_HZ * math.sqrt(10 ** (-154.4 / 10)))
grid = np.logspace(math.log10(3e3), 6, 400)
put("eta_max_3k_1m", max(eta(f) for f in grid))
put("eta_min_3k_1m", min(eta(f) for f in grid))

# Narrowband FM sideband and the exact Bessel amplitudes.
s = GAMMA * 1e-12 / (math.sqrt(2) * 2 * math.pi * 100e3)
put("sideband_1pt_100k", s)
put("sideband_1pt_100k_dbc", 20 * math.log10(s))
beta = GAMMA * 2.12e-6 * math.sqrt(2) / (2 * math.pi * 200e3)
put("beta_2u12_200k", beta)
put("j1_over_j0_2u12_200k", special.jv(1, beta) / special.jv(0, beta))
put("j0_2u12_200k", special.jv(0, beta))
put("j1_2u12_200k", special.jv(1, beta))

# Resonator.
K0, K1, K2 = (2 * math.pi * x for x in (790e3, 315e3, 405e3))
KL = K0 + K1 + K2
B0 = 0.178
WY = GAMMA * B0


def sparams(wd):
    den = 1j * (wd - WY) + KL / 2
    s11 = 1 - K1 / den
    s21 = math.sqrt(K1 * K2) / den * np.exp(-1j * math.pi / 2)
    return s11, s21


s11_0, s21_0 = sparams(WY)
put("s21_sq_res", abs(s21_0) ** 2)
put("s11_sq_res", abs(s11_0) ** 2)
put("q_loaded", WY / KL)
put("f_leeson_res", 0.5 * KL / (2 * math.pi))
put("sphere_res_hz", GAMMA_HZ * B0)


def kittel(bz, mz, n):
    nx, ny, nz = n
    g = GAMMA
    return math.sqrt((g * bz + (ny - nz) * g * MU_0 * mz) * (g * bz + (nx - nz) * g * MU_0 * mz))


put("kittel_thin", kittel(0.1, MS, (0.5, 0.5, 0.0)))
put("kittel_needle", kittel(0.2, MS, (0.0, 0.5, 0.5)))

# Anisotropy: root of 2 + 7.5 x^2 - 10 x in x = sin^2 theta found numerically.
from scipy.optimize import brentq

poly = lambda th: 2 + 7.5 * math.sin(th) ** 4 - 10 * math.sin(th) ** 2
ztc = brentq(poly, 0.1, 0.9, xtol=1e-15)
put("ztc_rad", ztc)
put("ztc_deg", math.degrees(ztc))
K1T = -4.2e-3
put("aniso_shift_111_hz", GAMMA_HZ * K1T * poly(math.acos(1 / math.sqrt(3)) ))  # <111> at 54.7 deg
put("aniso_shift_100_hz", GAMMA_HZ * K1T * poly(0.0))
put("aniso_shift_110_hz", GAMMA_HZ * K1T * poly(math.pi / 2))

# Limits.
d = 1e-3
V = math.pi * d**3 / 6
N = 1.5e28 * V
T2S = 570e-9
put("spin_count", N)
put("eta_spl", HBAR / (G_E * MU_B) / math.sqrt(N * T2S))
put("eta_spl_8e18", HBAR / (G_E * MU_B) / math.sqrt(8e18 * T2S))
put("eta_the", math.sqrt(K_B * 300 / (GAMMA * MS * V * 8900)))
T2 = 2 / (2 * math.pi * 790e3)
T1 = T2 / 2
x = 0.25 * GAMMA**2 * (2e-6) ** 2 * T1 * T2
put("tip_angle", math.acos(1 / (1 + x)))
put("tip_t2", T2)
bperp, b0 = 0.05e-3, 0.178
put("bias_error", bperp**2 / (2 * b0))
put("bias_exact", math.hypot(b0, bperp) - b0)
put("gradient_tolerance", 2 * math.pi * 1e6 / (GAMMA * 1e-3))

# Swept S-parameters: 401 points over +/- 3 kappa_L, via an independent
# forward model, plus an over-coupled variant.
def write_sweep(path, k0, k1, k2, n=401, span=3.0, offset=0.37):
    kl = k0 + k1 + k2
    wy = WY
    wd = wy + (np.linspace(-span, span, n) + offset / n) * kl
    den = 1j * (wd - wy) + kl / 2
    s11 = 1 - k1 / den
    s21 = np.sqrt(k1 * k2) / den * np.exp(-1j * np.pi / 2)
    with open(path, "w") as f:
        f.write("# freq_hz, re_s11, im_s11, re_s21, im_s21\n")
        for w, a, b in zip(wd, s11, s21):
            f.write(f"{w / (2 * math.pi):.17g}, {a.real:.17g}, {a.imag:.17g}, {b.real:.17g}, {b.imag:.17g}\n")


write_sweep(DATA / "sweep_reference.txt", K0, K1, K2)
write_sweep(DATA / "sweep_overcoupled.txt", 2 * math.pi * 300e3, 2 * math.pi * 900e3,
            2 * math.pi * 200e3)

# Phase-noise table from the Leeson model, 10 points per decade.
offs = np.logspace(3, 7, 41)
with open(DATA / "phase_noise_reference.txt", "w") as f:
    f.write("# offset_hz, l_dbchz\n")
    for o in offs:
        f.write(f"{o:.17g}, {10 * math.log10(leeson(o)):.17g}\n")

# Welch periodogram reference: deterministic input, disjoint Tukey segments,
# density scaling. scipy's tukey is symmetric with sym=True.
fs = 1000.0
n = 8192
t = np.arange(n) / fs
rng = np.random.default_rng(12345)
xw = 1e-12 * (np.sqrt(2) * 3.0 * np.sin(2 * np.pi * 125.0 * t) + rng.standard_normal(n))
with open(DATA / "welch_input.txt", "w") as f:
    f.write("# time_s, b_tesla\n")
    for ti, xi in zip(t, xw):
        f.write(f"{ti:.17g}, {xi:.17g}\n")
nseg = 1024
win = signal.windows.tukey(nseg, 0.25, sym=True)
fw, pw = signal.welch(xw, fs=fs, window=win, nperseg=nseg, noverlap=0, detrend=False,
                      scaling="density", return_onesided=True, average="mean")
for k in (1, 37, 125, 128, 300, 511, 512):
    put(f"welch_psd_bin{k}", pw[k])
put("welch_bin_hz", fw[1] - fw[0])

# Sample variance for Parseval-style checks.
put("welch_input_var", np.mean(xw**2))

with open(TESTS / "oracle_values.hpp", "w") as f:
    f.write("#pragma once\n\n// Generated by tests/oracles/make_oracles.py. Do not edit.\n")
    f.write("namespace oracle {\n\n")
    for k, v in values.items():
        f.write(f"inline constexpr double {k} = {v!r};\n")
    f.write("\n}  // namespace oracle\n")

for k, v in values.items():
    print(f"{k} = {v:.10g}")
