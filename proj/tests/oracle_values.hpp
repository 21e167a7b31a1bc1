#pragma once

// Generated by tests/oracles/make_oracles.py. Do not edit.
namespace oracle {

inline constexpr double l_dbc_10k = -133.05123861626384;
inline constexpr double l_dbc_100k = -154.85696142280176;
inline constexpr double l_dbc_1k = -106.44537771617762;
inline constexpr double l_floor_dbc = -170.81655071037727;
inline constexpr double eta_3k = 1.560490392309352e-13;
inline constexpr double eta_35k = 9.526447402710943e-14;
inline constexpr double eta_100k = 9.13080137082553e-14;
inline constexpr double eta_1m = 1.7010902218451387e-13;
inline constexpr double eta_plateau = 8.723297448060964e-14;
inline constexpr double eta_measured_100k = 9.624029963974268e-14;
inline constexpr double eta_max_3k_1m = 1.7010902218451387e-13;
inline constexpr double eta_min_3k_1m = 9.1299508253192e-14;
inline constexpr double sideband_1pt_100k = 1.979898987322333e-07;
inline constexpr double sideband_1pt_100k_dbc = -134.06713932979542;
inline constexpr double beta_2u12_200k = 0.4197385853123346;
inline constexpr double j1_over_j0_2u12_200k = 0.21463110383664952;
inline constexpr double j0_2u12_200k = 0.95643750616225;
inline constexpr double j1_2u12_200k = 0.205281237698376;
inline constexpr double s21_sq_res = 0.22380597342221828;
inline constexpr double s11_sq_res = 0.3396342265690101;
inline constexpr double q_loaded = 3300.662251655629;
inline constexpr double f_leeson_res = 755000.0;
inline constexpr double sphere_res_hz = 4984000000.0;
inline constexpr double kittel_thin = 33294071155.178825;
inline constexpr double kittel_needle = 26183677728.651306;
inline constexpr double ztc_rad = 0.5178402318581086;
inline constexpr double ztc_deg = 29.67005974754562;
inline constexpr double aniso_shift_111_hz = 156799999.99999985;
inline constexpr double aniso_shift_100_hz = -235200000.0;
inline constexpr double aniso_shift_110_hz = 58800000.0;
inline constexpr double spin_count = 7.853981633974483e+18;
inline constexpr double eta_spl = 2.6871796693631857e-18;
inline constexpr double eta_spl_8e18 = 2.6625431342897526e-18;
inline constexpr double eta_the = 1.886470551659034e-16;
inline constexpr double tip_angle = 0.07081198954463985;
inline constexpr double tip_t2 = 4.029239065617604e-07;
inline constexpr double bias_error = 7.02247191011236e-09;
inline constexpr double bias_exact = 7.022471770756766e-09;
inline constexpr double gradient_tolerance = 0.03571428571428571;
inline constexpr double welch_psd_bin1 = 3.0932824210987825e-27;
inline constexpr double welch_psd_bin37 = 2.2236142873864373e-27;
inline constexpr double welch_psd_bin125 = 7.019656042782023e-26;
inline constexpr double welch_psd_bin128 = 8.314269318413278e-24;
inline constexpr double welch_psd_bin300 = 1.0719450370005232e-27;
inline constexpr double welch_psd_bin511 = 2.0579938865561515e-27;
inline constexpr double welch_psd_bin512 = 1.1409360412435544e-27;
inline constexpr double welch_bin_hz = 0.9765625;
inline constexpr double welch_input_var = 9.974584430239033e-24;

}  // namespace oracle
