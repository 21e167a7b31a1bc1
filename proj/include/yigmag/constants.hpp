#pragma once

#include <numbers>

// Physical constants. Values follow the rounded working set used throughout
// the YIG oscillator literature (gamma = 2*pi*28 GHz/T rather than CODATA)
// so that published figures reproduce to the quoted digits.
namespace yigmag::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double g_e = 2.0;            // electron g-factor
inline constexpr double mu_b = 9.274e-24;     // Bohr magneton, J/T
inline constexpr double mu_0 = 1.257e-6;      // vacuum permeability, H/m
inline constexpr double k_b = 1.381e-23;      // Boltzmann constant, J/K
inline constexpr double hbar = 1.054571817e-34;  // reduced Planck, J*s

// Working gyromagnetic ratio, rad/(s*T).
inline constexpr double gamma = two_pi * 28.0e9;
// Same quantity in Hz/T.
inline constexpr double gamma_hz = 28.0e9;

// Room-temperature YIG.
inline constexpr double yig_ms = 1.42e5;                    // A/m
inline constexpr double yig_k1_over_mu0ms = -4.2e-3;        // T
inline constexpr double yig_spin_density_0k = 2.1e28;       // 1/m^3
inline constexpr double yig_room_temperature_fraction = 0.72;
inline constexpr double yig_spin_density_room = 1.5e28;     // 1/m^3

}  // namespace yigmag::constants
