#pragma once

// Fixed physical constants used throughout. Values are pinned (not looked up
// at runtime) so that derived quantities are reproducible bit-for-bit.
namespace rabisense::constants {

inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double bohr_magneton_J_per_T = 9.2740100783e-24;
inline constexpr double atomic_mass_kg = 1.66053906660e-27;
inline constexpr double yocto = 1e-24; // yN -> N

} // namespace rabisense::constants
