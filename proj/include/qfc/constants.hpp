#pragma once

namespace qfc::constants
{
// CODATA 2018 (exact SI-defined values, h/2pi truncated to 10 significant digits).
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double speed_of_light = 299792458.0;    // m/s
inline constexpr double pi = 3.14159265358979323846;

// Pump ratio P_in / P_th up to which the linearized output fields stay valid.
inline constexpr double linearization_bound = 0.99895;
} // namespace qfc::constants
