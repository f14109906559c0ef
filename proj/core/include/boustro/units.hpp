#pragma once

namespace boustro {

// All internal quantities are SI: meters, seconds, m/s.
// Knots and hours appear only at I/O boundaries (configs, plots, printouts).

inline constexpr double kMetersPerSecondPerKnot = 0.514444;
inline constexpr double kSecondsPerHour = 3600.0;

constexpr double knots_to_mps(double knots) { return knots * kMetersPerSecondPerKnot; }
constexpr double mps_to_knots(double mps) { return mps / kMetersPerSecondPerKnot; }
constexpr double hours_to_seconds(double hours) { return hours * kSecondsPerHour; }
constexpr double seconds_to_hours(double seconds) { return seconds / kSecondsPerHour; }

}  // namespace boustro
