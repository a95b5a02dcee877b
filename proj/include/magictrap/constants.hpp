#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace magictrap {

// CODATA 2018.
namespace phys {
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kHbar = kPlanck / kTwoPi;
inline constexpr double kEpsilon0 = 8.8541878128e-12;
inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kBohrMagneton = 9.2740100783e-24;
inline constexpr double kElectronG = 2.00231930436;
inline constexpr double kEA0 = 8.4783536255e-30;  // e * a0 in C m
inline constexpr double kGauss = 1e-4;             // tesla per gauss
}  // namespace phys

inline constexpr double wavenumber_to_hz(double cm1) { return phys::kSpeedOfLight * 100.0 * cm1; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent atomic data.
class DatasetError : public Error {
 public:
  using Error::Error;
};

// Bad arguments: quantum numbers out of range, negative intensity, unknown identifiers.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation inside a resonance guard band.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace magictrap
