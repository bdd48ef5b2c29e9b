#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lcatsp {

// Malformed user input (files, CLI arguments, precondition violations).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A guarantee that should hold by construction failed; indicates a bug
// upstream, not bad input.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Feasibility tolerance for flow values and LP constraints.
// Overridable through the LCATSP_TOL environment variable.
inline double eps_feas() {
  static const double v = [] {
    if (const char* s = std::getenv("LCATSP_TOL")) {
      char* end = nullptr;
      double t = std::strtod(s, &end);
      if (end != s && t > 0) return t;
    }
    return 1e-7;
  }();
  return v;
}

inline constexpr double kEpsObj = 1e-6;
// Values below this are clamped to exact zero downstream of the LP.
inline constexpr double kClamp = 1e-9;

// lb = lbs / kLbsScale; the lightness target w.r.t. lb is 10 * kLbsScale.
inline constexpr int kLbsScale = 10;
inline constexpr int kLightnessTarget = 10 * kLbsScale;

// Float-safe ceiling: nudges down by 1e-9 first so that values like
// 1.0000000001 coming out of the LP still round to 1.
inline long long ceil_nudged(double z) {
  return static_cast<long long>(std::ceil(z - 1e-9));
}

// Round-trippable text form of a double.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace lcatsp
