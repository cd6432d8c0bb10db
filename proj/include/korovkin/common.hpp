#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace korovkin {

/// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool operator==(const Interval& o) const = default;
};

inline constexpr Interval unit_interval{0.0, 1.0};
inline constexpr Interval periodic_interval{-std::numbers::pi, std::numbers::pi};

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An evaluation rule produced a NaN or infinity.
class NonFiniteEvaluation : public Error {
  public:
    explicit NonFiniteEvaluation(const std::string& msg) : Error(msg) {}
};

/// A SpaceSpec violates its parameter constraints or domain requirements.
class InvalidSpace : public Error {
  public:
    explicit InvalidSpace(const std::string& msg) : Error(msg) {}
};

class MissingDerivative : public Error {
  public:
    explicit MissingDerivative(const std::string& msg) : Error(msg) {}
};

class NotPeriodic : public Error {
  public:
    explicit NotPeriodic(const std::string& msg) : Error(msg) {}
};

/// A custom operator was handed to a bound evaluation that needs L_n(1)
/// but no way to evaluate it was provided.
class NonUnitalWithoutOne : public Error {
  public:
    explicit NonUnitalWithoutOne(const std::string& msg) : Error(msg) {}
};

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw NonFiniteEvaluation(std::string(what) + " evaluated to a non-finite value");
    }
}

/// Wraps u into [-pi, pi].
inline double wrap_to_pi(double u) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    u = std::fmod(u + std::numbers::pi, two_pi);
    if (u < 0) u += two_pi;
    return u - std::numbers::pi;
}

} // namespace korovkin
