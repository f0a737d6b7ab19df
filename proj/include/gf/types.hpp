#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gf {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class ErrorCode {
  // configuration / input errors
  ConfigInvalid,
  NonSimple,
  DegenerateTangent,
  NotCounterclockwise,
  DuplicatePole,
  ConstantLeak,
  MixedSides,
  NotNormalized,
  NotNormalizedAtPoint,
  UnsupportedCurve,
  UnsupportedArc,
  // geometric placement errors
  EndpointFrame,
  EndpointRequested,
  PoleOnBoundary,
  PoleOnSegment,
  PoleOnArc,
  PoleOnCircle,
  PoleNearBoundary,
  PoleOnWrongSide,
  WrongSideEvaluation,
  EvalAtPole,
  // numerical failures
  SolveFailed,
  ExtrapolationUnstable,
  ExtrapolationMismatch,
  BranchTrackingFailed,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by bad input rather than by a numerical breakdown.
bool is_config_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point of the extended complex plane.
class ExtPoint {
 public:
  constexpr ExtPoint() = default;
  constexpr ExtPoint(cplx z) : z_(z) {}  // NOLINT: implicit by intent
  constexpr ExtPoint(double x) : z_(x, 0.0) {}  // NOLINT

  static constexpr ExtPoint infinity() {
    ExtPoint p;
    p.inf_ = true;
    return p;
  }

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }

  /// The finite value; throws for the point at infinity.
  cplx value() const {
    if (inf_) throw Error(ErrorCode::ConfigInvalid, "finite point expected, got infinity");
    return z_;
  }

  friend bool operator==(const ExtPoint& a, const ExtPoint& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.z_ == b.z_);
  }

 private:
  cplx z_{};
  bool inf_ = false;
};

std::string to_string(const ExtPoint& p);

/// Which normal a quantity refers to: n_+ (towards G+) or n_- (towards G-,
/// the left normal for arcs).
enum class Side { Plus, Minus };

inline std::string_view to_string(Side s) { return s == Side::Plus ? "plus" : "minus"; }

}  // namespace gf
