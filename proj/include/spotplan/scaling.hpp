#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spotplan {

/// Logistic speedup curve S(n) = c / (1 + exp(-a (n - b))).
///   a: growth rate, b: inflection node count, c: asymptotic speedup.
struct LogisticParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// Throws std::invalid_argument unless a, b, c are finite and positive.
  void validate() const;

  bool operator==(const LogisticParams&) const = default;
};

/// Tabulated average of the three image-model regressions measured on
/// g4dn.xlarge. Not exactly the mean of the rows below (c differs by 0.0028).
inline constexpr LogisticParams kReferenceAverageParams{0.1339, 12.8742, 6.1766};

struct ReferenceWorkload {
  std::string_view name;
  LogisticParams params;
};

/// Per-model regression rows the average above was derived from.
inline constexpr std::array<ReferenceWorkload, 3> kReferenceWorkloads{{
    {"ResNet18", {0.1222, 11.7094, 4.0927}},
    {"ResNet152", {0.1414, 13.0476, 6.8803}},
    {"EfficientNet-V2L", {0.1380, 13.8657, 7.5652}},
}};

enum class ScalingProvenance { ReferenceAverage, PerInstance, Fitted };

class ScalingModel {
 public:
  explicit ScalingModel(LogisticParams params,
                        ScalingProvenance provenance = ScalingProvenance::Fitted);

  static ScalingModel reference_average() {
    return ScalingModel(kReferenceAverageParams, ScalingProvenance::ReferenceAverage);
  }

  const LogisticParams& params() const { return params_; }
  ScalingProvenance provenance() const { return provenance_; }

 private:
  LogisticParams params_;
  ScalingProvenance provenance_;
};

/// The logistic itself.
double s_average(const ScalingModel& model, double n);

/// Tangent of the logistic at its inflection n = b: c/2 + (a c / 4)(n - b).
double tangent_speedup(const ScalingModel& model, double n);

/// Tangent below (and at) the inflection point, logistic above it.
double s_hybrid(const ScalingModel& model, double n);

/// K(n) = S_hybrid(n) / n. Not clamped to 1.
double scaling_factor(const ScalingModel& model, int n);

/// Component-wise arithmetic mean. Throws std::invalid_argument when empty.
LogisticParams average_params(std::span<const LogisticParams> models);

// ---------------------------------------------------------------------------
// Fitting

struct SpeedupSample {
  int n = 1;
  double speedup = 1.0;
};

struct FitResult {
  LogisticParams params;
  double residual = 0.0;  // sum of squared residuals
  int iterations = 0;
};

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when refinement hits the iteration cap, or when the samples are
/// flat and no finite parameters fit them.
/// Carries the best iterate seen.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, LogisticParams best, double residual)
      : std::runtime_error(what), best_(best), residual_(residual) {}

  const LogisticParams& best() const { return best_; }
  double residual() const { return residual_; }

 private:
  LogisticParams best_;
  double residual_;
};

/// Least-squares fit of the logistic to speedup samples.
///
/// A coarse grid over a in [0.01, 1], b in [1, 2 max n], c in
/// [max speedup, 4 max speedup] seeds a handful of damped Gauss-Newton
/// (Levenberg-Marquardt) refinements; the lowest-residual one wins. Fully
/// deterministic. Requires >= 4 samples over >= 3 distinct n.
FitResult fit_logistic(std::span<const SpeedupSample> samples);

/// Reads `n,speedup` CSV (header required). Throws std::runtime_error with the
/// offending line number on malformed rows.
std::vector<SpeedupSample> read_speedup_csv(std::istream& in);

}  // namespace spotplan
