#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spotplan/scaling.hpp"

namespace spotplan {
namespace {

constexpr int kMaxIterations = 500;
constexpr double kRelativeTolerance = 1e-10;
constexpr int kGridA = 12;
constexpr int kGridB = 12;
constexpr int kGridC = 8;
constexpr std::size_t kStarts = 4;

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

// 1 / (1 + exp(-z)) without overflow for large |z|.
double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double ez = std::exp(z);
  return ez / (1.0 + ez);
}

double model_value(const LogisticParams& p, double n) { return p.c * logistic(p.a * (n - p.b)); }

double sum_squares(const LogisticParams& p, std::span<const SpeedupSample> samples) {
  double ssr = 0.0;
  for (const auto& s : samples) {
    const double r = model_value(p, s.n) - s.speedup;
    ssr += r * r;
  }
  return ssr;
}

bool in_domain(const LogisticParams& p) {
  return std::isfinite(p.a) && std::isfinite(p.b) && std::isfinite(p.c) && p.a > 0.0 &&
         p.b > 0.0 && p.c > 0.0;
}

// Solves A x = rhs by Gaussian elimination with partial pivoting.
bool solve3(Mat3 A, Vec3 rhs, Vec3& x) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(A[r][col]) > std::fabs(A[pivot][col])) pivot = r;
    }
    if (!(std::fabs(A[pivot][col]) > 0.0)) return false;
    std::swap(A[col], A[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = A[r][col] / A[col][col];
      for (int k = col; k < 3; ++k) A[r][k] -= f * A[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double acc = rhs[r];
    for (int k = r + 1; k < 3; ++k) acc -= A[r][k] * x[k];
    x[r] = acc / A[r][r];
  }
  return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
}

struct Refinement {
  LogisticParams params;
  double ssr = 0.0;
  int iterations = 0;
  bool converged = false;
};

Refinement refine(LogisticParams p, std::span<const SpeedupSample> samples, double scale) {
  Refinement out{p, sum_squares(p, samples), 0, false};
  double lambda = 1e-3;

  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    out.iterations = iter;
    if (out.ssr <= 1e-30 * scale) {
      out.converged = true;
      return out;
    }

    Mat3 jtj{};
    Vec3 jtr{};
    for (const auto& s : samples) {
      const double dn = s.n - p.b;
      const double sig = logistic(p.a * dn);
      const double dsig = sig * (1.0 - sig);
      const Vec3 j{p.c * dsig * dn, -p.c * dsig * p.a, sig};
      const double r = p.c * sig - s.speedup;
      for (int i = 0; i < 3; ++i) {
        jtr[i] += j[i] * r;
        for (int k = 0; k < 3; ++k) jtj[i][k] += j[i] * j[k];
      }
    }

    bool accepted = false;
    while (lambda < 1e16) {
      Mat3 damped = jtj;
      for (int i = 0; i < 3; ++i) damped[i][i] += lambda * std::max(jtj[i][i], 1e-300);
      Vec3 step{};
      Vec3 rhs{-jtr[0], -jtr[1], -jtr[2]};
      if (solve3(damped, rhs, step)) {
        LogisticParams trial{p.a + step[0], p.b + step[1], p.c + step[2]};
        if (in_domain(trial)) {
          const double trial_ssr = sum_squares(trial, samples);
          if (trial_ssr < out.ssr) {
            const double change = (out.ssr - trial_ssr) / std::max(out.ssr, 1e-300);
            p = trial;
            out.params = trial;
            out.ssr = trial_ssr;
            lambda = std::max(lambda / 10.0, 1e-12);
            accepted = true;
            if (change < kRelativeTolerance) {
              out.converged = true;
              return out;
            }
            break;
          }
        }
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      // No descent direction left at any damping: numerically stationary.
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace

FitResult fit_logistic(std::span<const SpeedupSample> samples) {
  std::set<int> distinct;
  for (const auto& s : samples) {
    if (s.n < 1) throw std::invalid_argument("speedup sample has n < 1");
    if (!std::isfinite(s.speedup) || s.speedup <= 0.0) {
      throw std::invalid_argument("speedup sample must be positive and finite");
    }
    distinct.insert(s.n);
  }
  if (samples.size() < 4 || distinct.size() < 3) {
    throw InsufficientDataError("logistic fit needs at least 4 samples over 3 distinct node counts (got " +
                                std::to_string(samples.size()) + " samples, " +
                                std::to_string(distinct.size()) + " distinct)");
  }

  int max_n = 0;
  double max_speedup = 0.0;
  double min_speedup = samples.front().speedup;
  double scale = 0.0;
  for (const auto& s : samples) {
    max_n = std::max(max_n, s.n);
    max_speedup = std::max(max_speedup, s.speedup);
    min_speedup = std::min(min_speedup, s.speedup);
    scale += s.speedup * s.speedup;
  }

  struct Seed {
    double ssr;
    LogisticParams params;
  };
  std::vector<Seed> seeds;
  seeds.reserve(kGridA * kGridB * kGridC);
  const double b_hi = 2.0 * max_n;
  for (int ia = 0; ia < kGridA; ++ia) {
    const double a = 0.01 * std::pow(100.0, static_cast<double>(ia) / (kGridA - 1));
    for (int ib = 0; ib < kGridB; ++ib) {
      const double b = 1.0 + (b_hi - 1.0) * ib / (kGridB - 1);
      for (int ic = 0; ic < kGridC; ++ic) {
        const double c = max_speedup * (1.0 + 3.0 * ic / (kGridC - 1));
        const LogisticParams p{a, b, c};
        seeds.push_back({sum_squares(p, samples), p});
      }
    }
  }
  // Stable so that equal-residual seeds keep grid order.
  std::stable_sort(seeds.begin(), seeds.end(),
                   [](const Seed& x, const Seed& y) { return x.ssr < y.ssr; });

  // Converged refinements beat unconverged ones; then lowest residual; then
  // seed order.
  std::optional<Refinement> best;
  int total_iterations = 0;
  for (std::size_t i = 0; i < std::min(kStarts, seeds.size()); ++i) {
    Refinement r = refine(seeds[i].params, samples, scale);
    total_iterations += r.iterations;
    if (!best || (r.converged && !best->converged) ||
        (r.converged == best->converged && r.ssr < best->ssr)) {
      best = r;
    }
  }

  if (!best->converged) {
    throw FitError("logistic fit did not converge within " + std::to_string(kMaxIterations) +
                       " iterations",
                   best->params, best->ssr);
  }
  // Constant data is matched only in the limit (a -> 0 or b -> 0), so any
  // finite answer is an artifact of where the search stopped.
  if (max_speedup - min_speedup <= 1e-12 * max_speedup) {
    throw FitError("speedup does not vary with node count; logistic parameters are not identifiable",
                   best->params, best->ssr);
  }
  return {best->params, best->ssr, total_iterations};
}

std::vector<SpeedupSample> read_speedup_csv(std::istream& in) {
  std::vector<SpeedupSample> samples;
  std::string line;
  int line_no = 0;
  bool header_seen = false;

  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      if (row != "n,speedup") {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": expected header 'n,speedup'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected two columns");
    }
    const std::string_view n_text = trim(row.substr(0, comma));
    const std::string_view s_text = trim(row.substr(comma + 1));

    SpeedupSample s;
    auto [p1, e1] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), s.n);
    auto [p2, e2] = std::from_chars(s_text.data(), s_text.data() + s_text.size(), s.speedup);
    if (e1 != std::errc{} || p1 != n_text.data() + n_text.size() || e2 != std::errc{} ||
        p2 != s_text.data() + s_text.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": malformed sample '" +
                               std::string(row) + "'");
    }
    samples.push_back(s);
  }
  if (!header_seen) throw std::runtime_error("empty speedup file: missing 'n,speedup' header");
  return samples;
}

}  // namespace spotplan
