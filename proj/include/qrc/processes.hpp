#pragma once

#include "qrc/channels.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qrc {

/// Geometric causal filters of bounded uniform innovations:
///   V_t = clip(v_scale * sum_j lambda_v^j xi_{t-j} + v_shift, [v_lo, v_hi])
///   Y_t = y_scale * sum_j lambda_y^j xi_{t-j-delay}
/// The target reuses the input innovations unless `independent_target` is set.
struct ProcessSpec {
  double lambda_v = 0.5;
  double lambda_y = 0.5;
  double m_xi = 1.0;
  int delay = 0;
  double v_scale = 1.0;
  double v_shift = 0.0;
  double v_lo = 0.0;
  double v_hi = 1.0;
  double y_scale = 1.0;
  bool independent_target = false;
  /// 0 picks the smallest length with lambda^j < 1e-12 for both filters.
  int truncation = 0;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  [[nodiscard]] int effective_truncation() const;
};

/// ceil(ln(1e-12) / ln(lambda))
int minimum_truncation(double lambda);

struct ProcessConstants {
  double l_v = 0.0;
  double l_y = 0.0;
  double d_wv = 0.0;
  double d_wy = 0.0;
  double c_v = 0.0;
  double c_y = 0.0;
  double w1_v = 0.0;
  double w1_y = 0.0;
  double e_xi = 0.0;
  double m_xi = 0.0;
};

/// L_v = |v_scale|, L_y = |y_scale| lambda_y^{-delay} (the lag shifts the
/// target filter against the weighting sequence), E|xi| = M_xi / 2.
ProcessConstants process_constants(const ProcessSpec& spec);

/// Time order: index 0 is t = -(m - 1), the last entry is t = 0.
struct GeneratedSeries {
  std::vector<double> v;
  std::vector<double> y;
  /// Innovations feeding the series, oldest first; length m + truncation + delay.
  std::vector<double> xi_v;
  std::vector<double> xi_y;  // empty unless the target is independent

  [[nodiscard]] std::size_t size() const { return v.size(); }
};

GeneratedSeries generate_series(const ProcessSpec& spec, std::size_t length, std::uint64_t seed);

/// k >= 2 independent copies; copy j uses derive_seed(seed, j).
std::vector<GeneratedSeries> ghost_samples(const ProcessSpec& spec, int k, std::size_t length, std::uint64_t seed);

/// One draw of Y_0 from its stationary law.
double sample_target(const ProcessSpec& spec, std::uint64_t seed);

/// Header "t,v,y", t running from -(m - 1) to 0.
std::string to_csv(const GeneratedSeries& series);

}  // namespace qrc
