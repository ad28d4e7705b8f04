#include "qrc/processes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qrc {

int minimum_truncation(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("minimum_truncation: lambda must lie in (0, 1)");
  return static_cast<int>(std::ceil(std::log(1e-12) / std::log(lambda)));
}

void ProcessSpec::validate() const {
  if (!(lambda_v > 0.0 && lambda_v < 1.0)) throw std::invalid_argument("ProcessSpec: lambda_v must lie in (0, 1)");
  if (!(lambda_y > 0.0 && lambda_y < 1.0)) throw std::invalid_argument("ProcessSpec: lambda_y must lie in (0, 1)");
  if (!(m_xi > 0.0) || !std::isfinite(m_xi)) throw std::invalid_argument("ProcessSpec: m_xi must be positive");
  if (delay < 0) throw std::invalid_argument("ProcessSpec: delay must be >= 0");
  if (!(v_lo <= v_hi)) throw std::invalid_argument("ProcessSpec: need v_lo <= v_hi");
  if (!std::isfinite(v_scale) || !std::isfinite(v_shift) || !std::isfinite(y_scale)) {
    throw std::invalid_argument("ProcessSpec: non-finite affine map");
  }
  if (truncation != 0 &&
      truncation < std::max(minimum_truncation(lambda_v), minimum_truncation(lambda_y))) {
    throw std::invalid_argument("ProcessSpec: truncation shorter than the 1e-12 cutoff");
  }
}

int ProcessSpec::effective_truncation() const {
  if (truncation != 0) return truncation;
  return std::max(minimum_truncation(lambda_v), minimum_truncation(lambda_y));
}

ProcessConstants process_constants(const ProcessSpec& spec) {
  spec.validate();
  ProcessConstants c;
  c.m_xi = spec.m_xi;
  c.e_xi = spec.m_xi / 2.0;
  c.d_wv = spec.lambda_v;
  c.d_wy = spec.lambda_y;
  c.w1_v = 1.0 / (1.0 - spec.lambda_v);
  c.w1_y = 1.0 / (1.0 - spec.lambda_y);
  c.l_v = std::abs(spec.v_scale);
  c.l_y = std::abs(spec.y_scale) * std::pow(spec.lambda_y, -spec.delay);
  c.c_v = 2.0 * c.l_v * c.e_xi / (1.0 - c.d_wv);
  c.c_y = 2.0 * c.l_y * c.e_xi / (1.0 - c.d_wy);
  return c;
}

namespace {

std::vector<double> uniform_innovations(std::mt19937_64& rng, double m_xi, std::size_t count) {
  std::uniform_real_distribution<double> uniform(-m_xi, m_xi);
  std::vector<double> xi(count);
  for (double& x : xi) x = uniform(rng);
  return xi;
}

// sum_{j=0}^{trunc} lambda^j xi[pos - j]
double geometric_filter(const std::vector<double>& xi, std::size_t pos, double lambda, int trunc) {
  double acc = 0.0;
  double weight = 1.0;
  for (int j = 0; j <= trunc; ++j) {
    acc += weight * xi[pos - static_cast<std::size_t>(j)];
    weight *= lambda;
  }
  return acc;
}

}  // namespace

GeneratedSeries generate_series(const ProcessSpec& spec, std::size_t length, std::uint64_t seed) {
  spec.validate();
  if (length < 1) throw std::invalid_argument("generate_series: length must be >= 1");
  const int trunc = spec.effective_truncation();
  const std::size_t lead = static_cast<std::size_t>(trunc + spec.delay);
  const std::size_t count = length + lead;

  std::mt19937_64 rng(seed);
  GeneratedSeries s;
  s.xi_v = uniform_innovations(rng, spec.m_xi, count);
  if (spec.independent_target) s.xi_y = uniform_innovations(rng, spec.m_xi, count);
  const auto& target_xi = spec.independent_target ? s.xi_y : s.xi_v;

  s.v.resize(length);
  s.y.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t pos = i + lead;
    const double raw = spec.v_scale * geometric_filter(s.xi_v, pos, spec.lambda_v, trunc) + spec.v_shift;
    s.v[i] = std::clamp(raw, spec.v_lo, spec.v_hi);
    s.y[i] = spec.y_scale * geometric_filter(target_xi, pos - static_cast<std::size_t>(spec.delay), spec.lambda_y, trunc);
  }
  return s;
}

std::vector<GeneratedSeries> ghost_samples(const ProcessSpec& spec, int k, std::size_t length, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("ghost_samples: k must be >= 2");
  std::vector<GeneratedSeries> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) out.push_back(generate_series(spec, length, derive_seed(seed, static_cast<std::uint64_t>(j))));
  return out;
}

double sample_target(const ProcessSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int trunc = spec.effective_truncation();
  std::mt19937_64 rng(seed);
  const auto xi = uniform_innovations(rng, spec.m_xi, static_cast<std::size_t>(trunc) + 1);
  return spec.y_scale * geometric_filter(xi, xi.size() - 1, spec.lambda_y, trunc);
}

std::string to_csv(const GeneratedSeries& series) {
  std::ostringstream out;
  out.precision(17);
  out << "t,v,y\n";
  const auto m = static_cast<long long>(series.size());
  for (long long i = 0; i < m; ++i) {
    out << (i - (m - 1)) << ',' << series.v[static_cast<std::size_t>(i)] << ',' << series.y[static_cast<std::size_t>(i)]
        << '\n';
  }
  return out.str();
}

}  // namespace qrc
