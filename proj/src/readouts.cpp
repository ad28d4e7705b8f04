#include "qrc/readouts.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qrc {

int MultiIndex::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(b.exponents.begin(), b.exponents.end(), a.exponents.begin(),
                                      a.exponents.end());
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

namespace {

void fill_degree(int remaining, std::size_t pos, std::vector<int>& current, std::vector<MultiIndex>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.push_back({current});
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[pos] = e;
    fill_degree(remaining - e, pos + 1, current, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_monomials(int n, int r) {
  if (n < 1 || r < 1) throw std::invalid_argument("enumerate_monomials: need n >= 1 and r >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  for (int d = 1; d <= r; ++d) fill_degree(d, 0, current, out);
  return out;
}

Eigen::VectorXd z_expectations(const ComplexMatrix& a, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  if (a.rows() != d || a.cols() != d) {
    throw std::invalid_argument("z_expectations: operator dimension does not match " + std::to_string(n) + " qubits");
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double p = a(k, k).real();
    for (int i = 0; i < n; ++i) {
      const bool one = (k >> (n - 1 - i)) & 1;
      z(i) += one ? -p : p;
    }
  }
  return z;
}

Eigen::VectorXd monomial_features(const Eigen::VectorXd& z, const std::vector<MultiIndex>& monomials) {
  Eigen::VectorXd phi(static_cast<Eigen::Index>(monomials.size()));
  for (std::size_t m = 0; m < monomials.size(); ++m) {
    double value = 1.0;
    const auto& e = monomials[m].exponents;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int p = 0; p < e[i]; ++p) value *= z(static_cast<Eigen::Index>(i));
    }
    phi(static_cast<Eigen::Index>(m)) = value;
  }
  return phi;
}

// Polynomial readout ------------------------------------------------------------

PolynomialReadout::PolynomialReadout(int n, int r_max, double c_max)
    : PolynomialReadout(n, r_max, r_max, 0.0, c_max, {}) {}

PolynomialReadout::PolynomialReadout(int n, int r_max, int r, double c, double c_max, Weights weights)
    : n_(n), r_max_(r_max), r_(r), c_(c), c_max_(c_max), weights_(std::move(weights)) {
  if (n_ < 1 || r_max_ < 1 || r_ < 1 || r_ > r_max_) {
    throw std::invalid_argument("PolynomialReadout: need n >= 1 and 1 <= r <= r_max");
  }
  if (!(c_max_ >= 0.0) || !(std::abs(c_) <= c_max_)) {
    throw std::invalid_argument("PolynomialReadout: bias violates |C| <= C_max");
  }
  for (const auto& [index, w] : weights_) {
    if (static_cast<int>(index.exponents.size()) != n_) {
      throw std::invalid_argument("PolynomialReadout: exponent vector length differs from n");
    }
    const int deg = index.degree();
    if (deg < 1 || deg > r_ || *std::min_element(index.exponents.begin(), index.exponents.end()) < 0) {
      throw std::invalid_argument("PolynomialReadout: monomial degree outside [1, r]");
    }
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("PolynomialReadout: weight outside [0, 1]");
  }
}

double PolynomialReadout::evaluate_z(const Eigen::VectorXd& z) const {
  double value = c_;
  for (const auto& [index, w] : weights_) {
    if (w == 0.0) continue;
    double term = w;
    for (int i = 0; i < n_; ++i) {
      for (int p = 0; p < index.exponents[static_cast<std::size_t>(i)]; ++p) term *= z(i);
    }
    value += term;
  }
  return value;
}

double PolynomialReadout::evaluate(const ComplexMatrix& a) const { return evaluate_z(z_expectations(a, n_)); }

ReadoutConstants PolynomialReadout::constants() const { return {lipschitz_bound_poly(n_, r_max_), c_max_}; }

// Spatial multiplexing ----------------------------------------------------------

SpatialMultiplexReadout::SpatialMultiplexReadout(int n, int ell, int ell_max, double c, double c_max,
                                                 std::vector<std::vector<double>> block_weights)
    : n_(n), ell_(ell), ell_max_(ell_max), c_(c), c_max_(c_max), block_weights_(std::move(block_weights)) {
  if (n_ < 1 || ell_ < 1 || ell_ > ell_max_ || n_ % ell_ != 0) {
    throw std::invalid_argument("SpatialMultiplexReadout: need 1 <= ell <= ell_max and ell | n");
  }
  if (!(c_max_ >= 0.0) || !(std::abs(c_) <= c_max_)) {
    throw std::invalid_argument("SpatialMultiplexReadout: bias violates |C| <= C_max");
  }
  if (static_cast<int>(block_weights_.size()) != ell_) {
    throw std::invalid_argument("SpatialMultiplexReadout: expected one weight vector per block");
  }
  for (const auto& block : block_weights_) {
    if (static_cast<int>(block.size()) != n_ / ell_) {
      throw std::invalid_argument("SpatialMultiplexReadout: block weight vector must have n / ell entries");
    }
    for (double w : block) {
      if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("SpatialMultiplexReadout: weight outside [0, 1]");
    }
  }
}

double SpatialMultiplexReadout::evaluate(const std::vector<DensityMatrix>& block_states) const {
  if (static_cast<int>(block_states.size()) != ell_) {
    throw std::invalid_argument("SpatialMultiplexReadout: expected " + std::to_string(ell_) + " block states");
  }
  const int q = block_qubits();
  double product = 1.0;
  for (int j = 0; j < ell_; ++j) {
    const Eigen::VectorXd z = z_expectations(block_states[static_cast<std::size_t>(j)], q);
    double linear = 0.0;
    for (int i = 0; i < q; ++i) linear += block_weights_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * z(i);
    product *= linear;
  }
  return c_ + product;
}

double SpatialMultiplexReadout::evaluate_joint(const ComplexMatrix& a) const {
  const Eigen::VectorXd z = z_expectations(a, n_);
  const int q = block_qubits();
  double product = 1.0;
  for (int j = 0; j < ell_; ++j) {
    double linear = 0.0;
    for (int i = 0; i < q; ++i) linear += block_weights_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * z(j * q + i);
    product *= linear;
  }
  return c_ + product;
}

PolynomialReadout SpatialMultiplexReadout::to_polynomial() const {
  const int q = block_qubits();
  PolynomialReadout::Weights weights;
  // Odometer over one qubit choice per block.
  std::vector<int> choice(static_cast<std::size_t>(ell_), 0);
  while (true) {
    MultiIndex index{std::vector<int>(static_cast<std::size_t>(n_), 0)};
    double w = 1.0;
    for (int j = 0; j < ell_; ++j) {
      const int i = choice[static_cast<std::size_t>(j)];
      index.exponents[static_cast<std::size_t>(j * q + i)] = 1;
      w *= block_weights_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    weights[index] = w;
    int j = ell_ - 1;
    while (j >= 0 && ++choice[static_cast<std::size_t>(j)] == q) choice[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
  }
  return PolynomialReadout(n_, ell_, ell_, c_, c_max_, std::move(weights));
}

ReadoutConstants SpatialMultiplexReadout::constants() const { return {lipschitz_bound_sm(n_, ell_max_), c_max_}; }

double lipschitz_bound_poly(int n, int r_max) {
  if (n < 1 || r_max < 1) throw std::invalid_argument("lipschitz_bound_poly: need n >= 1 and r_max >= 1");
  const double count = static_cast<double>(binomial(n + r_max, r_max) - 1);
  return static_cast<double>(n) * std::sqrt(std::ldexp(1.0, n)) * static_cast<double>(r_max) * count;
}

double lipschitz_bound_sm(int n, int ell_max) {
  if (n < 1 || ell_max < 1) throw std::invalid_argument("lipschitz_bound_sm: need n >= 1 and ell_max >= 1");
  return std::pow(static_cast<double>(ell_max), 2.5) * std::sqrt(std::ldexp(1.0, n));
}

// Serialisation -------------------------------------------------------------------

std::string to_json(const PolynomialReadout& h) {
  nlohmann::ordered_json j;
  j["n"] = h.qubits();
  j["r_max"] = h.max_degree();
  j["r"] = h.degree();
  j["c_max"] = h.bias_bound();
  j["c"] = h.bias();
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [index, w] : h.weights()) {
    j["terms"].push_back({{"exponents", index.exponents}, {"weight", w}});
  }
  return j.dump(2);
}

PolynomialReadout polynomial_readout_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PolynomialReadout::Weights weights;
  for (const auto& term : j.at("terms")) {
    MultiIndex index{term.at("exponents").get<std::vector<int>>()};
    if (!weights.emplace(std::move(index), term.at("weight").get<double>()).second) {
      throw std::invalid_argument("polynomial_readout_from_json: duplicate monomial");
    }
  }
  const int r_max = j.at("r_max").get<int>();
  return PolynomialReadout(j.at("n").get<int>(), r_max, j.value("r", r_max), j.at("c").get<double>(),
                           j.at("c_max").get<double>(), std::move(weights));
}

}  // namespace qrc
