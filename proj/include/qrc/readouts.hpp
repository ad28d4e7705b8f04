#pragma once

#include "qrc/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qrc {

/// Exponent vector (r_1, ..., r_n) of a monomial in the single-qubit Z
/// expectations.
struct MultiIndex {
  std::vector<int> exponents;

  [[nodiscard]] int degree() const;
  bool operator==(const MultiIndex&) const = default;
};

/// Graded order: lower total degree first, then larger leading exponents first,
/// so (1,0) < (0,1) < (2,0) < (1,1) < (0,2).
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

std::uint64_t binomial(int n, int k);

/// All exponent vectors with 1 <= degree <= r in graded order;
/// C(n + r, r) - 1 entries.
std::vector<MultiIndex> enumerate_monomials(int n, int r);

/// tr[Z_i A] for each qubit i (qubit 0 = leading tensor factor).
Eigen::VectorXd z_expectations(const ComplexMatrix& a, int n);
inline Eigen::VectorXd z_expectations(const DensityMatrix& rho, int n) { return z_expectations(rho.matrix(), n); }

/// prod_i z_i^{r_i} for every monomial, in the given order.
Eigen::VectorXd monomial_features(const Eigen::VectorXd& z, const std::vector<MultiIndex>& monomials);

struct ReadoutConstants {
  double l_h_bar = 0.0;  // Lipschitz bound over the class
  double l_h0 = 0.0;     // bound on |h(0)|
};

/// C + sum_alpha w_alpha prod_i <Z_i>^{alpha_i}, weights in [0, 1], |C| <= C_max.
class PolynomialReadout {
 public:
  using Weights = std::map<MultiIndex, double, GradedLexLess>;

  /// Zero readout (all weights 0, C = 0) of active degree r_max.
  PolynomialReadout(int n, int r_max, double c_max);
  PolynomialReadout(int n, int r_max, int r, double c, double c_max, Weights weights);

  [[nodiscard]] int qubits() const { return n_; }
  [[nodiscard]] int max_degree() const { return r_max_; }
  [[nodiscard]] int degree() const { return r_; }
  [[nodiscard]] double bias() const { return c_; }
  [[nodiscard]] double bias_bound() const { return c_max_; }
  [[nodiscard]] const Weights& weights() const { return weights_; }

  [[nodiscard]] double evaluate(const ComplexMatrix& a) const;
  [[nodiscard]] double evaluate(const DensityMatrix& rho) const { return evaluate(rho.matrix()); }
  [[nodiscard]] double evaluate_z(const Eigen::VectorXd& z) const;

  [[nodiscard]] ReadoutConstants constants() const;

 private:
  int n_;
  int r_max_;
  int r_;
  double c_;
  double c_max_;
  Weights weights_;
};

inline double eval_poly(const PolynomialReadout& h, const DensityMatrix& rho) { return h.evaluate(rho); }

/// C + prod_j (sum_i w_{ij} <Z_i>_{rho_j}) over ell blocks of n / ell qubits.
class SpatialMultiplexReadout {
 public:
  SpatialMultiplexReadout(int n, int ell, int ell_max, double c, double c_max,
                          std::vector<std::vector<double>> block_weights);

  [[nodiscard]] int qubits() const { return n_; }
  [[nodiscard]] int blocks() const { return ell_; }
  [[nodiscard]] int block_qubits() const { return n_ / ell_; }
  [[nodiscard]] int max_blocks() const { return ell_max_; }
  [[nodiscard]] double bias() const { return c_; }
  [[nodiscard]] double bias_bound() const { return c_max_; }
  [[nodiscard]] const std::vector<std::vector<double>>& block_weights() const { return block_weights_; }

  /// One state per block, each of dimension 2^(n / ell).
  [[nodiscard]] double evaluate(const std::vector<DensityMatrix>& block_states) const;
  /// Same readout on the joint n-qubit operator.
  [[nodiscard]] double evaluate_joint(const ComplexMatrix& a) const;

  /// Expanded degree-ell polynomial with weights w_{i_1} ... w_{i_ell}.
  [[nodiscard]] PolynomialReadout to_polynomial() const;

  [[nodiscard]] ReadoutConstants constants() const;

 private:
  int n_;
  int ell_;
  int ell_max_;
  double c_;
  double c_max_;
  std::vector<std::vector<double>> block_weights_;
};

inline double eval_sm(const SpatialMultiplexReadout& h, const std::vector<DensityMatrix>& blocks) {
  return h.evaluate(blocks);
}

/// n sqrt(2^n) R_max (C(n + R_max, R_max) - 1)
double lipschitz_bound_poly(int n, int r_max);
/// ell_max^{5/2} sqrt(2^n)
double lipschitz_bound_sm(int n, int ell_max);

/// {n, r_max, r, c_max, c, terms: [{exponents, weight}]} with terms in graded order.
std::string to_json(const PolynomialReadout& h);
PolynomialReadout polynomial_readout_from_json(const std::string& text);

}  // namespace qrc
