#pragma once

#include "qrc/channels.hpp"
#include "qrc/processes.hpp"
#include "qrc/readouts.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qrc {

enum class LossKind { Absolute, Huber };

/// l(yhat, y) = f(yhat - y) with f(0) = 0 and f L_l-Lipschitz.
struct LossFunction {
  LossKind kind = LossKind::Absolute;
  double delta = 1.0;  // Huber threshold; also its Lipschitz constant

  static LossFunction absolute() { return {LossKind::Absolute, 1.0}; }
  static LossFunction huber(double delta);

  [[nodiscard]] double operator()(double yhat, double y) const;
  [[nodiscard]] double lipschitz() const { return kind == LossKind::Absolute ? 1.0 : delta; }
};

/// Smallest t >= 1 with r^t sqrt2 <= tol.
int washout_length(double r, double tol);

/// Left-to-right fold rho_t = T(v_t, rho_{t-1}). With a domain, every input
/// must lie in it or be exactly 0 (std::domain_error otherwise).
ComplexMatrix evolve(const ReservoirMap& channel, std::span<const double> inputs, const ComplexMatrix& rho_init,
                     const std::optional<InputDomain>& domain = std::nullopt);
DensityMatrix evolve(const ReservoirMap& channel, std::span<const double> inputs, const DensityMatrix& rho_init,
                     const std::optional<InputDomain>& domain = std::nullopt);
/// Starts from I / 2^n.
DensityMatrix evolve(const ReservoirMap& channel, std::span<const double> inputs,
                     const std::optional<InputDomain>& domain = std::nullopt);

/// H(v) = h(state) where the infinite left history is zero-padded: the state
/// is obtained from I / 2^n by washout() zero inputs followed by the history.
class ReservoirFunctional {
 public:
  ReservoirFunctional(ReservoirMapPtr channel, PolynomialReadout readout, double r, double washout_tol = 1e-10);

  [[nodiscard]] const ReservoirMap& channel() const { return *channel_; }
  [[nodiscard]] const PolynomialReadout& readout() const { return readout_; }
  [[nodiscard]] int washout() const { return washout_; }
  [[nodiscard]] double contraction() const { return r_; }
  /// State after the zero padding, before any history.
  [[nodiscard]] const ComplexMatrix& padded_state() const { return padded_; }

  [[nodiscard]] ComplexMatrix state(std::span<const double> history) const;
  [[nodiscard]] double operator()(std::span<const double> history) const;

 private:
  ReservoirMapPtr channel_;
  PolynomialReadout readout_;
  double r_;
  int washout_;
  ComplexMatrix padded_;
};

/// (1/m) sum_{i=0}^{m-1} l(H(V_{-m+1:-i}), Y_{-i}) over the last m entries of
/// the series. With prefix sharing the running state is reused across i.
double empirical_risk(const ReservoirFunctional& h, const GeneratedSeries& series, std::size_t m,
                      const LossFunction& loss, bool prefix_sharing = true);

struct McEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
  std::size_t samples = 0;
};

/// Mean and standard error of the mean.
McEstimate summarize(std::span<const double> samples);

/// E[l(H(V), Y_0)] over n_mc fresh series of length `horizon`.
McEstimate generalisation_error_mc(const ReservoirFunctional& h, const ProcessSpec& spec, const LossFunction& loss,
                                   std::size_t n_mc, std::size_t horizon, std::uint64_t seed);

/// E|l(0, Y_0)| by direct sampling of Y_0.
McEstimate estimate_loss_at_zero(const ProcessSpec& spec, const LossFunction& loss, std::size_t samples,
                                 std::uint64_t seed);

struct RiskEstimate {
  double empirical = 0.0;
  McEstimate generalisation;
  double gap = 0.0;
  std::size_t m = 0;
};

// Readout training ----------------------------------------------------------------

struct BoxLsqOptions {
  double tol = 1e-8;
  int max_iterations = 10000;
  /// Relative eigenvalue floor of the Gram matrix below which the problem is
  /// flagged degenerate.
  double degeneracy_ratio = 1e-12;
};

struct BoxLsqResult {
  Eigen::VectorXd weights;
  double bias = 0.0;
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;
  double gradient_mapping_norm = 0.0;
  std::vector<double> objective;  // 1/(2m) ||Phi w + c - y||^2 per iterate, starting at w = 0, c = 0
};

/// Projected gradient on 1/(2m) ||Phi w + c 1 - y||^2 over w in [0,1]^d,
/// |c| <= c_max with step 1/L, L the top eigenvalue of the scaled Gram of [Phi, 1].
BoxLsqResult fit_box_least_squares(const Eigen::MatrixXd& phi, const Eigen::VectorXd& y, double c_max,
                                   const BoxLsqOptions& options = {});

struct ReadoutSpace {
  int n = 1;
  int r_max = 1;
  double c_max = 1.0;
};

/// Row i holds the monomial features of the state after V_{-m+1:-(m-1-i)}.
Eigen::MatrixXd feature_matrix(const ReservoirFunctional& base, const GeneratedSeries& series, std::size_t m,
                               const std::vector<MultiIndex>& monomials);

struct FitResult {
  PolynomialReadout readout;
  std::size_t theta_index = 0;
  BoxLsqResult lsq;
};

/// Fits one readout per channel and keeps the one with the smallest training
/// objective.
FitResult fit_readout(const std::vector<ReservoirMapPtr>& channels, double r, const GeneratedSeries& series,
                      std::size_t m, const ReadoutSpace& space, const BoxLsqOptions& options = {},
                      double washout_tol = 1e-10);

// Rademacher complexity -------------------------------------------------------------

/// sup over w in [0,1]^d, |C| <= c_max of |a . w + b C|.
double box_supremum(const Eigen::VectorXd& a, double b, double c_max);

struct RademacherEstimate {
  int k = 0;
  int mc_reps = 0;
  double estimate = 0.0;
  double std_err = 0.0;
};

struct RademacherQuery {
  int r_max = 1;
  std::size_t theta_size = 1;  // first theta_size channels of the grid
  int k = 2;                   // first k ghosts
};

/// Monte-Carlo estimate of R_k for the polynomial readout class over several
/// nested (R_max, |Theta|, k) configurations sharing the same ghost draws.
/// Ghost states are obtained from I / 2^n over `horizon` inputs.
std::vector<RademacherEstimate> rademacher_mc_nested(const std::vector<ReservoirMapPtr>& grid, int n, double c_max,
                                                     const ProcessSpec& spec, const std::vector<RademacherQuery>& queries,
                                                     std::size_t horizon, int mc_reps, std::uint64_t seed);

RademacherEstimate rademacher_mc(const std::vector<ReservoirMapPtr>& grid, const ReadoutSpace& space,
                                 const ProcessSpec& spec, int k, std::size_t horizon, int mc_reps, std::uint64_t seed);

}  // namespace qrc
