#include "qrc/learning.hpp"

#include "qrc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qrc {

LossFunction LossFunction::huber(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("LossFunction: Huber delta must be positive");
  return {LossKind::Huber, delta};
}

double LossFunction::operator()(double yhat, double y) const {
  const double x = std::abs(yhat - y);
  if (kind == LossKind::Absolute) return x;
  return x <= delta ? 0.5 * x * x : delta * (x - 0.5 * delta);
}

int washout_length(double r, double tol) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("washout_length: contraction must lie in (0, 1)");
  if (!(tol > 0.0)) throw std::domain_error("washout_length: tolerance must be positive");
  const double exact = (std::log(tol) - std::log(std::sqrt(2.0))) / std::log(r);
  int t = std::max(1, static_cast<int>(std::ceil(exact)));
  // Guard against ceil() of a value a few ulps above an integer.
  if (t > 1 && std::pow(r, t - 1) * std::sqrt(2.0) <= tol) --t;
  return t;
}

ComplexMatrix evolve(const ReservoirMap& channel, std::span<const double> inputs, const ComplexMatrix& rho_init,
                     const std::optional<InputDomain>& domain) {
  ComplexMatrix rho = rho_init;
  for (double v : inputs) {
    if (domain && !domain->admits(v)) {
      throw std::domain_error("evolve: input " + std::to_string(v) + " outside the input domain");
    }
    rho = channel.apply(v, rho);
  }
  return rho;
}

DensityMatrix evolve(const ReservoirMap& channel, std::span<const double> inputs, const DensityMatrix& rho_init,
                     const std::optional<InputDomain>& domain) {
  return DensityMatrix(evolve(channel, inputs, rho_init.matrix(), domain));
}

DensityMatrix evolve(const ReservoirMap& channel, std::span<const double> inputs,
                     const std::optional<InputDomain>& domain) {
  return evolve(channel, inputs, DensityMatrix::maximally_mixed(channel.qubits()), domain);
}

// Functional ------------------------------------------------------------------------

ReservoirFunctional::ReservoirFunctional(ReservoirMapPtr channel, PolynomialReadout readout, double r,
                                         double washout_tol)
    : channel_(std::move(channel)), readout_(std::move(readout)), r_(r), washout_(washout_length(r, washout_tol)) {
  if (!channel_) throw std::invalid_argument("ReservoirFunctional: null channel");
  if (readout_.qubits() != channel_->qubits()) {
    throw std::invalid_argument("ReservoirFunctional: readout and channel qubit counts differ");
  }
  const std::vector<double> zeros(static_cast<std::size_t>(washout_), 0.0);
  padded_ = evolve(*channel_, zeros, DensityMatrix::maximally_mixed(channel_->qubits()).matrix());
}

ComplexMatrix ReservoirFunctional::state(std::span<const double> history) const {
  return evolve(*channel_, history, padded_);
}

double ReservoirFunctional::operator()(std::span<const double> history) const {
  return readout_.evaluate(state(history));
}

double empirical_risk(const ReservoirFunctional& h, const GeneratedSeries& series, std::size_t m,
                      const LossFunction& loss, bool prefix_sharing) {
  if (m < 1 || m > series.size()) {
    throw std::invalid_argument("empirical_risk: m = " + std::to_string(m) + " exceeds the series length " +
                                std::to_string(series.size()));
  }
  const std::size_t offset = series.size() - m;
  const std::span<const double> v(series.v);
  double total = 0.0;
  if (prefix_sharing) {
    ComplexMatrix rho = h.padded_state();
    for (std::size_t idx = offset; idx < series.size(); ++idx) {
      rho = h.channel().apply(series.v[idx], rho);
      total += loss(h.readout().evaluate(rho), series.y[idx]);
    }
  } else {
    for (std::size_t idx = offset; idx < series.size(); ++idx) {
      total += loss(h(v.subspan(offset, idx - offset + 1)), series.y[idx]);
    }
  }
  return total / static_cast<double>(m);
}

McEstimate summarize(std::span<const double> samples) {
  McEstimate out;
  out.samples = samples.size();
  if (samples.empty()) return out;
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  out.estimate = mean;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    const double var = ss / static_cast<double>(samples.size() - 1);
    out.std_err = std::sqrt(var / static_cast<double>(samples.size()));
  }
  return out;
}

McEstimate generalisation_error_mc(const ReservoirFunctional& h, const ProcessSpec& spec, const LossFunction& loss,
                                   std::size_t n_mc, std::size_t horizon, std::uint64_t seed) {
  if (n_mc < 1) throw std::invalid_argument("generalisation_error_mc: n_mc must be >= 1");
  std::vector<double> losses(n_mc);
  parallel_for(n_mc, [&](std::size_t i) {
    const auto s = generate_series(spec, horizon, derive_seed(seed, i));
    losses[i] = loss(h(s.v), s.y.back());
  });
  return summarize(losses);
}

McEstimate estimate_loss_at_zero(const ProcessSpec& spec, const LossFunction& loss, std::size_t samples,
                                 std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("estimate_loss_at_zero: need at least one sample");
  std::vector<double> values(samples);
  parallel_for(samples, [&](std::size_t i) { values[i] = loss(0.0, sample_target(spec, derive_seed(seed, i))); });
  return summarize(values);
}

// Box-constrained least squares -------------------------------------------------------

BoxLsqResult fit_box_least_squares(const Eigen::MatrixXd& phi, const Eigen::VectorXd& y, double c_max,
                                   const BoxLsqOptions& options) {
  const Eigen::Index m = phi.rows();
  const Eigen::Index d = phi.cols();
  if (m < 1 || y.size() != m) throw std::invalid_argument("fit_box_least_squares: feature/target size mismatch");
  if (!(c_max >= 0.0)) throw std::invalid_argument("fit_box_least_squares: c_max must be >= 0");

  Eigen::MatrixXd a(m, d + 1);
  a.leftCols(d) = phi;
  a.col(d).setOnes();
  const double inv_m = 1.0 / static_cast<double>(m);
  const Eigen::MatrixXd gram = inv_m * (a.transpose() * a);
  const Eigen::VectorXd rhs = inv_m * (a.transpose() * y);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double l_max = eig.eigenvalues().maxCoeff();
  const double l_min = eig.eigenvalues().minCoeff();

  BoxLsqResult out;
  out.degenerate = !(l_min > options.degeneracy_ratio * l_max);

  auto project = [&](Eigen::VectorXd& theta) {
    for (Eigen::Index i = 0; i < d; ++i) theta(i) = std::clamp(theta(i), 0.0, 1.0);
    theta(d) = std::clamp(theta(d), -c_max, c_max);
  };
  auto objective = [&](const Eigen::VectorXd& theta) { return 0.5 * inv_m * (a * theta - y).squaredNorm(); };

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
  out.objective.push_back(objective(theta));
  for (int it = 0; it < options.max_iterations; ++it) {
    Eigen::VectorXd next = theta - (gram * theta - rhs) / l_max;
    project(next);
    out.gradient_mapping_norm = l_max * (theta - next).norm();
    if (out.gradient_mapping_norm <= options.tol) {
      out.converged = true;
      break;
    }
    theta = std::move(next);
    out.iterations = it + 1;
    out.objective.push_back(objective(theta));
  }
  out.weights = theta.head(d);
  out.bias = theta(d);
  return out;
}

Eigen::MatrixXd feature_matrix(const ReservoirFunctional& base, const GeneratedSeries& series, std::size_t m,
                               const std::vector<MultiIndex>& monomials) {
  if (m < 1 || m > series.size()) throw std::invalid_argument("feature_matrix: m exceeds the series length");
  const int n = base.channel().qubits();
  const std::size_t offset = series.size() - m;
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(monomials.size()));
  ComplexMatrix rho = base.padded_state();
  for (std::size_t i = 0; i < m; ++i) {
    rho = base.channel().apply(series.v[offset + i], rho);
    phi.row(static_cast<Eigen::Index>(i)) = monomial_features(z_expectations(rho, n), monomials).transpose();
  }
  return phi;
}

FitResult fit_readout(const std::vector<ReservoirMapPtr>& channels, double r, const GeneratedSeries& series,
                      std::size_t m, const ReadoutSpace& space, const BoxLsqOptions& options, double washout_tol) {
  if (channels.empty()) throw std::invalid_argument("fit_readout: empty channel set");
  const auto monomials = enumerate_monomials(space.n, space.r_max);
  const Eigen::Map<const Eigen::VectorXd> all_y(series.y.data(), static_cast<Eigen::Index>(series.y.size()));
  const Eigen::VectorXd y = all_y.tail(static_cast<Eigen::Index>(m));

  std::vector<BoxLsqResult> fits(channels.size());
  parallel_for(channels.size(), [&](std::size_t t) {
    const ReservoirFunctional base(channels[t], PolynomialReadout(space.n, space.r_max, space.c_max), r, washout_tol);
    fits[t] = fit_box_least_squares(feature_matrix(base, series, m, monomials), y, space.c_max, options);
  });

  std::size_t best = 0;
  for (std::size_t t = 1; t < fits.size(); ++t) {
    if (fits[t].objective.back() < fits[best].objective.back()) best = t;
  }
  PolynomialReadout::Weights weights;
  for (std::size_t i = 0; i < monomials.size(); ++i) weights[monomials[i]] = fits[best].weights(static_cast<Eigen::Index>(i));
  return {PolynomialReadout(space.n, space.r_max, space.r_max, fits[best].bias, space.c_max, std::move(weights)), best,
          std::move(fits[best])};
}

// Rademacher ----------------------------------------------------------------------------

double box_supremum(const Eigen::VectorXd& a, double b, double c_max) {
  const double plus = a.cwiseMax(0.0).sum();
  const double minus = (-a).cwiseMax(0.0).sum();
  return std::max(plus, minus) + c_max * std::abs(b);
}

std::vector<RademacherEstimate> rademacher_mc_nested(const std::vector<ReservoirMapPtr>& grid, int n, double c_max,
                                                     const ProcessSpec& spec, const std::vector<RademacherQuery>& queries,
                                                     std::size_t horizon, int mc_reps, std::uint64_t seed) {
  if (queries.empty()) return {};
  if (mc_reps < 1) throw std::invalid_argument("rademacher_mc: mc_reps must be >= 1");
  int k_max = 0;
  int r_top = 0;
  std::size_t t_max = 0;
  for (const auto& q : queries) {
    if (q.k < 2) throw std::invalid_argument("rademacher_mc: k must be >= 2");
    if (q.theta_size < 1 || q.theta_size > grid.size()) {
      throw std::invalid_argument("rademacher_mc: theta_size must lie in [1, grid size]");
    }
    if (q.r_max < 1) throw std::invalid_argument("rademacher_mc: r_max must be >= 1");
    k_max = std::max(k_max, q.k);
    r_top = std::max(r_top, q.r_max);
    t_max = std::max(t_max, q.theta_size);
  }
  for (std::size_t t = 0; t < t_max; ++t) {
    if (grid[t]->qubits() != n) throw std::invalid_argument("rademacher_mc: channel qubit count differs from n");
  }
  const auto monomials = enumerate_monomials(n, r_top);
  const DensityMatrix start = DensityMatrix::maximally_mixed(n);

  const auto reps = static_cast<std::size_t>(mc_reps);
  std::vector<std::vector<double>> values(queries.size(), std::vector<double>(reps));
  parallel_for(reps, [&](std::size_t rep) {
    const std::uint64_t rep_seed = derive_seed(seed, rep);
    const auto ghosts = ghost_samples(spec, k_max, horizon, derive_seed(rep_seed, 0));
    std::mt19937_64 rng(derive_seed(rep_seed, 1));
    std::bernoulli_distribution coin(0.5);
    std::vector<double> signs(static_cast<std::size_t>(k_max));
    for (double& s : signs) s = coin(rng) ? 1.0 : -1.0;

    // features[t][j]: monomials of the final state of ghost j under channel t.
    std::vector<std::vector<Eigen::VectorXd>> features(t_max);
    for (std::size_t t = 0; t < t_max; ++t) {
      features[t].reserve(static_cast<std::size_t>(k_max));
      for (int j = 0; j < k_max; ++j) {
        const ComplexMatrix rho = evolve(*grid[t], ghosts[static_cast<std::size_t>(j)].v, start.matrix());
        features[t].push_back(monomial_features(z_expectations(rho, n), monomials));
      }
    }
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      const auto& q = queries[qi];
      const auto dim = static_cast<Eigen::Index>(binomial(n + q.r_max, q.r_max) - 1);
      double b = 0.0;
      for (int j = 0; j < q.k; ++j) b += signs[static_cast<std::size_t>(j)];
      double sup = 0.0;
      for (std::size_t t = 0; t < q.theta_size; ++t) {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(dim);
        for (int j = 0; j < q.k; ++j) a += signs[static_cast<std::size_t>(j)] * features[t][static_cast<std::size_t>(j)].head(dim);
        sup = std::max(sup, box_supremum(a, b, c_max));
      }
      values[qi][rep] = sup / static_cast<double>(q.k);
    }
  });

  std::vector<RademacherEstimate> out;
  out.reserve(queries.size());
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const auto s = summarize(values[qi]);
    out.push_back({queries[qi].k, mc_reps, s.estimate, s.std_err});
  }
  return out;
}

RademacherEstimate rademacher_mc(const std::vector<ReservoirMapPtr>& grid, const ReadoutSpace& space,
                                 const ProcessSpec& spec, int k, std::size_t horizon, int mc_reps, std::uint64_t seed) {
  return rademacher_mc_nested(grid, space.n, space.c_max, spec, {{space.r_max, grid.size(), k}}, horizon, mc_reps,
                              seed)
      .front();
}

}  // namespace qrc
