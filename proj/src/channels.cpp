#include "qrc/channels.hpp"

#include <cmath>
#include <random>
#include <string>

namespace qrc {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Superoperator ReservoirMap::superoperator(double v) const {
  return to_superoperator([this, v](const ComplexMatrix& a) { return apply(v, a); }, dim());
}

// PTR ----------------------------------------------------------------------------

double PtrParams::coupling(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j > n || i == j) {
    throw std::out_of_range("PtrParams: no coupling between qubits " + std::to_string(i) + " and " + std::to_string(j));
  }
  if (couplings.size() != coupling_count(n)) {
    throw std::invalid_argument("PtrParams: expected " + std::to_string(coupling_count(n)) + " couplings, got " +
                                std::to_string(couplings.size()));
  }
  // Row i holds pairs (i, i+1..n); rows 0..i-1 hold n, n-1, ... entries.
  const std::size_t row_start = static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * n - i + 1) / 2;
  return couplings[row_start + static_cast<std::size_t>(j - i - 1)];
}

ComplexMatrix build_xy_hamiltonian(const PtrParams& params) {
  if (params.n < 1) throw std::invalid_argument("build_xy_hamiltonian: n must be >= 1");
  const int total = params.n + 1;
  const Eigen::Index d = Eigen::Index{1} << total;
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) {
      const double coupling = params.coupling(i, j);
      if (coupling == 0.0) continue;
      h += coupling * (pauli(PauliAxis::X, i, total) * pauli(PauliAxis::X, j, total) +
                       pauli(PauliAxis::Y, i, total) * pauli(PauliAxis::Y, j, total));
    }
    if (params.gamma != 0.0) h += params.gamma * pauli(PauliAxis::Z, i, total);
  }
  return h;
}

PtrChannel::PtrChannel(PtrParams params) : params_(std::move(params)) {
  if (!std::isfinite(params_.gamma) || !std::isfinite(params_.tau) || params_.tau < 0.0) {
    throw std::invalid_argument("PtrChannel: gamma must be finite and tau >= 0");
  }
  for (double c : params_.couplings) {
    if (!std::isfinite(c)) throw std::invalid_argument("PtrChannel: non-finite coupling");
  }
  unitary_ = hermitian_exp(build_xy_hamiltonian(params_), params_.tau);
  const Eigen::Index d = dim();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) blocks_[a][b] = unitary_.block(a * d, b * d, d, d);
  }
}

std::pair<ComplexMatrix, ComplexMatrix> PtrChannel::split(const ComplexMatrix& a) const {
  if (a.rows() != dim() || a.cols() != dim()) {
    throw std::invalid_argument("PtrChannel: operator dimension " + std::to_string(a.rows()) + " != " +
                                std::to_string(dim()));
  }
  ComplexMatrix from_zero = blocks_[0][0] * a * blocks_[0][0].adjoint();
  from_zero.noalias() += blocks_[1][0] * a * blocks_[1][0].adjoint();
  ComplexMatrix from_one = blocks_[0][1] * a * blocks_[0][1].adjoint();
  from_one.noalias() += blocks_[1][1] * a * blocks_[1][1].adjoint();
  return {std::move(from_zero), std::move(from_one)};
}

ComplexMatrix PtrChannel::apply(double v, const ComplexMatrix& a) const {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error("PtrChannel: input " + std::to_string(v) + " outside [0, 1]");
  }
  auto [from_zero, from_one] = split(a);
  return v * from_zero + (1.0 - v) * from_one;
}

double ptr_epsilon_limit() { return std::sqrt(std::sqrt(2.0) - 1.0); }

ChannelConstants ptr_constants(double epsilon) {
  const double s = ptr_epsilon_limit();
  if (!(epsilon > 0.0 && epsilon < s)) {
    throw std::domain_error("ptr_constants: epsilon must lie in (0, sqrt(sqrt2 - 1))");
  }
  return {2.0 * std::sqrt(2.0) * (epsilon * epsilon - epsilon * s) + 1.0, 2.0};
}

InputDomain ptr_input_domain(double epsilon) {
  const double s = ptr_epsilon_limit();
  if (!(epsilon > 0.0 && epsilon < s)) {
    throw std::domain_error("ptr_input_domain: epsilon must lie in (0, sqrt(sqrt2 - 1))");
  }
  return {0.5 * (1.0 - s) + epsilon, 0.5 * (1.0 + s) - epsilon, epsilon};
}

// RRR ------------------------------------------------------------------------------

BaseChannel::BaseChannel(double r, ComplexMatrix u, DensityMatrix sigma)
    : r_(r), u_(std::move(u)), sigma_(std::move(sigma)), u_adj_(u_.adjoint()) {}

BaseChannel BaseChannel::unchecked(double r, ComplexMatrix u, DensityMatrix sigma) {
  return {r, std::move(u), std::move(sigma)};
}

BaseChannel make_base_channel(double r, ComplexMatrix u, DensityMatrix sigma) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("make_base_channel: contraction must lie in (0, 1)");
  if (u.rows() != sigma.dim() || u.cols() != sigma.dim()) {
    throw std::invalid_argument("make_base_channel: unitary and reset state dimensions differ");
  }
  const double dev = (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
  if (dev > 1e-10) throw std::invalid_argument("make_base_channel: u is not unitary");
  return BaseChannel::unchecked(r, std::move(u), std::move(sigma));
}

ComplexMatrix BaseChannel::apply(const ComplexMatrix& a) const {
  ComplexMatrix out = r_ * (u_ * a * u_adj_);
  out += ((1.0 - r_) * a.trace()) * sigma_.matrix();
  return out;
}

ComplexMatrix random_unitary(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = gauss(rng);
      g(i, j) = Complex(re, gauss(rng));
    }
  }
  return hermitian_exp(hermitian_part(g), 1.0);
}

RrrChannel::RrrChannel(RrrParams params) : params_(std::move(params)) {
  const auto& p = params_;
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw std::domain_error("RrrChannel: alpha must lie in (0, 1)");
  const double r0 = p.t0.contraction();
  const double r1 = p.t1.contraction();
  if (!(r0 + r1 < 1.0)) throw std::domain_error("RrrChannel: r0 + r1 must be < 1");
  if (r0 < r1) throw std::domain_error("RrrChannel: unequal contractions require r0 > r1");
  if (p.t0 == p.t1) throw std::invalid_argument("RrrChannel: T0 and T1 must differ");
  if (p.t0.reset_state().dim() != p.sigma.dim() || p.t1.reset_state().dim() != p.sigma.dim()) {
    throw std::invalid_argument("RrrChannel: base channel dimension mismatch");
  }
}

RrrChannel RrrChannel::unchecked(RrrParams params) { return {std::move(params), NoCheck{}}; }

ComplexMatrix RrrChannel::apply(double v, const ComplexMatrix& a) const {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error("RrrChannel: input " + std::to_string(v) + " outside [0, 1]");
  }
  if (a.rows() != dim() || a.cols() != dim()) {
    throw std::invalid_argument("RrrChannel: operator dimension " + std::to_string(a.rows()) + " != " +
                                std::to_string(dim()));
  }
  const double keep = 1.0 - params_.alpha;
  ComplexMatrix out = (keep * v) * params_.t0.apply(a);
  out += (keep * (1.0 - v)) * params_.t1.apply(a);
  out += (params_.alpha * a.trace()) * params_.sigma.matrix();
  return out;
}

ChannelConstants rrr_constants(double alpha_min, double r0, double r1, double epsilon) {
  if (!(alpha_min > 0.0 && alpha_min < 1.0)) throw std::domain_error("rrr_constants: alpha_min must lie in (0, 1)");
  if (!(r0 > 0.0 && r1 > 0.0 && r0 + r1 < 1.0)) throw std::domain_error("rrr_constants: need r0, r1 > 0, r0 + r1 < 1");
  if (r0 < r1) throw std::domain_error("rrr_constants: unequal contractions require r0 > r1");
  if (!(epsilon > 0.0 && epsilon < 0.25)) throw std::domain_error("rrr_constants: epsilon must lie in (0, 1/4)");
  const double l_r = 2.0 * (1.0 - alpha_min);
  if (r0 == r1) return {(1.0 - alpha_min) * r0, l_r};
  return {1.0 - epsilon, l_r};
}

InputDomain rrr_input_domain(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.25)) throw std::domain_error("rrr_input_domain: epsilon must lie in (0, 1/4)");
  return {epsilon, 0.5 - epsilon, epsilon};
}

// Grids -----------------------------------------------------------------------------

ParameterGrid<PtrParams> parameter_grid(const PtrGridSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("parameter_grid: n must be >= 1");
  if (spec.coupling_draws < 1 || spec.gammas.empty() || spec.taus.empty()) {
    throw std::invalid_argument("parameter_grid: empty PTR axis");
  }
  std::vector<PtrParams> points;
  for (int draw = 0; draw < spec.coupling_draws; ++draw) {
    const std::uint64_t seed = derive_seed(spec.coupling_seed, static_cast<std::uint64_t>(draw));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::vector<double> couplings(PtrParams::coupling_count(spec.n));
    for (double& c : couplings) c = uniform(rng);
    for (double gamma : spec.gammas) {
      for (double tau : spec.taus) {
        points.push_back(PtrParams{spec.n, couplings, gamma, tau, seed});
      }
    }
  }
  return ParameterGrid<PtrParams>(points);
}

ParameterGrid<RrrParams> parameter_grid(const RrrGridSpec& spec) {
  if (spec.alphas.empty() || spec.sigmas.empty()) throw std::invalid_argument("parameter_grid: empty RRR axis");
  std::vector<RrrParams> points;
  for (double alpha : spec.alphas) {
    for (const auto& sigma : spec.sigmas) points.push_back(RrrParams{alpha, sigma, spec.t0, spec.t1});
  }
  return ParameterGrid<RrrParams>(points);
}

std::vector<ReservoirMapPtr> instantiate(const ParameterGrid<PtrParams>& grid) {
  std::vector<ReservoirMapPtr> maps;
  for (const auto& p : grid) maps.push_back(std::make_shared<PtrChannel>(p));
  return maps;
}

std::vector<ReservoirMapPtr> instantiate(const ParameterGrid<RrrParams>& grid, bool checked) {
  std::vector<ReservoirMapPtr> maps;
  for (const auto& p : grid) {
    maps.push_back(checked ? std::make_shared<RrrChannel>(p) : std::make_shared<RrrChannel>(RrrChannel::unchecked(p)));
  }
  return maps;
}

}  // namespace qrc
