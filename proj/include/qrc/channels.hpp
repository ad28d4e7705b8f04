#pragma once

#include "qrc/linalg.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qrc {

/// Contraction constant r of T(v, .) on density matrices and the Lipschitz
/// constant L_R of v -> T(v, rho), both in the Schatten-2 norm.
struct ChannelConstants {
  double r = 0.0;
  double l_r = 0.0;
};

struct InputDomain {
  double lo = 0.0;
  double hi = 1.0;
  double epsilon = 0.0;

  [[nodiscard]] bool contains(double v) const { return v >= lo && v <= hi; }
  /// Zero is admitted everywhere for left-padding of finite histories.
  [[nodiscard]] bool admits(double v) const { return v == 0.0 || contains(v); }
  [[nodiscard]] double width() const { return hi - lo; }
};

/// Input-driven reservoir map T(v, A), linear in A. The reservoir register
/// has `qubits()` qubits.
class ReservoirMap {
 public:
  virtual ~ReservoirMap() = default;

  [[nodiscard]] virtual int qubits() const = 0;
  [[nodiscard]] virtual ComplexMatrix apply(double v, const ComplexMatrix& a) const = 0;

  [[nodiscard]] Eigen::Index dim() const { return Eigen::Index{1} << qubits(); }
  [[nodiscard]] DensityMatrix apply_state(double v, const DensityMatrix& rho) const {
    return DensityMatrix(apply(v, rho.matrix()));
  }
  [[nodiscard]] Superoperator superoperator(double v) const;
};

using ReservoirMapPtr = std::shared_ptr<const ReservoirMap>;

// Partial trace reservoir -------------------------------------------------------

/// n reservoir qubits plus one ancilla. The ancilla is tensor factor 0 and the
/// couplings J^{i,j}, 0 <= i < j <= n, are stored row by row.
struct PtrParams {
  int n = 1;
  std::vector<double> couplings;
  double gamma = 0.0;
  double tau = 0.0;
  std::uint64_t coupling_seed = 0;

  [[nodiscard]] static std::size_t coupling_count(int n) {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
  }
  [[nodiscard]] double coupling(int i, int j) const;

  bool operator==(const PtrParams& o) const {
    return n == o.n && couplings == o.couplings && gamma == o.gamma && tau == o.tau;
  }
};

/// sum_{i<j} J^{ij} (X_i X_j + Y_i Y_j) + gamma sum_i Z_i on n + 1 qubits.
ComplexMatrix build_xy_hamiltonian(const PtrParams& params);

class PtrChannel final : public ReservoirMap {
 public:
  explicit PtrChannel(PtrParams params);

  [[nodiscard]] int qubits() const override { return params_.n; }
  /// tr_0[U (eta_v (x) A) U^dagger], eta_v = v|0><0| + (1 - v)|1><1|, v in [0, 1].
  [[nodiscard]] ComplexMatrix apply(double v, const ComplexMatrix& a) const override;
  /// The two images with T(v, A) = v * first + (1 - v) * second.
  [[nodiscard]] std::pair<ComplexMatrix, ComplexMatrix> split(const ComplexMatrix& a) const;

  [[nodiscard]] const PtrParams& params() const { return params_; }
  [[nodiscard]] const ComplexMatrix& unitary() const { return unitary_; }

 private:
  PtrParams params_;
  ComplexMatrix unitary_;
  // blocks_[a][b] = <a|U|b> on the ancilla, each d x d.
  std::array<std::array<ComplexMatrix, 2>, 2> blocks_;
};

/// r_PTR(eps) = 2 sqrt2 (eps^2 - eps sqrt(sqrt2 - 1)) + 1, L_R = 2.
ChannelConstants ptr_constants(double epsilon);
/// [(1 - s)/2 + eps, (1 + s)/2 - eps] with s = sqrt(sqrt2 - 1).
InputDomain ptr_input_domain(double epsilon);
/// sqrt(sqrt2 - 1), the upper limit of admissible PTR margins.
double ptr_epsilon_limit();

// Random reinitialisation reservoir ---------------------------------------------

/// A -> r u A u^dagger + (1 - r) sigma tr[A]. On differences of density
/// matrices this scales the Schatten-2 norm by exactly r.
class BaseChannel {
 public:
  /// No range checks; used for deliberate fault injection.
  static BaseChannel unchecked(double r, ComplexMatrix u, DensityMatrix sigma);

  [[nodiscard]] ComplexMatrix apply(const ComplexMatrix& a) const;
  [[nodiscard]] double contraction() const { return r_; }
  [[nodiscard]] const ComplexMatrix& unitary() const { return u_; }
  [[nodiscard]] const DensityMatrix& reset_state() const { return sigma_; }

  bool operator==(const BaseChannel& o) const { return r_ == o.r_ && u_ == o.u_ && sigma_ == o.sigma_; }

 private:
  BaseChannel(double r, ComplexMatrix u, DensityMatrix sigma);

  double r_;
  ComplexMatrix u_;
  DensityMatrix sigma_;
  ComplexMatrix u_adj_;
};

/// Checked constructor: r in (0, 1), u unitary to 1e-10, dims matching.
BaseChannel make_base_channel(double r, ComplexMatrix u, DensityMatrix sigma);

/// Seeded Haar-like unitary exp(-i G) for a GUE matrix G.
ComplexMatrix random_unitary(Eigen::Index d, std::uint64_t seed);

struct RrrParams {
  double alpha = 0.5;
  DensityMatrix sigma;
  BaseChannel t0;
  BaseChannel t1;

  bool operator==(const RrrParams& o) const {
    return alpha == o.alpha && sigma == o.sigma && t0 == o.t0 && t1 == o.t1;
  }
};

class RrrChannel final : public ReservoirMap {
 public:
  /// Validates r0 + r1 < 1, r0 >= r1, t0 != t1 and alpha in (0, 1).
  explicit RrrChannel(RrrParams params);
  /// Skips the contraction-constant checks (fault injection only).
  static RrrChannel unchecked(RrrParams params);

  [[nodiscard]] int qubits() const override { return params_.sigma.qubits(); }
  /// (1 - alpha)(v T0(A) + (1 - v) T1(A)) + alpha sigma tr[A].
  [[nodiscard]] ComplexMatrix apply(double v, const ComplexMatrix& a) const override;

  [[nodiscard]] const RrrParams& params() const { return params_; }

 private:
  struct NoCheck {};
  RrrChannel(RrrParams params, NoCheck) : params_(std::move(params)) {}

  RrrParams params_;
};

/// r = (1 - alpha_min) r0 if r0 == r1, else 1 - eps; L_R = 2 (1 - alpha_min).
ChannelConstants rrr_constants(double alpha_min, double r0, double r1, double epsilon);
/// [eps, 1/2 - eps], 0 < eps < 1/4.
InputDomain rrr_input_domain(double epsilon);

// Finite parameter sets -----------------------------------------------------------

template <class Point>
class ParameterGrid {
 public:
  /// Keeps the first occurrence of each distinct point.
  explicit ParameterGrid(const std::vector<Point>& candidates) {
    for (const auto& p : candidates) {
      if (std::find(points_.begin(), points_.end(), p) == points_.end()) points_.push_back(p);
    }
    if (points_.empty()) throw std::invalid_argument("ParameterGrid: empty parameter set");
  }

  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const std::vector<Point>& points() const { return points_; }
  [[nodiscard]] auto begin() const { return points_.begin(); }
  [[nodiscard]] auto end() const { return points_.end(); }
  [[nodiscard]] const Point& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<Point> points_;
};

struct PtrGridSpec {
  int n = 2;
  int coupling_draws = 2;
  std::uint64_t coupling_seed = 1;
  std::vector<double> gammas;
  std::vector<double> taus;
};

/// Couplings are drawn uniformly on [-1, 1] per draw from a seed derived from
/// (coupling_seed, draw).
ParameterGrid<PtrParams> parameter_grid(const PtrGridSpec& spec);

struct RrrGridSpec {
  std::vector<double> alphas;
  std::vector<DensityMatrix> sigmas;
  BaseChannel t0;
  BaseChannel t1;
};

ParameterGrid<RrrParams> parameter_grid(const RrrGridSpec& spec);

std::vector<ReservoirMapPtr> instantiate(const ParameterGrid<PtrParams>& grid);
std::vector<ReservoirMapPtr> instantiate(const ParameterGrid<RrrParams>& grid, bool checked = true);

/// splitmix64 of (seed, stream); used wherever a child seed is derived.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qrc
