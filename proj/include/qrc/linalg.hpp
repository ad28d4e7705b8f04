#pragma once

// Dense complex linear algebra and quantum primitives for small qubit
// registers (2^n <= 256). Vectorisation is column-major throughout:
// vec(A)[i + j*d] = A(i, j).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qrc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

enum class PauliAxis { X, Y, Z };

/// Pauli operator acting on `qubit` of an `n_total`-qubit register. Qubit 0 is
/// the leftmost (most significant) tensor factor.
ComplexMatrix pauli(PauliAxis axis, int qubit, int n_total);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out the first tensor factor of dimension `first_dim`:
/// B(k, l) = sum_i A((i, k), (i, l)).
ComplexMatrix partial_trace_first(const ComplexMatrix& a, Eigen::Index first_dim);

/// exp(-i H t) via the eigendecomposition of the Hermitian matrix H.
ComplexMatrix hermitian_exp(const ComplexMatrix& h, double t);

double schatten2(const ComplexMatrix& a);

/// sum_t |v_t| w_{-t}. `v` is in time order, so v.back() is v_0 and is paired
/// with w[0]. `w` must be strictly positive and strictly decreasing.
double weighted_seq_norm(std::span<const double> v, std::span<const double> w);

bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);

/// (A + A^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Positive, unit-trace Hermitian matrix of dimension 2^n.
class DensityMatrix {
 public:
  /// Validates the invariants. The input is first re-symmetrised, which
  /// removes floating-point drift left by channel applications.
  explicit DensityMatrix(const ComplexMatrix& m);

  static DensityMatrix maximally_mixed(int n);
  /// G G^dagger / tr[G G^dagger] for a seeded complex Gaussian G.
  static DensityMatrix random(int n, std::uint64_t seed);
  /// |b><b| for computational basis index b.
  static DensityMatrix basis_state(int n, Eigen::Index index);

  [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
  [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }
  [[nodiscard]] int qubits() const { return qubits_; }

  bool operator==(const DensityMatrix& other) const { return m_ == other.m_; }

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix m, Unchecked);

  ComplexMatrix m_;
  int qubits_ = 0;
};

inline DensityMatrix maximally_mixed(int n) { return DensityMatrix::maximally_mixed(n); }
inline DensityMatrix random_density(int n, std::uint64_t seed) { return DensityMatrix::random(n, seed); }

/// Linear map on d x d operators in its d^2 x d^2 matrix form.
struct Superoperator {
  Eigen::Index dim = 0;  // operator dimension d
  ComplexMatrix matrix;  // acts on column-major vec
};

using OperatorMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d);

/// Builds T^ by probing the matrix-unit basis. A random superposition probe
/// guards against non-linear maps (std::domain_error on mismatch > 1e-9).
Superoperator to_superoperator(const OperatorMap& channel, Eigen::Index dim);

ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& a);

/// Unnormalised Choi matrix sum_{ij} E_ij (x) T(E_ij).
ComplexMatrix choi_matrix(const Superoperator& s);

struct CptpReport {
  double trace_dev = 0.0;
  double min_choi_eig = 0.0;
  [[nodiscard]] bool passes() const { return trace_dev <= 1e-10 && min_choi_eig >= -kPositivityTol; }
};

CptpReport verify_cptp(const Superoperator& s);

/// Orthonormal (Hilbert-Schmidt) generalised Gell-Mann basis of the traceless
/// Hermitian d x d matrices; d^2 - 1 elements.
std::vector<ComplexMatrix> traceless_hermitian_basis(Eigen::Index d);

/// Largest singular value of S restricted to the traceless Hermitian subspace.
double traceless_restricted_norm(const Superoperator& s);

/// Largest singular value of the full superoperator.
double operator_norm(const Superoperator& s);

/// tr[A B] without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qrc
