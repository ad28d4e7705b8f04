#include "qrc/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qrc {

namespace {

ComplexMatrix single_pauli(PauliAxis axis) {
  ComplexMatrix p(2, 2);
  switch (axis) {
    case PauliAxis::X:
      p << 0, 1, 1, 0;
      break;
    case PauliAxis::Y:
      p << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case PauliAxis::Z:
      p << 1, 0, 0, -1;
      break;
  }
  return p;
}

}  // namespace

ComplexMatrix pauli(PauliAxis axis, int qubit, int n_total) {
  if (n_total < 1 || qubit < 0 || qubit >= n_total) {
    throw std::out_of_range("pauli: qubit index " + std::to_string(qubit) + " out of range for " +
                            std::to_string(n_total) + " qubits");
  }
  const Eigen::Index left = Eigen::Index{1} << qubit;
  const Eigen::Index right = Eigen::Index{1} << (n_total - qubit - 1);
  ComplexMatrix out = kron(ComplexMatrix::Identity(left, left), single_pauli(axis));
  return kron(out, ComplexMatrix::Identity(right, right));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix partial_trace_first(const ComplexMatrix& a, Eigen::Index first_dim) {
  if (a.rows() != a.cols() || first_dim < 1 || a.rows() % first_dim != 0) {
    throw std::invalid_argument("partial_trace_first: matrix of dim " + std::to_string(a.rows()) +
                                " is not divisible by first factor " + std::to_string(first_dim));
  }
  const Eigen::Index rest = a.rows() / first_dim;
  ComplexMatrix b = ComplexMatrix::Zero(rest, rest);
  for (Eigen::Index i = 0; i < first_dim; ++i) {
    b += a.block(i * rest, i * rest, rest, rest);
  }
  return b;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) / 2.0; }

ComplexMatrix hermitian_exp(const ComplexMatrix& h, double t) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("hermitian_exp: input is not Hermitian");
  }
  if (t == 0.0) {
    return ComplexMatrix::Identity(h.rows(), h.cols());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h));
  const Eigen::VectorXd& lambda = es.eigenvalues();
  ComplexVector phases(lambda.size());
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    phases(j) = std::exp(Complex(0.0, -lambda(j) * t));
  }
  const ComplexMatrix& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

double schatten2(const ComplexMatrix& a) { return a.norm(); }

double weighted_seq_norm(std::span<const double> v, std::span<const double> w) {
  if (w.size() < v.size()) {
    throw std::invalid_argument("weighted_seq_norm: weights shorter than the sequence support");
  }
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (!(w[t] > 0.0) || (t > 0 && !(w[t] < w[t - 1]))) {
      throw std::invalid_argument("weighted_seq_norm: weights must be positive and strictly decreasing");
    }
  }
  double total = 0.0;
  const std::size_t len = v.size();
  for (std::size_t lag = 0; lag < len; ++lag) {
    total += std::abs(v[len - 1 - lag]) * w[lag];
  }
  return total;
}

// DensityMatrix -------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {
  qubits_ = static_cast<int>(std::lround(std::log2(static_cast<double>(m_.rows()))));
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  const Eigen::Index d = m.rows();
  if (d != m.cols() || d < 2 || (d & (d - 1)) != 0) {
    throw std::invalid_argument("DensityMatrix: dimension must be a power of two >= 2");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("DensityMatrix: non-finite entries");
  }
  if (!is_hermitian(m)) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  m_ = hermitian_part(m);
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " + std::to_string(std::abs(tr - 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPositivityTol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
  qubits_ = static_cast<int>(std::lround(std::log2(static_cast<double>(d))));
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  if (n < 1) throw std::invalid_argument("maximally_mixed: n must be >= 1");
  const Eigen::Index d = Eigen::Index{1} << n;
  return {ComplexMatrix::Identity(d, d) / static_cast<double>(d), Unchecked{}};
}

DensityMatrix DensityMatrix::random(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_density: n must be >= 1");
  const Eigen::Index d = Eigen::Index{1} << n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = gauss(rng);
      g(i, j) = Complex(re, gauss(rng));
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {hermitian_part(rho), Unchecked{}};
}

DensityMatrix DensityMatrix::basis_state(int n, Eigen::Index index) {
  const Eigen::Index d = Eigen::Index{1} << n;
  if (index < 0 || index >= d) throw std::out_of_range("basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(index, index) = 1.0;
  return {std::move(m), Unchecked{}};
}

// Superoperators --------------------------------------------------------------

ComplexVector vec(const ComplexMatrix& a) {
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d) {
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

Superoperator to_superoperator(const OperatorMap& channel, Eigen::Index dim) {
  Superoperator s{dim, ComplexMatrix(dim * dim, dim * dim)};
  for (Eigen::Index col = 0; col < dim * dim; ++col) {
    ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
    unit(col % dim, col / dim) = 1.0;
    const ComplexMatrix image = channel(unit);
    if (image.rows() != dim || image.cols() != dim) {
      throw std::invalid_argument("to_superoperator: channel changed the operator dimension");
    }
    s.matrix.col(col) = vec(image);
  }

  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(dim));
  std::normal_distribution<double> gauss;
  ComplexMatrix probe(dim, dim);
  for (Eigen::Index i = 0; i < probe.size(); ++i) {
    const double re = gauss(rng);
    probe.data()[i] = Complex(re, gauss(rng));
  }
  const double mismatch = (vec(channel(probe)) - s.matrix * vec(probe)).cwiseAbs().maxCoeff();
  if (mismatch > 1e-9) {
    throw std::domain_error("to_superoperator: map is not linear (probe mismatch " + std::to_string(mismatch) + ")");
  }
  return s;
}

ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& a) {
  return unvec(s.matrix * vec(a), s.dim);
}

ComplexMatrix choi_matrix(const Superoperator& s) {
  const Eigen::Index d = s.dim;
  ComplexMatrix choi(d * d, d * d);
  // choi((i,k),(j,l)) = T(E_ij)(k,l) = S(k + l d, i + j d)
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
          choi(i * d + k, j * d + l) = s.matrix(k + l * d, i + j * d);
        }
      }
    }
  }
  return choi;
}

CptpReport verify_cptp(const Superoperator& s) {
  const Eigen::Index d = s.dim;
  CptpReport report;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex tr = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) tr += s.matrix(k + k * d, i + j * d);
      const Complex expected = i == j ? 1.0 : 0.0;
      report.trace_dev = std::max(report.trace_dev, std::abs(tr - expected));
    }
  }
  const ComplexMatrix choi = choi_matrix(s);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(choi), Eigen::EigenvaluesOnly);
  report.min_choi_eig = es.eigenvalues().minCoeff();
  // A non-Hermitian Choi matrix means the map does not preserve Hermiticity.
  const double asym = (choi - choi.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) report.min_choi_eig = std::min(report.min_choi_eig, -asym);
  return report;
}

std::vector<ComplexMatrix> traceless_hermitian_basis(Eigen::Index d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(d * d - 1));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(j, k) = sym(k, j) = inv_sqrt2;
      basis.push_back(std::move(sym));
      ComplexMatrix anti = ComplexMatrix::Zero(d, d);
      anti(j, k) = Complex(0.0, -inv_sqrt2);
      anti(k, j) = Complex(0.0, inv_sqrt2);
      basis.push_back(std::move(anti));
    }
  }
  for (Eigen::Index l = 1; l < d; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(std::move(diag));
  }
  return basis;
}

double traceless_restricted_norm(const Superoperator& s) {
  const auto basis = traceless_hermitian_basis(s.dim);
  ComplexMatrix b(s.dim * s.dim, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) b.col(static_cast<Eigen::Index>(c)) = vec(basis[c]);
  // Real coefficient vectors map to Hermitian images, so the complex
  // singular value equals the real supremum over traceless Hermitian inputs.
  const ComplexMatrix restricted = s.matrix * b;
  Eigen::JacobiSVD<ComplexMatrix> svd(restricted);
  return svd.singularValues()(0);
}

double operator_norm(const Superoperator& s) {
  Eigen::JacobiSVD<ComplexMatrix> svd(s.matrix);
  return svd.singularValues()(0);
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace qrc
