#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrc/linalg.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace qrc;

namespace {

ComplexMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const Complex I(0.0, 1.0);
const ComplexMatrix kX = m2(0, 1, 1, 0);
const ComplexMatrix kY = m2(0, -I, I, 0);
const ComplexMatrix kZ = m2(1, 0, 0, -1);
const ComplexMatrix kId = ComplexMatrix::Identity(2, 2);

// Plain nested-loop Kronecker product.
ComplexMatrix brute_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

Superoperator depolarising(double p) {
  return to_superoperator([p](const ComplexMatrix& a) -> ComplexMatrix {
    return (1.0 - p) * a + p * a.trace() * kId / 2.0;
  }, 2);
}

}  // namespace

TEST_CASE("pauli operators") {
  CHECK(pauli(PauliAxis::Z, 0, 1).isApprox(kZ));
  CHECK(std::abs(trace_product(pauli(PauliAxis::Z, 0, 1), DensityMatrix::basis_state(1, 0).matrix()) - 1.0) < 1e-15);
  CHECK(pauli(PauliAxis::X, 1, 2).isApprox(brute_kron(kId, kX)));
  CHECK(pauli(PauliAxis::Y, 0, 3).isApprox(brute_kron(brute_kron(kY, kId), kId)));
  CHECK_THROWS(pauli(PauliAxis::X, 2, 2));
}

TEST_CASE("kron matches nested loops") {
  const ComplexMatrix a = DensityMatrix::random(1, 3).matrix();
  const ComplexMatrix b = DensityMatrix::random(2, 4).matrix();
  CHECK((kron(a, b) - brute_kron(a, b)).norm() < 1e-15);
}

TEST_CASE("partial trace over the first factor") {
  const ComplexMatrix eta = DensityMatrix::random(1, 5).matrix();
  const ComplexMatrix rho = DensityMatrix::random(2, 6).matrix();
  CHECK((partial_trace_first(kron(eta, rho), 2) - rho).norm() < 1e-14);
  CHECK(partial_trace_first(ComplexMatrix::Identity(4, 4) / 4.0, 2).isApprox(kId / 2.0));

  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix phi = bell * bell.adjoint();
  CHECK((partial_trace_first(phi, 2) - kId / 2.0).norm() < 1e-15);
  CHECK_THROWS(partial_trace_first(ComplexMatrix::Identity(6, 6), 4));
}

TEST_CASE("hermitian exponential") {
  const double pi = std::numbers::pi;
  CHECK((hermitian_exp(kZ, pi / 2) - m2(-I, 0, 0, I)).norm() < 1e-14);
  CHECK((hermitian_exp(DensityMatrix::random(2, 1).matrix(), 0.0) - ComplexMatrix::Identity(4, 4)).norm() < 1e-14);
  CHECK((hermitian_exp(kX, pi) + kId).norm() < 1e-14);

  // Taylor series oracle for a random Hermitian H.
  const ComplexMatrix h = hermitian_part(ComplexMatrix::Random(4, 4));
  ComplexMatrix series = ComplexMatrix::Identity(4, 4);
  ComplexMatrix term = ComplexMatrix::Identity(4, 4);
  for (int k = 1; k < 60; ++k) {
    term = term * (-I * 0.7 * h) / static_cast<double>(k);
    series += term;
  }
  CHECK((hermitian_exp(h, 0.7) - series).norm() < 1e-12);
  CHECK_THROWS(hermitian_exp(ComplexMatrix::Random(2, 2) * I + kX, 1.0));
}

TEST_CASE("schatten-2 norm") {
  CHECK(schatten2(kId) == doctest::Approx(std::sqrt(2.0)));
  CHECK(schatten2(ComplexMatrix::Zero(3, 3)) == 0.0);
  CHECK(schatten2(kX + kZ) == doctest::Approx(2.0));
}

TEST_CASE("weighted sequence norm") {
  const std::vector<double> v{0.0, 1.0, 2.0};
  const std::vector<double> w{1.0, 0.5, 0.25};
  CHECK(weighted_seq_norm(v, w) == doctest::Approx(2.5));
  CHECK(weighted_seq_norm(std::vector<double>(3, 0.0), w) == 0.0);

  std::vector<double> gv, gw;
  for (int t = 0; t < 10; ++t) {
    gv.push_back(std::pow(-0.8, t));
    gw.push_back(std::pow(0.6, t));
  }
  double brute = 0.0;
  for (int t = 0; t < 10; ++t) brute += std::abs(gv[9 - t]) * gw[t];
  CHECK(weighted_seq_norm(gv, gw) == doctest::Approx(brute).epsilon(1e-14));

  CHECK_THROWS(weighted_seq_norm(v, std::vector<double>{1.0, 1.0, 0.5}));
  CHECK_THROWS(weighted_seq_norm(v, std::vector<double>{1.0, 0.5}));
}

TEST_CASE("cptp verification") {
  const auto identity = to_superoperator([](const ComplexMatrix& a) { return a; }, 2);
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(choi_matrix(identity));
  CHECK(eig.eigenvalues()(3) == doctest::Approx(2.0));
  CHECK(std::abs(eig.eigenvalues()(0)) < 1e-14);
  CHECK(verify_cptp(identity).passes());

  const auto transpose = to_superoperator([](const ComplexMatrix& a) -> ComplexMatrix { return a.transpose(); }, 2);
  const auto rep = verify_cptp(transpose);
  CHECK(rep.min_choi_eig == doctest::Approx(-1.0));
  CHECK_FALSE(rep.passes());

  const auto dep = verify_cptp(depolarising(0.25));
  CHECK(dep.passes());
  CHECK(dep.trace_dev <= 1e-14);

  const auto lossy = to_superoperator([](const ComplexMatrix& a) -> ComplexMatrix { return 0.9 * a; }, 2);
  CHECK_FALSE(verify_cptp(lossy).passes());
}

TEST_CASE("vec and unvec are column major inverses") {
  ComplexMatrix a(2, 2);
  a << 1, 2, 3, 4;
  const ComplexVector v = vec(a);
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
  CHECK(unvec(v, 2) == a);
  const auto s = depolarising(0.3);
  const ComplexMatrix rho = DensityMatrix::random(1, 9).matrix();
  CHECK((apply(s, rho) - (0.7 * rho + 0.3 * kId / 2.0)).norm() < 1e-15);
}

TEST_CASE("traceless restricted norm") {
  const ComplexMatrix u = hermitian_exp(DensityMatrix::random(2, 2).matrix() * 5.0, 1.0);
  const auto conj = to_superoperator([&u](const ComplexMatrix& a) -> ComplexMatrix { return u * a * u.adjoint(); }, 4);
  CHECK(traceless_restricted_norm(conj) == doctest::Approx(1.0));
  CHECK(traceless_restricted_norm(depolarising(0.25)) == doctest::Approx(0.75));
  const ComplexMatrix sigma = DensityMatrix::random(1, 4).matrix();
  const auto constant =
      to_superoperator([&sigma](const ComplexMatrix& a) -> ComplexMatrix { return sigma * a.trace(); }, 2);
  CHECK(traceless_restricted_norm(constant) < 1e-14);
  CHECK(operator_norm(constant) > 0.5);

  const auto basis = traceless_hermitian_basis(3);
  REQUIRE(basis.size() == 8);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CHECK(std::abs(basis[i].trace()) < 1e-15);
    CHECK(is_hermitian(basis[i]));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      CHECK(std::abs(trace_product(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("density matrices") {
  CHECK(DensityMatrix::maximally_mixed(1).matrix().isApprox(kId / 2.0));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const auto rho = DensityMatrix::random(n, seed);
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho.matrix());
    REQUIRE(std::abs(rho.matrix().trace() - 1.0) < 1e-12);
    REQUIRE(is_hermitian(rho.matrix()));
    REQUIRE(eig.eigenvalues().minCoeff() >= -1e-12);
  }
  CHECK(DensityMatrix::random(2, 17) == DensityMatrix::random(2, 17));
  for (int n = 1; n <= 4; ++n) {
    for (int q = 0; q < n; ++q) {
      CHECK(std::abs(trace_product(pauli(PauliAxis::Z, q, n), DensityMatrix::maximally_mixed(n).matrix())) < 1e-15);
    }
  }
  CHECK_THROWS(DensityMatrix(kZ));
  CHECK_THROWS(DensityMatrix(kId));
  CHECK_THROWS(DensityMatrix(ComplexMatrix::Identity(3, 3) / 3.0));
  CHECK_THROWS(DensityMatrix(m2(0.5, 0.5 * I, 0.1, 0.5)));
}
