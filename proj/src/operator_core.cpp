#include "trionsim/operator_core.hpp"

#include <algorithm>
#include <set>

#include "trionsim/errors.hpp"

namespace trionsim {

HilbertSpace::HilbertSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ArgumentError("HilbertSpace: dimension must be positive");
  const std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != labels_.size()) throw ArgumentError("HilbertSpace: labels must be unique");
}

HilbertSpace HilbertSpace::trion() { return HilbertSpace({"s", "p", "t"}); }

std::size_t HilbertSpace::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ArgumentError("HilbertSpace: unknown label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

ComplexMatrix projector(const HilbertSpace& space, std::size_t i, std::size_t j) {
  const auto d = space.dim();
  if (i >= d || j >= d) {
    throw ArgumentError("projector: index out of range for dimension " + std::to_string(d));
  }
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  p(i, j) = 1.0;
  return p;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    for (Eigen::Index q = 0; q < a.cols(); ++q) {
      out.block(p * b.rows(), q * b.cols(), b.rows(), b.cols()) = a(p, q) * b;
    }
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double inf_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

double inf_norm(const ComplexVector& v) {
  if (v.size() == 0) return 0.0;
  return v.cwiseAbs().maxCoeff();
}

ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b) {
  if (a.rows() != a.cols()) throw ArgumentError("solve_linear: matrix must be square");
  if (b.size() != a.rows()) throw ArgumentError("solve_linear: right-hand side has wrong length");

  const double scale = inf_norm(a);
  Eigen::FullPivLU<ComplexMatrix> lu(a);
  const double min_pivot = a.rows() == 0 ? 0.0 : lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (scale == 0.0 || min_pivot < 1e-14 * scale) {
    throw SingularMatrixError("solve_linear: matrix is numerically singular");
  }
  return lu.solve(b);
}

HermitianEigen eig_hermitian(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("eig_hermitian: matrix must be square");
  if (!is_hermitian(a, 1e-10 * std::max(1.0, inf_norm(a)))) {
    throw ArgumentError("eig_hermitian: matrix is not Hermitian");
  }
  // Solve on the exactly Hermitian part so round-off asymmetry cannot leak in.
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eig_hermitian: eigen-solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace trionsim
