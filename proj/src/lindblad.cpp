#include "trionsim/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "trionsim/errors.hpp"

namespace trionsim {

Liouvillian::Liouvillian(std::size_t hilbert_dim, ComplexMatrix matrix)
    : hilbert_dim_(hilbert_dim), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ArgumentError("Liouvillian: matrix must be d^2 x d^2");
  }
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  return unvec(matrix_ * vec(rho), hilbert_dim_);
}

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw ArgumentError("DensityMatrix: must be square and non-empty");
  if (!is_hermitian(m_, tol)) throw ArgumentError("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0)) > tol) throw ArgumentError("DensityMatrix: trace is not 1");
  const double min_eig = eig_hermitian(0.5 * (m_ + m_.adjoint())).values.minCoeff();
  if (min_eig < -tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: negative eigenvalue " << min_eig;
    throw ArgumentError(msg.str());
  }
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t i) {
  if (i >= dim) throw ArgumentError("DensityMatrix::basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(i, i) = 1.0;
  return DensityMatrix(std::move(m));
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  if (v.size() != d * d) throw ArgumentError("unvec: length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

Eigen::RowVectorXcd trace_functional(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) t(i + i * d) = 1.0;
  return t;
}

Eigen::RowVectorXcd observable_functional(const ComplexMatrix& a) {
  // tr(A X) = sum_ij A(j, i) X(i, j) = sum_ij A^T(i, j) X(i, j)
  const ComplexMatrix at = a.transpose();
  return vec(at).transpose();
}

Liouvillian build_liouvillian(const ComplexMatrix& hamiltonian,
                              std::span<const DissipationChannel> channels) {
  const auto d = hamiltonian.rows();
  if (hamiltonian.cols() != d || d == 0) throw ArgumentError("build_liouvillian: Hamiltonian must be square");
  if (!is_hermitian(hamiltonian, 1e-10 * std::max(1.0, inf_norm(hamiltonian)))) {
    throw ArgumentError("build_liouvillian: Hamiltonian is not Hermitian");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const Complex minus_i(0.0, -1.0);

  ComplexMatrix l = minus_i * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
  for (const auto& ch : channels) {
    if (ch.op.rows() != d || ch.op.cols() != d) {
      throw ArgumentError("build_liouvillian: jump operator dimension mismatch");
    }
    if (!(ch.rate >= 0.0) || !std::isfinite(ch.rate)) {
      throw ArgumentError("build_liouvillian: channel rate must be finite and >= 0");
    }
    if (ch.rate == 0.0) continue;
    const ComplexMatrix ldl = ch.op.adjoint() * ch.op;
    l += ch.rate * (kron(ch.op.conjugate(), ch.op) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
  }
  return Liouvillian(static_cast<std::size_t>(d), std::move(l));
}

DensityMatrix steady_state(const Liouvillian& l) {
  const auto d = l.hilbert_dim();
  ComplexMatrix a = l.matrix();
  a.row(0) = trace_functional(d);
  ComplexVector rhs = ComplexVector::Zero(a.rows());
  rhs(0) = 1.0;

  ComplexVector x;
  try {
    x = solve_linear(a, rhs);
  } catch (const SingularMatrixError&) {
    throw DegenerateSteadyStateError("steady_state: Liouvillian kernel is not one-dimensional");
  }
  ComplexMatrix rho = unvec(x, d);
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace();
  return DensityMatrix(std::move(rho));
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<ComplexVector> evolve(const Liouvillian& l, const ComplexVector& x0,
                                  std::span<const double> times, double tol, std::size_t max_steps) {
  if (x0.size() != static_cast<Eigen::Index>(l.dim())) throw ArgumentError("evolve: state has wrong length");
  if (!(tol > 0.0)) throw ArgumentError("evolve: tolerance must be positive");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw ArgumentError("evolve: time grid must be finite, non-negative and ascending");
    }
  }

  const ComplexMatrix& m = l.matrix();
  std::vector<ComplexVector> out;
  out.reserve(times.size());

  const double norm = inf_norm(m);
  if (norm == 0.0) {
    out.assign(times.size(), x0);
    return out;
  }

  ComplexVector x = x0;
  ComplexVector k1 = m * x, k2, k3, k4, k5, k6, k7, trial;
  double t = 0.0;
  double h = 0.5 / norm;
  std::size_t steps = 0;

  for (const double target : times) {
    while (t < target) {
      const bool last = h >= target - t;
      const double step = last ? target - t : h;
      if (step < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) {
        throw IntegrationError("evolve: step size underflow", t);
      }
      if (++steps > max_steps) throw IntegrationError("evolve: step budget exhausted", t);

      k2 = m * (x + step * (a21 * k1));
      k3 = m * (x + step * (a31 * k1 + a32 * k2));
      k4 = m * (x + step * (a41 * k1 + a42 * k2 + a43 * k3));
      k5 = m * (x + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      k6 = m * (x + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      trial = x + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = m * trial;
      const double err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7).cwiseAbs().maxCoeff();

      if (err <= tol) {
        t = last ? target : t + step;
        x = trial;
        k1 = k7;
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 5.0);
      // A step shortened to land on the grid says nothing about the free step size.
      if (!(last && err <= tol && factor > 1.0)) h = step * factor;
    }
    out.push_back(x);
  }
  return out;
}

std::vector<DensityMatrix> propagate(const DensityMatrix& rho0, const Liouvillian& l,
                                     std::span<const double> times, double tol) {
  if (rho0.dim() != l.hilbert_dim()) throw ArgumentError("propagate: dimension mismatch");
  const auto d = l.hilbert_dim();
  const auto states = evolve(l, vec(rho0.matrix()), times, tol);
  std::vector<DensityMatrix> out;
  out.reserve(states.size());
  const double check_tol = std::max(1e-9, 10.0 * tol);
  for (const auto& s : states) out.emplace_back(unvec(s, d), check_tol);
  return out;
}

Complex expectation(const DensityMatrix& rho, const ComplexMatrix& a) {
  if (a.rows() != static_cast<Eigen::Index>(rho.dim()) || a.cols() != a.rows()) {
    throw ArgumentError("expectation: dimension mismatch");
  }
  return (a * rho.matrix()).trace();
}

}  // namespace trionsim
