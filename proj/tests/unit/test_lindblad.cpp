#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "trionsim/errors.hpp"
#include "trionsim/lindblad.hpp"

using namespace trionsim;

namespace {

const HilbertSpace kTwoLevel({"g", "e"});

ComplexMatrix two_level_drive(double omega, double delta) {
  // Basis (g, e); rotating frame with the excited state at -delta.
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(1, 1) = -delta;
  h(0, 1) = h(1, 0) = omega / 2;
  return h;
}

std::vector<DissipationChannel> random_channels(std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(0.0, 3.0);
  std::vector<DissipationChannel> ch;
  for (int k = 0; k < 3; ++k) ch.push_back({oracle::random_matrix(d, d, rng), rate(rng)});
  return ch;
}

}  // namespace

TEST_CASE("build_liouvillian matches direct evaluation under column stacking") {
  std::mt19937_64 rng(17);
  for (std::size_t d : {2, 3, 4}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto h = oracle::random_hermitian(d, rng);
      const auto ch = random_channels(d, rng);
      const auto l = build_liouvillian(h, ch);
      CHECK(l.dim() == d * d);
      const auto rho = oracle::random_matrix(d, d, rng);
      const ComplexMatrix direct = oracle::lindblad_rhs(h, ch, rho);
      CHECK((l.apply(rho) - direct).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + direct.cwiseAbs().maxCoeff()));

      // Trace preservation: tr(.) is a left null vector.
      CHECK((trace_functional(d) * l.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
      // Hermitian operators map to Hermitian operators.
      const auto out = l.apply(oracle::random_hermitian(d, rng));
      CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("vec and functionals") {
  std::mt19937_64 rng(2);
  const auto x = oracle::random_matrix(3, 3, rng);
  const auto a = oracle::random_matrix(3, 3, rng);
  CHECK(vec(x)(1) == x(1, 0));  // column stacking
  CHECK(vec(x)(3) == x(0, 1));
  CHECK(unvec(vec(x), 3) == x);
  CHECK(std::abs((trace_functional(3) * vec(x))(0) - x.trace()) < 1e-14);
  CHECK(std::abs((observable_functional(a) * vec(x))(0) - (a * x).trace()) < 1e-12);
}

TEST_CASE("build_liouvillian edge cases") {
  const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
  CHECK(build_liouvillian(zero, {}).matrix().cwiseAbs().maxCoeff() == 0.0);

  ComplexMatrix non_hermitian = zero;
  non_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(build_liouvillian(non_hermitian, {}), ArgumentError);

  const std::vector<DissipationChannel> wrong_dim{{ComplexMatrix::Zero(2, 2), 1.0}};
  CHECK_THROWS_AS(build_liouvillian(zero, wrong_dim), ArgumentError);

  const std::vector<DissipationChannel> negative{{ComplexMatrix::Zero(3, 3), -1.0}};
  CHECK_THROWS_AS(build_liouvillian(zero, negative), ArgumentError);
}

TEST_CASE("spontaneous decay follows exp(-gamma t)") {
  const double gamma = 1.7;
  const std::vector<DissipationChannel> ch{{projector(kTwoLevel, 0, 1), gamma}};
  const auto l = build_liouvillian(ComplexMatrix::Zero(2, 2), ch);
  const std::vector<double> times{0.0, 0.1, 0.5, 1.0, 2.0, 5.0};
  const auto states = propagate(DensityMatrix::basis_state(2, 1), l, times, 1e-12);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(states[i].population(1) == doctest::Approx(std::exp(-gamma * times[i])).epsilon(1e-9));
  }
}

TEST_CASE("pure dephasing at channel rate 2 gamma decays coherences at gamma") {
  const double gamma = 0.8;
  const std::vector<DissipationChannel> ch{{projector(kTwoLevel, 1, 1), 2.0 * gamma}};
  const auto l = build_liouvillian(ComplexMatrix::Zero(2, 2), ch);
  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const std::vector<double> times{0.0, 0.3, 1.0, 3.0};
  const auto states = propagate(DensityMatrix(plus), l, times, 1e-12);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(states[i](0, 1) - 0.5 * std::exp(-gamma * times[i])) <= 1e-9);
    CHECK(states[i].population(0) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("steady_state") {
  SUBCASE("undriven decay relaxes to the ground state") {
    const std::vector<DissipationChannel> ch{{projector(kTwoLevel, 0, 1), 2.0}};
    const auto rho = steady_state(build_liouvillian(ComplexMatrix::Zero(2, 2), ch));
    CHECK(rho.population(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(rho(0, 1)) <= 1e-14);
  }
  SUBCASE("driven two-level atom matches the optical Bloch steady state") {
    const double gamma = 1.3;
    const std::vector<DissipationChannel> ch{{projector(kTwoLevel, 0, 1), gamma}};
    for (const auto [omega, delta] : {std::pair{0.5, 0.0}, std::pair{3.0, 0.0}, std::pair{2.0, -1.5}, std::pair{7.0, 4.0}}) {
      const auto l = build_liouvillian(two_level_drive(omega, delta), ch);
      const auto rho = steady_state(l);
      CHECK(rho.population(1) == doctest::Approx(oracle::two_level_rho_ee(omega, delta, gamma)).epsilon(1e-12));
      CHECK(inf_norm(ComplexVector(l.matrix() * vec(rho.matrix()))) <= 1e-10);

      // Long-time propagation from the ground state converges to the same point.
      const std::vector<double> t{60.0 / gamma};
      const auto late = propagate(DensityMatrix::basis_state(2, 0), l, t, 1e-12).front();
      CHECK((late.matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-7);
    }
  }
  SUBCASE("no dissipation gives a degenerate kernel") {
    CHECK_THROWS_AS(steady_state(build_liouvillian(ComplexMatrix::Zero(2, 2), {})), DegenerateSteadyStateError);
  }
}

TEST_CASE("propagate") {
  SUBCASE("zero Liouvillian leaves the state unchanged") {
    std::mt19937_64 rng(9);
    const DensityMatrix rho0(oracle::random_density(3, rng));
    const Liouvillian zero(3, ComplexMatrix::Zero(9, 9));
    const std::vector<double> times{0.0, 1.0, 10.0};
    for (const auto& s : propagate(rho0, zero, times, 1e-10)) CHECK(s.matrix() == rho0.matrix());
  }
  SUBCASE("trajectories stay Hermitian, normalized and positive") {
    std::mt19937_64 rng(10);
    const ComplexMatrix h = 3.0 * oracle::random_hermitian(3, rng);
    const std::vector<DissipationChannel> ch{{projector(HilbertSpace::trion(), 0, 2), 1.0},
                                             {projector(HilbertSpace::trion(), 0, 1), 0.4},
                                             {projector(HilbertSpace::trion(), 1, 1), 0.2}};
    const auto l = build_liouvillian(h, ch);
    const auto times = std::vector<double>{0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
    const auto states = propagate(DensityMatrix(oracle::random_density(3, rng)), l, times, 1e-10);
    for (const auto& s : states) {
      CHECK((s.matrix() - s.matrix().adjoint()).cwiseAbs().maxCoeff() <= 1e-8);
      CHECK(std::abs(s.matrix().trace() - 1.0) <= 1e-9);
      CHECK(eig_hermitian(s.matrix()).values.minCoeff() >= -1e-7);
    }
  }
  SUBCASE("grid errors") {
    const Liouvillian zero(2, ComplexMatrix::Zero(4, 4));
    const std::vector<double> descending{1.0, 0.5};
    const std::vector<double> negative{-1.0};
    CHECK_THROWS_AS(propagate(DensityMatrix::basis_state(2, 0), zero, descending, 1e-8), ArgumentError);
    CHECK_THROWS_AS(propagate(DensityMatrix::basis_state(2, 0), zero, negative, 1e-8), ArgumentError);
  }
  SUBCASE("unreachable tolerance reports the time reached") {
    const std::vector<DissipationChannel> ch{{projector(kTwoLevel, 0, 1), 5.0}};
    const auto l = build_liouvillian(two_level_drive(40.0, 0.0), ch);
    const std::vector<double> t{10.0};
    try {
      evolve(l, vec(DensityMatrix::basis_state(2, 1).matrix()), t, 1e-10, 50);
      FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
      CHECK(e.reached_time() > 0.0);
      CHECK(e.reached_time() < 10.0);
    }
    CHECK_THROWS_AS(evolve(l, vec(DensityMatrix::basis_state(2, 1).matrix()), t, 1e-300), IntegrationError);
  }
}

TEST_CASE("expectation") {
  std::mt19937_64 rng(12);
  const DensityMatrix rho(oracle::random_density(3, rng));
  CHECK(std::abs(expectation(rho, ComplexMatrix::Identity(3, 3)) - 1.0) <= 1e-12);
  CHECK(expectation(DensityMatrix::basis_state(3, 0), projector(HilbertSpace::trion(), 2, 2)) == Complex(0.0));
  CHECK(std::abs(expectation(rho, oracle::random_hermitian(3, rng)).imag()) <= 1e-12);
  CHECK_THROWS_AS(expectation(rho, ComplexMatrix::Identity(2, 2)), ArgumentError);
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(2, 2)), ArgumentError);  // trace 2
  ComplexMatrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, ArgumentError);
  ComplexMatrix skew(2, 2);
  skew << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix{skew}, ArgumentError);
}
