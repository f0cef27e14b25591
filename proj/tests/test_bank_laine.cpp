#include <doctest.h>

#include <cmath>
#include <random>

#include "banklaine/bank_laine.hpp"
#include "oracles.hpp"

using namespace banklaine;

namespace {

bl::BankLaineFunction sine() { return bl::BankLaineFunction::trig(0.5, 0.0, 0.5 * kPi, 1); }

bl::BankLaineFunction pair_of(CoefficientFunction a) {
  return bl::BankLaineFunction::from_pair(ode::solution_pair(std::move(a), 0.0));
}

}  // namespace

TEST_SUITE("bank_laine") {
  TEST_CASE("trig family jet at the origin") {
    const auto e = bl::BankLaineFunction::trig(1.0, 0.0, -0.5 * kPi, 1);
    const auto j = bl::jet_at(e, 0.0);
    CHECK(std::abs(j.e0) < 1e-15);
    CHECK(std::abs(j.e1 - 1.0) < 1e-15);
    CHECK(std::abs(j.e2) < 1e-15);
  }

  TEST_CASE("sin z from the trig family") {
    const auto e = sine();
    for (Complex z : {Complex(1.0, 0.0), Complex(0.3, -0.8), Complex(-4.0, 1.5)}) {
      const auto j = bl::jet_at(e, z);
      CHECK(std::abs(j.e0 - std::sin(z)) < 1e-14 * std::max(1.0, std::abs(std::sin(z))));
      CHECK(std::abs(j.e1 - std::cos(z)) < 1e-14 * std::max(1.0, std::abs(std::cos(z))));
      CHECK(std::abs(j.e2 + std::sin(z)) < 1e-14 * std::max(1.0, std::abs(std::sin(z))));
    }
    CHECK(std::abs(e.coefficient_at(2.0) - 0.25) < 1e-16);
  }

  TEST_CASE("pair with A = 0 gives E = z") {
    const auto e = pair_of(CoefficientFunction::constant(0.0));
    const auto j = bl::jet_at(e, 5.0);
    CHECK(std::abs(j.e0 - 5.0) < 1e-13);
    CHECK(std::abs(j.e1 - 1.0) < 1e-13);
    CHECK(std::abs(j.e2) < 1e-13);
  }

  TEST_CASE("pair with A = z against the series oracle") {
    const auto e = pair_of(CoefficientFunction::polynomial({0.0, 1.0}));
    const Complex z = 2.0;
    const auto o1 = oracle::airy_type(z, 1.0L, 0.0L);
    const auto o2 = oracle::airy_type(z, 0.0L, 1.0L);
    const auto j = bl::jet_at(e, z);
    CHECK(std::abs(j.e0 - o1.y * o2.y) < 1e-9);
    CHECK(std::abs(j.e1 - (o1.dy * o2.y + o1.y * o2.dy)) < 1e-9);
    CHECK(std::abs(j.e2 - (2.0 * o1.dy * o2.dy - 2.0 * z * o1.y * o2.y)) < 1e-9);
  }

  TEST_CASE("bl_residual vanishes for genuine products") {
    const auto s = sine();
    CHECK(std::abs(bl::bl_residual(bl::jet_at(s, 1.0), 0.25)) < 1e-12);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> eta(0.2, 2.0), w(-3.0, 3.0), x(-5.0, 5.0), y(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
      double w1 = w(rng), w2 = w(rng);
      if (std::abs(std::sin(w1 - w2)) < 0.1) w2 += 1.0;
      const double et = eta(rng);
      const auto e = bl::BankLaineFunction::trig(et, w1, w2, k % 2 ? 1 : -1);
      const Complex z(x(rng), y(rng));
      const auto j = bl::jet_at(e, z);
      if (std::abs(j.e0) < 1e-3) continue;
      CHECK(std::abs(bl::bl_residual(j, et * et)) < 1e-10);
    }
    const auto lin = pair_of(CoefficientFunction::constant(0.0));
    CHECK(std::abs(bl::bl_residual(bl::jet_at(lin, 3.0), 0.0)) < 1e-12);
  }

  TEST_CASE("bl_residual detects a wrong coefficient and a zero") {
    const auto s = sine();
    CHECK(std::abs(bl::bl_residual(bl::jet_at(s, 1.0), 0.3)) > 0.1);
    CHECK_THROWS_AS((void)bl::bl_residual(bl::jet_at(s, 0.0), 0.25), Error);
    try {
      (void)bl::bl_residual(bl::jet_at(s, 0.0), 0.25);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEvaluationAtZero);
    }
  }

  TEST_CASE("zero property signs") {
    const auto s = sine();
    CHECK(bl::verify_zero_property(s, kPi, 1e-12) == -1);
    CHECK(bl::verify_zero_property(s, 0.0, 1e-12) == 1);
    CHECK_THROWS_AS((void)bl::verify_zero_property(s, 1.0, 1e-8), Error);
    // jet whose slope is far from +-1
    const bl::Jet3 bad{0.0, 0.0, 0.5, 0.0};
    try {
      (void)bl::verify_zero_property(bad, 1e-8);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotBankLaineZero);
    }
  }

  TEST_CASE("first positive zero of the A = z product") {
    const auto e = pair_of(CoefficientFunction::polynomial({0.0, 1.0}));
    // bracket by the oracle, then bisect on E = f1 f2
    auto value = [](double x) {
      return (oracle::airy_type(x, 1.0L, 0.0L).y * oracle::airy_type(x, 0.0L, 1.0L).y).real();
    };
    double a = 0.1, b = 0.1;
    while (value(a) * value(b + 0.01) > 0.0) b += 0.01;
    b += 0.01;
    for (int k = 0; k < 80; ++k) {
      const double m = 0.5 * (a + b);
      (value(a) * value(m) <= 0.0 ? b : a) = m;
    }
    const int s = bl::verify_zero_property(e, 0.5 * (a + b), 1e-9);
    const auto j = bl::jet_at(e, 0.5 * (a + b));
    CHECK(std::abs(j.e1 - static_cast<double>(s)) < 1e-7);
  }

  TEST_CASE("Schwarzian of closed-form quotients") {
    const Complex a(0.0, 2.0);
    const Complex z(0.3, 0.1);
    const Complex u1 = a * std::exp(a * z);
    const bl::QuotientDerivatives q{u1, a * u1, a * a * u1};
    CHECK(std::abs(bl::schwarzian(q) - 2.0) < 1e-14);
    CHECK(std::abs(bl::schwarzian({1.0, 0.0, 0.0})) == 0.0);
    CHECK_THROWS_AS((void)bl::schwarzian({0.0, 1.0, 1.0}), Error);
  }

  TEST_CASE("Schwarzian link S_U = 2A") {
    const auto s = sine();
    for (Complex z : {Complex(1.0, 0.0), Complex(0.4, 0.6)}) {
      CHECK(std::abs(bl::schwarzian(bl::quotient_derivatives(s, z)) - 0.5) < 1e-12);
    }
    const auto e = pair_of(CoefficientFunction::polynomial({0.0, 1.0}));
    CHECK(std::abs(bl::schwarzian(bl::quotient_derivatives(e, 1.0)) - 2.0) < 1e-6);
    const auto one = pair_of(CoefficientFunction::constant(1.0));
    CHECK(std::abs(bl::schwarzian(bl::quotient_derivatives(one, Complex(0.7, 0.2))) - 2.0) < 1e-6);
  }

  TEST_CASE("quotient log-derivative") {
    CHECK(std::abs(bl::quotient_logderiv(bl::jet_at(sine(), 0.5 * kPi)) - 1.0) < 1e-15);
    const auto lin = pair_of(CoefficientFunction::constant(0.0));
    CHECK(std::abs(bl::quotient_logderiv(bl::jet_at(lin, 2.0)) - 0.5) < 1e-13);
    // U = f2/f1 for A = 1/4, differentiated numerically
    const auto pair = ode::solution_pair(CoefficientFunction::constant(0.25), 0.0);
    auto u = [&](Complex z) {
      const auto p = pair.evaluate(z);
      return p.f2 / p.f1;
    };
    const Complex z = 1.0;
    const Complex direct = oracle::derivative5(u, z, 1e-3) / u(z);
    const auto e = bl::BankLaineFunction::from_pair(pair);
    CHECK(std::abs(bl::quotient_logderiv(bl::jet_at(e, z)) - direct) < 1e-9);
  }

  TEST_CASE("critical rays") {
    auto rays = [](std::vector<Complex> c) { return bl::critical_rays(CoefficientFunction::polynomial(std::move(c))); };
    const auto r1 = rays({0.0, 1.0});
    REQUIRE(r1.size() == 3);
    CHECK(r1[0] == doctest::Approx(0.0));
    CHECK(r1[1] == doctest::Approx(2.0 * kPi / 3.0));
    CHECK(r1[2] == doctest::Approx(4.0 * kPi / 3.0));
    const auto r2 = rays({0.0, 0.0, 1.0});
    REQUIRE(r2.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(r2[static_cast<std::size_t>(k)] == doctest::Approx(0.5 * kPi * k));
    const auto r3 = rays({0.0, -1.0});
    REQUIRE(r3.size() == 3);
    CHECK(r3[0] == doctest::Approx(kPi / 3.0));
    CHECK(r3[1] == doctest::Approx(kPi));
    CHECK(r3[2] == doctest::Approx(5.0 * kPi / 3.0));
    for (double t : r3) CHECK(std::abs(std::arg(-std::exp(Complex(0.0, 3.0 * t)))) < 1e-12);
    CHECK_THROWS_AS((void)bl::critical_rays(CoefficientFunction::constant(2.0)), Error);
  }

  TEST_CASE("trig parameters are validated") {
    CHECK_THROWS_AS((void)bl::BankLaineFunction::trig(0.0, 0.0, 1.0, 1), Error);
    CHECK_THROWS_AS((void)bl::BankLaineFunction::trig(1.0, 0.5, 0.5, 1), Error);
    CHECK_THROWS_AS((void)bl::BankLaineFunction::trig(1.0, 0.0, 1.0, 2), Error);
  }
}
