#include <doctest.h>

#include <cmath>
#include <sstream>

#include "banklaine/bank_laine.hpp"
#include "banklaine/zero_census.hpp"

using namespace banklaine;

namespace {

census::ValueSlope sine(double x) { return {std::sin(x), std::cos(x)}; }

census::ZeroCensus airy_product_census(double a, double b) {
  const auto e = bl::BankLaineFunction::from_pair(ode::solution_pair(CoefficientFunction::polynomial({0.0, 1.0}), 0.0));
  bl::JetStream stream(e);
  return census::real_zeros_scan(
      [&](double x) {
        const auto j = stream.at(x);
        return census::ValueSlope{j.e0, j.e1};
      },
      a, b, 0.05);
}

}  // namespace

TEST_SUITE("zero_census") {
  TEST_CASE("sine zeros on [0.1, 10]") {
    const auto c = census::real_zeros_scan(sine, 0.1, 10.0, 0.3);
    REQUIRE(c.zeros.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(c.zeros[static_cast<std::size_t>(k)] - (k + 1) * kPi) < 1e-13);
  }

  TEST_CASE("sine zeros on [-10, 10] alternate") {
    const auto c = census::real_zeros_scan(sine, -10.0, 10.0, 0.3);
    CHECK(c.zeros.size() == 7);
    CHECK(census::sign_alternation_check(c).ok);
    for (double d : c.abs_slope_minus_sign) CHECK(d < 1e-12);
  }

  TEST_CASE("close pair of zeros is resolved") {
    // (x - 1)(x - 1.001) has a tiny bump between its zeros
    const auto c = census::real_zeros_scan(
        [](double x) { return census::ValueSlope{(x - 1.0) * (x - 1.001), 2.0 * x - 2.001}; }, 0.0, 3.0, 0.25);
    REQUIRE(c.zeros.size() == 2);
    CHECK(std::abs(c.zeros[0] - 1.0) < 1e-12);
    CHECK(std::abs(c.zeros[1] - 1.001) < 1e-12);
  }

  TEST_CASE("non-real values are rejected") {
    try {
      (void)census::real_zeros_scan([](double x) { return census::ValueSlope{std::exp(Complex(0.0, x)), 0.0}; }, 0.0,
                                    1.0, 0.1);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRealityViolation);
    }
  }

  TEST_CASE("argument principle counts") {
    const auto poly = [](Complex z) { return census::ValueSlope{z * z - 1.0, 2.0 * z}; };
    CHECK(census::count_zeros_region(poly, {-2.0, 2.0, -2.0, 2.0}) == 2);
    CHECK(census::count_zeros_region([](Complex z) { return std::sin(z); }, [](Complex z) { return std::cos(z); },
                                     {0.1, 10.0, -1.0, 1.0}) == 3);
  }

  TEST_CASE("argument principle agrees with the real scan for A = z") {
    const auto c = airy_product_census(0.0, 20.0);
    const auto e = bl::BankLaineFunction::from_pair(ode::solution_pair(CoefficientFunction::polynomial({0.0, 1.0}), 0.0));
    bl::JetStream stream(e);
    const int n = census::count_zeros_region(
        [&](Complex z) {
          const auto j = stream.at(z);
          return census::ValueSlope{j.e0, j.e1};
        },
        {0.0, 20.0, -2.0, 2.0});
    // E(0) = 0 sits on the edge; the count settles on a slightly grown rectangle that includes it
    REQUIRE(!c.zeros.empty());
    CHECK(c.zeros.front() == 0.0);
    CHECK(static_cast<std::size_t>(n) == c.zeros.size());
    CHECK(n > 10);
  }

  TEST_CASE("counting function") {
    const auto c = census::real_zeros_scan(sine, -7.0, 7.0, 0.3);
    CHECK(census::counting_function(c, 7.0) == 5);
    CHECK(census::counting_function(census::census_from_zeros({}, 5.0), 3.0) == 0);
    try {
      (void)census::counting_function(c, 8.0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInsufficientScan);
    }
  }

  TEST_CASE("exponent of convergence of planted sets") {
    std::vector<double> lin;
    for (int k = 1; k <= 1000; ++k) {
      lin.push_back(k * kPi);
      lin.push_back(-k * kPi);
    }
    const auto a = census::convergence_exponent(census::census_from_zeros(lin, 1000.0 * kPi), 10.0, 3000.0);
    CHECK(std::abs(a.lambda_fit - 1.0) < 0.02);
    CHECK(std::abs(a.lambda_series - 1.0) < 0.05);

    std::vector<double> cub;
    for (int k = 1; k <= 100000; ++k) {
      cub.push_back(std::cbrt(static_cast<double>(k)));
      cub.push_back(-std::cbrt(static_cast<double>(k)));
    }
    const auto b = census::convergence_exponent(census::census_from_zeros(cub, std::cbrt(1e5)), 5.0, 46.0);
    CHECK(std::abs(b.lambda_fit - 3.0) < 0.05);
    CHECK(b.lambda_fit >= 0.0);
    CHECK(b.r_min < b.r_max);
  }

  TEST_CASE("exponent for the A = z product") {
    const auto c = airy_product_census(-60.0, 60.0);
    const auto est = census::convergence_exponent(c, 10.0, 60.0);
    CHECK(std::abs(est.lambda_fit - 1.5) < 0.1);
  }

  TEST_CASE("too few zeros") {
    try {
      (void)census::convergence_exponent(census::census_from_zeros({1.0, 2.0, 3.0}, 10.0), 1.0, 10.0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInsufficientData);
      CHECK(std::string(e.what()).find('3') != std::string::npos);
    }
  }

  TEST_CASE("sign alternation") {
    auto c = census::real_zeros_scan(sine, -10.0, 10.0, 0.3);
    CHECK(census::sign_alternation_check(c).ok);
    c.signs[3] = c.signs[2];
    const auto r = census::sign_alternation_check(c);
    CHECK_FALSE(r.ok);
    CHECK(r.first_violation == 3);
    const auto e = bl::BankLaineFunction::trig(1.0, 0.0, -0.5 * kPi, 1);
    const auto t = census::real_zeros_scan(
        [&](double x) {
          const auto j = bl::jet_at(e, x);
          return census::ValueSlope{j.e0, j.e1};
        },
        -20.0, 20.0, 0.05);
    CHECK(t.zeros.size() > 20);
    CHECK(census::sign_alternation_check(t).ok);
  }

  TEST_CASE("order from the maximum modulus") {
    std::vector<double> radii;
    for (int k = 0; k < 8; ++k) radii.push_back(4.0 * std::pow(1.5, k));
    const auto e1 = census::estimate_order([](Complex z) { return std::exp(z); }, radii);
    CHECK(std::abs(e1.order - 1.0) < 0.02);
    const auto e2 = census::estimate_order([](Complex z) { return std::exp(z * z); }, radii);
    CHECK(e2.truncated);
    CHECK(std::abs(e2.order - 2.0) < 0.02);
    CHECK_THROWS_AS((void)census::estimate_order([](Complex z) { return z; }, std::vector<double>{1.0, 2.0}), Error);
  }

  TEST_CASE("census csv") {
    const auto c = census::real_zeros_scan(sine, -4.0, 4.0, 0.3);
    std::ostringstream os;
    census::write_census_csv(os, c, "zero");
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,sign,abs_E,abs_Eprime_minus_sign,kind");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      CHECK(line.substr(line.size() - 5) == ",zero");
    }
    CHECK(rows == 3);
  }
}
