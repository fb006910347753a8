#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "wapeq/acoustics.hpp"

using namespace wapeq;
using std::numbers::pi;

namespace {

SourceSpec benchmark_source() { return SourceSpec{25.0, 1500.0, 100.0, 6}; }

Environment wedge_env() {
  const cplx q{0.252252311, -0.0135135138};
  const double alpha = 1500.0 / (2.0 * pi * 25.0);
  return make_environment(alpha, q + 0.5, q,
                          BottomProfile::linear(200.0, 200.0 / 4000.0),
                          [](double, double) { return cplx{}; }, 3300.0);
}

}  // namespace

TEST_CASE("propagating mode count") {
  const SourceSpec src = benchmark_source();
  CHECK(propagating_mode_count(src, 200.0) == 6);

  SUBCASE("below first cutoff") {
    CHECK(propagating_mode_count(SourceSpec{1.0, 1500.0, 50.0, 1}, 200.0) == 0);
  }

  SUBCASE("doubling the depth roughly doubles the count") {
    const int c = propagating_mode_count(src, 200.0);
    const int c2 = propagating_mode_count(src, 400.0);
    CHECK(c2 >= 2 * c);
    CHECK(c2 <= 2 * c + 1);
  }

  SUBCASE("a mode exactly at cutoff does not propagate") {
    // k0 D / pi integer: f chosen so k0 = 2 pi f / c0 = 5 pi / D
    const double D = 200.0;
    const double f = 5.0 * 1500.0 / (2.0 * D);
    CHECK(propagating_mode_count(SourceSpec{f, 1500.0, 50.0, 1}, D) == 4);
  }
}

TEST_CASE("mode starter structure") {
  const SourceSpec src = benchmark_source();
  const double D = 200.0;

  SUBCASE("mid-depth source leaves even modes unexcited") {
    const auto c = mode_coefficients(src, D);
    REQUIRE(c.size() == 6);
    for (int m = 2; m <= 6; m += 2) CHECK(std::abs(c[m - 1]) <= 1e-12);
    for (int m = 1; m <= 5; m += 2) CHECK(std::abs(c[m - 1]) > 0.0);
  }

  SUBCASE("excited coefficients carry the eighth-turn phase") {
    const auto c = mode_coefficients(src, D);
    for (int m : {1, 3, 5}) {
      const double mag = std::abs(c[m - 1]);
      const cplx dir = c[m - 1] / mag;
      // sin(m pi / 2) alternates sign for odd m
      const double sign = (m % 4 == 1) ? 1.0 : -1.0;
      CHECK(std::abs(dir - sign * std::polar(1.0, pi / 4.0)) <= 1e-12);
      const double gamma_m = m * pi / D;
      const double k_m = std::sqrt(src.k0() * src.k0() - gamma_m * gamma_m);
      CHECK(mag ==
            doctest::Approx(std::sqrt(2.0 * pi / k_m) * 2.0 / D).epsilon(1e-12));
    }
  }

  SUBCASE("starter is symmetric about mid-depth for a mid-depth source") {
    const auto v0 = normal_mode_starter(src, D);
    for (double z : {10.0, 55.0, 90.0})
      CHECK(std::abs(v0(z) - v0(D - z)) <= 1e-12 * std::abs(v0(z)));
  }

  SUBCASE("single-mode starter is proportional to the first mode") {
    SourceSpec one = src;
    one.mode_count = 1;
    const auto v0 = normal_mode_starter(one, D);
    const cplx at_quarter = v0(D / 4.0);
    const cplx at_half = v0(D / 2.0);
    CHECK(std::abs(at_quarter / at_half - std::sin(pi / 4.0)) <= 1e-12);
    CHECK(std::abs(v0(0.0)) == 0.0);
    CHECK(std::abs(v0(D)) <= 1e-12 * std::abs(at_half));
  }

  SUBCASE("requesting an evanescent mode fails") {
    SourceSpec src7 = src;
    src7.mode_count = 7;
    CHECK_THROWS_AS(mode_coefficients(src7, D), EvanescentMode);
  }

  SUBCASE("source outside the water column is rejected") {
    SourceSpec buried = src;
    buried.z_source = 250.0;
    CHECK_THROWS_AS(mode_coefficients(buried, D), Error);
    buried.z_source = 0.0;
    CHECK_THROWS_AS(mode_coefficients(buried, D), Error);
  }
}

TEST_CASE("coordinate transform to the unit strip") {
  const Environment env = wedge_env();
  const double s0 = 200.0;

  SUBCASE("quadratic profile maps exactly") {
    const auto u0 = to_computational(
        [s0](double z) { return cplx{z * (s0 - z), 0.0}; }, env);
    for (double y : {0.0, 0.25, 0.7, 1.0})
      CHECK(std::abs(u0(y) - cplx{s0 * s0 * y * (1.0 - y), 0.0}) <=
            1e-12 * s0 * s0);
  }

  SUBCASE("zero maps to zero") {
    const auto u0 = to_computational([](double) { return cplx{}; }, env);
    CHECK(u0(0.5) == cplx{});
  }

  SUBCASE("starter value at mid-strip equals starter at source depth") {
    const auto v0 = normal_mode_starter(benchmark_source(), s0);
    const auto u0 = to_computational(v0, env);
    CHECK(std::abs(u0(0.5) - v0(100.0)) == 0.0);
  }
}

TEST_CASE("receiver extraction") {
  const Environment env = wedge_env();

  SUBCASE("node-aligned depth returns the nodal value") {
    FieldVector u(10);
    for (int j = 1; j < 10; ++j) u[j] = cplx{j * 1.0, -j * 0.5};
    const double s_r = env.bottom.s(0.0);  // 200
    const cplx v = field_at_receiver(u, 0.0, 0.3 * s_r, env);
    CHECK(std::abs(v - u[3]) <= 1e-12);
  }

  SUBCASE("constant interior is reproduced between nodes") {
    FieldVector u(10);
    for (int j = 1; j < 10; ++j) u[j] = cplx{2.5, 1.0};
    const cplx v = field_at_receiver(u, 0.0, 87.3, env);
    CHECK(std::abs(v - cplx{2.5, 1.0}) <= 1e-12);
  }

  SUBCASE("out-of-column depths are rejected") {
    FieldVector u(10);
    CHECK_THROWS_AS(field_at_receiver(u, 0.0, 200.0, env), OutOfWater);
    CHECK_THROWS_AS(field_at_receiver(u, 0.0, 250.0, env), OutOfWater);
    CHECK_THROWS_AS(field_at_receiver(u, 0.0, 0.0, env), OutOfWater);
    // deeper water further out
    CHECK_NOTHROW(field_at_receiver(u, 3300.0, 300.0, env));
  }

  SUBCASE("interpolation error decays at second order") {
    const auto f = [](double y) { return cplx{std::sin(pi * y), 0.0}; };
    const double s_r = env.bottom.s(0.0);
    const auto max_err = [&](int J) {
      const FieldVector u = p_h_sample(f, J);
      double worst = 0.0;
      for (int i = 0; i < 50; ++i) {
        const double z = s_r * (0.02 + 0.96 * i / 49.0);
        const cplx v = field_at_receiver(u, 0.0, z, env);
        worst = std::max(worst, std::abs(v - f(z / s_r)));
      }
      return worst;
    };
    const double ratio = max_err(64) / max_err(128);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
  }
}

TEST_CASE("transmission loss") {
  CHECK(transmission_loss(cplx{1.0, 0.0}, 1.0) == doctest::Approx(0.0));
  CHECK(transmission_loss(cplx{0.1, 0.0}, 100.0) == doctest::Approx(40.0));
  CHECK(transmission_loss(cplx{1.0, 0.0}, 4.0) ==
        doctest::Approx(6.0205999132796239).epsilon(1e-12));
  CHECK(std::isinf(transmission_loss(cplx{}, 5.0)));
  CHECK_THROWS_AS(transmission_loss(cplx{1.0, 0.0}, 0.0), ZeroRange);
  CHECK_THROWS_AS(transmission_loss(cplx{1.0, 0.0}, -2.0), ZeroRange);

  SUBCASE("invariant under a unit-modulus phase") {
    const cplx v{0.3, -0.8};
    const double tl = transmission_loss(v, 720.0);
    for (double phase : {0.3, 1.7, 3.0}) {
      const double rotated = transmission_loss(v * std::polar(1.0, phase), 720.0);
      CHECK(rotated == doctest::Approx(tl).epsilon(1e-14));
    }
  }
}

TEST_CASE("starter read from a table") {
  const std::string path = "starter_test.csv";
  {
    std::ofstream out(path);
    out << "z,re,im\n";
    out << "0,0,0\n";
    out << "50,1,-1\n";
    out << "100,2,0\n";
    out << "200,0,0\n";
  }
  const auto v0 = starter_from_csv(path);
  CHECK(std::abs(v0(50.0) - cplx{1.0, -1.0}) == 0.0);
  CHECK(std::abs(v0(25.0) - cplx{0.5, -0.5}) <= 1e-15);
  CHECK(std::abs(v0(150.0) - cplx{1.0, 0.0}) <= 1e-15);
  CHECK(v0(-5.0) == cplx{});
  CHECK(v0(500.0) == cplx{});
  std::remove(path.c_str());
}
