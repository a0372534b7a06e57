#include "teicp/sdp.hpp"

#include <doctest.h>

#include <cmath>

using namespace teicp;

namespace {

Polynomial x1() { return Polynomial::variable(1, 0); }

}  // namespace

TEST_CASE("toy minimum over x^2 = 1, x >= 0") {
  const Polynomial h = x1() * x1() - Polynomial::constant(1, 1.0);
  // At order 1 the localizing block of x is the scalar y_1, so the bound is 0.
  const auto loose = solve(build_relaxation(x1(), {h}, {x1()}, 1, Sense::Minimize));
  REQUIRE(loose.status == SdpStatus::Optimal);
  CHECK(std::abs(loose.value) < 1e-6);
  const auto tight = solve(build_relaxation(x1(), {h}, {x1()}, 2, Sense::Minimize));
  REQUIRE(tight.status == SdpStatus::Optimal);
  CHECK(tight.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("x^2 + 1 = 0 has no feasible moments") {
  const Polynomial h = x1() * x1() + Polynomial::constant(1, 1.0);
  const auto prob = build_relaxation(x1(), {h}, {}, 1, Sense::Minimize);
  const auto out = solve(prob);
  REQUIRE(out.status == SdpStatus::Infeasible);
  REQUIRE(out.certificate.has_value());
  CHECK(verify_certificate(prob, *out.certificate) > 0.0);
}
