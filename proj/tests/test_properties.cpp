#include "property_checks.hpp"

#include <doctest.h>

using namespace teicp::props;

namespace {

void expect(const Check& c) {
  INFO(c.detail);
  CHECK(c.ok);
}

}  // namespace

TEST_CASE("dirac round trip") { expect(dirac_round_trip(100, 1)); }
TEST_CASE("localizing matrix at a point mass") { expect(localizing_identity(100, 2)); }
TEST_CASE("relaxation values grow with the order") { expect(hierarchy_monotone(4, 3)); }
TEST_CASE("eigenvalue count bound") { expect(count_bound(50, 4)); }
TEST_CASE("certified residual bounds") { expect(residual_bounds(4, 5)); }
TEST_CASE("eigenvalues scale with A and inversely with B") { expect(scaling_equivariance(3, 6)); }
