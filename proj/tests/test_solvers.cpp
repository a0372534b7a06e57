#include "teicp/errors.hpp"
#include "teicp/problem_io.hpp"
#include "teicp/solver_cop.hpp"
#include "teicp/solver_gen.hpp"

#include <doctest.h>

#include <cmath>

using namespace teicp;

namespace {

TensorPair dense_pair2() { return load_problem(TEICP_DATA_DIR "/dense_pair_n2.json"); }

}  // namespace

TEST_CASE("smallest eigenvalue and its atom") {
  const auto level = smallest_ceig(dense_pair2());
  CHECK(level.lambda == doctest::Approx(0.4678).epsilon(2e-4));
  REQUIRE(level.pairs.size() == 1);
  CHECK(level.pairs[0].x[0] == doctest::Approx(0.8328).epsilon(1e-3));
  CHECK(level.pairs[0].x[1] == doctest::Approx(0.0585).epsilon(1e-2));
}

TEST_CASE("copositive sweep ends with an infeasible relaxation") {
  const TensorPair pair = dense_pair2();
  const auto all = all_ceigs_copositive(pair);
  REQUIRE(all.size() == 3);
  const double last = all.back().lambda;
  const double delta = delta_probe(pair, last, {});
  CHECK(delta > 0.0);
  CHECK_FALSE(next_ceig(pair, last, delta, {}).has_value());
  for (const auto& p : all) CHECK(std::abs(p.lambda - full_contract(pair.A, p.x)) <= 1e-8);
}

TEST_CASE("copositive path refuses B without a positivity certificate") {
  const TensorPair pair(formula_tensor("alternating-harmonic", 3, 2), Tensor::identity(3, 2));
  try {
    all_ceigs_copositive(pair);
    FAIL("expected NotCopositive");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverError::Kind::NotCopositive);
  }
  CopOptions opts;
  opts.assert_copositive = true;
  CHECK_FALSE(all_ceigs_copositive(pair, opts).empty());
}

TEST_CASE("random direction") {
  const Vec a = random_direction(4, 3);
  CHECK(a.norm() == doctest::Approx(1.0));
  CHECK((a - random_direction(4, 3)).norm() == 0.0);
  CHECK((a - random_direction(4, 4)).norm() > 0.0);
}

TEST_CASE("general path agrees with the copositive path") {
  const TensorPair pair = dense_pair2();
  const auto cop = all_ceigs_copositive(pair);
  const auto gen = all_ceigs_general(pair);
  REQUIRE(gen.size() == cop.size());
  for (std::size_t i = 0; i < cop.size(); ++i) {
    CHECK(gen[i].lambda == doctest::Approx(cop[i].lambda).epsilon(1e-5));
    CHECK((gen[i].x - cop[i].x.normalized()).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("tan-sum family has no eigenpairs") {
  const TensorPair pair(formula_tensor("inverse-linear", 4, 2), formula_tensor("tan-sum", 4, 2));
  CHECK(all_ceigs_general(pair).empty());
}

TEST_CASE("eigenvalues closer than the cluster width are both reported") {
  // 0.365390 and 0.365407
  const TensorPair pair(formula_tensor("random", 3, 3, 110), formula_tensor("random-positive", 3, 3, 1110));
  const auto all = all_ceigs_copositive(pair);
  REQUIRE(all.size() == 5);
  CHECK(all[2].lambda == doctest::Approx(0.365390).epsilon(1e-5));
  CHECK(all[3].lambda == doctest::Approx(0.365407).epsilon(1e-5));
}

TEST_CASE("nearly coincident eigenvectors at order 4") {
  // x = (0.0062, 1.0) at -0.316681 and (0, 1) at -0.316516
  const TensorPair pair(formula_tensor("random", 4, 2, 126), formula_tensor("random-positive", 4, 2, 1126));
  const auto all = all_ceigs_copositive(pair);
  REQUIRE(all.size() == 5);
  CHECK(all[2].lambda == doctest::Approx(-0.316681).epsilon(1e-5));
  CHECK(all[3].lambda == doctest::Approx(-0.316516).epsilon(1e-5));
}
