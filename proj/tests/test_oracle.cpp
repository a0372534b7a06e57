#include "teicp/errors.hpp"
#include "teicp/oracle.hpp"
#include "teicp/problem_io.hpp"

#include <doctest.h>

using namespace teicp;

namespace {

TensorPair alternating(int n) { return TensorPair(formula_tensor("alternating-harmonic", 3, n), Tensor::identity(3, n)); }

}  // namespace

TEST_CASE("single supports use the closed form") {
  const auto s1 = enumerate_support(alternating(3), {0});
  REQUIRE(s1.solutions.size() == 1);
  CHECK(s1.solutions[0].first == doctest::Approx(-3.0));
  const auto s3 = enumerate_support(alternating(3), {2});
  CHECK(s3.solutions[0].first == doctest::Approx(-1.0));
  CHECK_THROWS_AS(enumerate_support(alternating(3), {}), InputError);
}

TEST_CASE("alternating family, n = 3, has seven pairs") {
  const auto r = enumerate_all(alternating(3));
  const std::vector<double> expect{-8.7329, -8.1633, -3.1458, -3.0, -1.2863, -1.0, 2.1458};
  REQUIRE(r.pairs.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(r.pairs[i].lambda == doctest::Approx(expect[i]).epsilon(1e-4));
  for (const auto& p : r.pairs) {
    CHECK(p.residuals.min_x >= -1e-6);
    CHECK(p.residuals.min_w >= -1e-6);
    CHECK(p.residuals.complementarity <= 1e-6);
  }
}

TEST_CASE("exp family keeps only the interior pair") {
  const auto r = enumerate_all(TensorPair(formula_tensor("exp-alternating", 5, 3), Tensor::identity(5, 3)));
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].lambda == doctest::Approx(2.4335).epsilon(1e-4));
}

TEST_CASE("identity pair reports a continuum") {
  const auto r = enumerate_all(TensorPair(Tensor::identity(3, 2), Tensor::identity(3, 2)));
  CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("size guard") {
  CHECK_THROWS_AS(enumerate_all(TensorPair(Tensor::identity(3, 5), Tensor::identity(3, 5))), InputError);
}

TEST_CASE("compare matches up to scaling and reports differences") {
  auto ref = enumerate_all(alternating(3)).pairs;
  auto cand = ref;
  for (auto& p : cand) p.x *= 2.5;
  CHECK(compare(cand, ref, 1e-6).ok());
  cand.pop_back();
  const auto rep = compare(cand, ref, 1e-6);
  CHECK(rep.missing.size() == 1);
  CHECK(rep.extra.empty());
  CHECK(rep.matched == 6);
}

TEST_CASE("support decomposition") {
  const TensorPair pair = alternating(3);
  for (const auto& p : enumerate_all(pair).pairs) {
    std::vector<int> support;
    for (int i = 0; i < 3; ++i) {
      if (p.x[i] > 0) support.push_back(i);
    }
    const auto sub = enumerate_support(pair, support);
    bool found = false;
    for (const auto& [l, y] : sub.solutions) {
      double d = 0;
      for (std::size_t i = 0; i < support.size(); ++i) d = std::max(d, std::abs(y[(int)i] - p.x[support[i]]));
      if (std::abs(l - p.lambda) <= 1e-7 && d <= 1e-7) found = true;
    }
    CHECK(found);
  }
}
