#include "teicp/errors.hpp"
#include "teicp/problem_io.hpp"
#include "teicp/tensor.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace teicp;

TEST_CASE("order-2 tensors contract like matrices") {
  const Tensor t(2, 2, {1.0, 2.0, 3.0, 4.0});
  const Vec x = (Vec(2) << 0.5, -1.0).finished();
  const Vec tx = apply_contract(t, x);
  CHECK(tx[0] == doctest::Approx(-1.5));
  CHECK(tx[1] == doctest::Approx(-2.5));
  CHECK(full_contract(t, x) == doctest::Approx(x.dot(tx)));
  CHECK(hadamard_contract(t, x)[1] == doctest::Approx(2.5));
}

TEST_CASE("identity tensor gives elementwise powers") {
  const Tensor id = Tensor::identity(4, 3);
  const Vec x = (Vec(3) << 0.5, 2.0, -1.0).finished();
  const Vec ix = apply_contract(id, x);
  for (int i = 0; i < 3; ++i) CHECK(ix[i] == doctest::Approx(std::pow(x[i], 3)));
  CHECK(full_contract(id, x) == doctest::Approx(x.array().pow(4).sum()));
}

TEST_CASE("contract_jacobian matches finite differences") {
  const Tensor t = formula_tensor("tan-shift", 3, 3);
  const Vec x = (Vec(3) << 0.3, -0.2, 0.9).finished();
  const Mat jac = contract_jacobian(t, x);
  const double h = 1e-6;
  for (int j = 0; j < 3; ++j) {
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vec fd = (apply_contract(t, xp) - apply_contract(t, xm)) / (2 * h);
    for (int i = 0; i < 3; ++i) CHECK(jac(i, j) == doctest::Approx(fd[i]).epsilon(1e-6));
  }
}

TEST_CASE("principal subtensor keeps the selected entries") {
  const Tensor t = formula_tensor("inverse-linear", 3, 3);
  const std::array<int, 2> subset{0, 2};
  const Tensor s = principal_subtensor(t, subset);
  REQUIRE(s.dim() == 2);
  const std::array<int, 3> full{2, 0, 2};
  const std::array<int, 3> local{1, 0, 1};
  CHECK(s.at(local) == t.at(full));
}

TEST_CASE("symmetry flag is validated") {
  CHECK_THROWS_AS(Tensor(2, 2, {1.0, 2.0, 3.0, 4.0}, true), InputError);
  CHECK_NOTHROW(Tensor(2, 2, {1.0, 2.0, 2.0, 4.0}, true));
  CHECK_THROWS_AS(Tensor(3, 2, {1.0, 2.0}), InputError);
}

TEST_CASE("relabeling coordinates moves entries") {
  const Tensor t = formula_tensor("arctan-product", 3, 3);
  const std::array<int, 3> perm{2, 0, 1};
  const Tensor p = permute_indices(t, perm);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const std::array<int, 3> src{i, j, k};
        const std::array<int, 3> dst{perm[i], perm[j], perm[k]};
        CHECK(p.at(dst) == t.at(src));
      }
    }
  }
}

TEST_CASE("entrywise positivity") {
  CHECK(entrywise_positive(formula_tensor("random-positive", 3, 2, 7)));
  CHECK_FALSE(entrywise_positive(Tensor::identity(3, 2)));
}
