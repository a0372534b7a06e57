#include "teicp/moment.hpp"

#include <doctest.h>

using namespace teicp;

namespace {

Vec monomial_vector(const Vec& u, int degree) {
  const MonomialIndex idx(static_cast<int>(u.size()), degree);
  Vec v(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    double p = 1.0;
    for (int i = 0; i < u.size(); ++i) p *= std::pow(u[i], idx.exponent(r)[i]);
    v[static_cast<int>(r)] = p;
  }
  return v;
}

}  // namespace

TEST_CASE("moment matrix of a point mass is rank one") {
  const Vec u = (Vec(2) << 0.3, 0.7).finished();
  const Tms y = point_moments(u, 6);
  const Vec mono = monomial_vector(u, 3);
  CHECK((moment_matrix(y, 3) - mono * mono.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(y.mass() == 1.0);
  CHECK(truncate(y, 2).values.size() == 6);
}

TEST_CASE("riesz functional evaluates polynomials at a point mass") {
  const Vec u = (Vec(3) << 0.2, -0.5, 1.5).finished();
  Polynomial p = Polynomial::monomial(Exponent{2, 1, 0}, 3.0);
  p.add_term(Exponent{0, 0, 3}, -1.0);
  CHECK(riesz(p, point_moments(u, 4)) == doctest::Approx(p.evaluate(u)));
}

TEST_CASE("localizing operator adjoint") {
  const Polynomial q = Polynomial::variable(2, 0) * Polynomial::variable(2, 1) + Polynomial::constant(2, 0.5);
  const LocalizingOperator op(q, 3);
  CHECK(op.side() == 6);
  const Vec y = Vec::Random(static_cast<int>(op.moment_count()));
  Mat w = Mat::Random(op.side(), op.side());
  w = (w + w.transpose()).eval();
  CHECK((op.realize(y).cwiseProduct(w)).sum() == doctest::Approx(op.adjoint(w).dot(y)));
}

TEST_CASE("equality rows vanish on a root") {
  const Polynomial h = Polynomial::variable(2, 0) * Polynomial::variable(2, 0) +
                       Polynomial::variable(2, 1) * Polynomial::variable(2, 1) - Polynomial::constant(2, 1.0);
  const Vec u = (Vec(2) << 0.6, 0.8).finished();
  const Mat rows = equality_rows(h, 3);
  CHECK(rows.cols() == static_cast<int>(monomial_count(2, 6)));
  CHECK((rows * point_moments(u, 6).values).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(half_degree(h) == 1);
}
