#include "teicp/moment.hpp"

#include "teicp/errors.hpp"

#include <string>

namespace teicp {

Tms::Tms(int nvars_, int degree_) : Tms(nvars_, degree_, Vec::Zero(static_cast<Eigen::Index>(monomial_count(nvars_, degree_)))) {}

Tms::Tms(int nvars_, int degree_, Vec values_) : nvars(nvars_), degree(degree_), values(std::move(values_)) {
  if (static_cast<std::size_t>(values.size()) != monomial_count(nvars, degree)) {
    throw InputError("tms length does not match C(n + d, d)");
  }
}

Tms point_moments(const Vec& u, int degree) {
  const int n = static_cast<int>(u.size());
  const MonomialIndex index(n, degree);
  Vec v(static_cast<Eigen::Index>(index.size()));
  v[0] = 1.0;
  // Each monomial of degree d >= 1 is x_j times one of degree d - 1, where j is
  // its first nonzero exponent.
  for (std::size_t r = 1; r < index.size(); ++r) {
    Exponent a = index.exponent(r);
    int j = 0;
    while (a[j] == 0) ++j;
    a[j] -= 1;
    v[static_cast<Eigen::Index>(r)] = u[j] * v[static_cast<Eigen::Index>(index.rank(a))];
  }
  return Tms(n, degree, std::move(v));
}

Tms truncate(const Tms& y, int degree) {
  if (degree > y.degree || degree < 0) throw InputError("truncation degree exceeds tms degree");
  return Tms(y.nvars, degree, y.values.head(static_cast<Eigen::Index>(monomial_count(y.nvars, degree))));
}

double riesz(const Polynomial& p, const Tms& y) {
  if (p.nvars() != y.nvars) throw InputError("riesz: variable count mismatch");
  if (p.degree() > y.degree) throw InputError("riesz: polynomial degree exceeds tms degree");
  const MonomialIndex index(y.nvars, y.degree);
  double acc = 0.0;
  for (const auto& [alpha, c] : p.terms()) acc += c * y.values[static_cast<Eigen::Index>(index.rank(alpha))];
  return acc;
}

Vec coefficient_vector(const Polynomial& p, const MonomialIndex& index) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(index.size()));
  for (const auto& [alpha, c] : p.terms()) v[static_cast<Eigen::Index>(index.rank(alpha))] = c;
  return v;
}

int half_degree(const Polynomial& q) { return (q.degree() + 1) / 2; }

LocalizingOperator::LocalizingOperator(const Polynomial& q, int order)
    : nvars_(q.nvars()), order_(order), moment_count_(monomial_count(q.nvars(), 2 * order)) {
  const int hd = half_degree(q);
  if (q.degree() > 2 * order || hd > order) {
    throw InputError("localizing order " + std::to_string(order) + " too small for degree " +
                     std::to_string(q.degree()));
  }
  const MonomialIndex rows(nvars_, order - hd);
  const MonomialIndex moments(nvars_, 2 * order);
  side_ = static_cast<int>(rows.size());
  by_moment_.resize(moment_count_);
  Exponent s(nvars_);
  for (int r = 0; r < side_; ++r) {
    for (int c = r; c < side_; ++c) {
      Entry e{r, c, static_cast<int>(ranks_.size()), 0};
      for (const auto& [alpha, coef] : q.terms()) {
        for (int v = 0; v < nvars_; ++v) s[v] = alpha[v] + rows.exponent(r)[v] + rows.exponent(c)[v];
        const int rank = static_cast<int>(moments.rank(s));
        ranks_.push_back(rank);
        coefs_.push_back(coef);
        by_moment_[rank].push_back({r, c, coef});
        if (r != c) by_moment_[rank].push_back({c, r, coef});
      }
      e.end = static_cast<int>(ranks_.size());
      entries_.push_back(e);
    }
  }
}

Mat LocalizingOperator::realize(const Vec& y) const {
  if (static_cast<std::size_t>(y.size()) < moment_count_) throw InputError("tms too short for localizing order");
  Mat m(side_, side_);
  for (const Entry& e : entries_) {
    double acc = 0.0;
    for (int t = e.begin; t < e.end; ++t) acc += coefs_[t] * y[ranks_[t]];
    m(e.row, e.col) = acc;
    m(e.col, e.row) = acc;
  }
  return m;
}

Mat LocalizingOperator::realize(const Tms& y) const {
  if (y.nvars != nvars_) throw InputError("tms variable count mismatch");
  if (y.degree < 2 * order_) throw InputError("tms degree too low for localizing order");
  return realize(y.values);
}

Vec LocalizingOperator::adjoint(const Mat& w) const {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(moment_count_));
  for (const Entry& e : entries_) {
    const double weight = e.row == e.col ? w(e.row, e.row) : w(e.row, e.col) + w(e.col, e.row);
    for (int t = e.begin; t < e.end; ++t) v[ranks_[t]] += coefs_[t] * weight;
  }
  return v;
}

Mat moment_matrix(const Tms& y, int order) {
  return LocalizingOperator(Polynomial::constant(y.nvars, 1.0), order).realize(y);
}

Mat localizing_matrix(const Polynomial& q, const Tms& y, int order) {
  return LocalizingOperator(q, order).realize(y);
}

Mat equality_rows(const Polynomial& h, int order) {
  const int n = h.nvars();
  const int span = 2 * (order - half_degree(h));
  if (span < 0) throw InputError("equality degree exceeds relaxation order");
  const MonomialIndex shifts(n, span);
  const MonomialIndex moments(n, 2 * order);
  Mat rows = Mat::Zero(static_cast<Eigen::Index>(shifts.size()), static_cast<Eigen::Index>(moments.size()));
  Exponent s(n);
  for (std::size_t b = 0; b < shifts.size(); ++b) {
    for (const auto& [alpha, coef] : h.terms()) {
      for (int v = 0; v < n; ++v) s[v] = alpha[v] + shifts.exponent(b)[v];
      rows(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(moments.rank(s))) += coef;
    }
  }
  return rows;
}

}  // namespace teicp
