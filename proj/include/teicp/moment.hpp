#pragma once

#include "teicp/poly.hpp"

#include <memory>
#include <vector>

namespace teicp {

/// Truncated moment sequence: y_alpha for |alpha| <= degree, in graded-lex rank order.
struct Tms {
  Tms(int nvars, int degree);
  Tms(int nvars, int degree, Vec values);

  int nvars;
  int degree;
  Vec values;

  double mass() const { return values[0]; }
};

/// Moments of the Dirac measure at u: y_alpha = u^alpha.
Tms point_moments(const Vec& u, int degree);

/// Prefix of y containing moments of degree <= degree.
Tms truncate(const Tms& y, int degree);

/// <p, y> = sum_alpha p_alpha y_alpha.
double riesz(const Polynomial& p, const Tms& y);

/// Coefficient vector of p in the graded-lex basis of degree <= max_degree.
Vec coefficient_vector(const Polynomial& p, const MonomialIndex& index);

/// Sparse linear map y -> L_q^{(k)}(y), the k-th localizing matrix of q
/// (q = 1 gives the moment matrix M_k). Precomputed once per (q, k).
///
/// Entry (beta, gamma) equals sum_alpha q_alpha y_{alpha + beta + gamma}, with
/// |beta|, |gamma| <= k - ceil(deg q / 2). Only the upper triangle is stored and
/// mirrored on realization, so realizations are exactly symmetric.
class LocalizingOperator {
 public:
  LocalizingOperator(const Polynomial& q, int order);

  int nvars() const noexcept { return nvars_; }
  int order() const noexcept { return order_; }
  /// Matrix side: number of monomials of degree <= order - ceil(deg q / 2).
  int side() const noexcept { return side_; }
  /// Number of moments the operator reads: monomials of degree <= 2 * order.
  std::size_t moment_count() const noexcept { return moment_count_; }

  Mat realize(const Vec& y) const;
  Mat realize(const Tms& y) const;

  /// Adjoint: returns v with <realize(y), w> = v . y for symmetric w.
  Vec adjoint(const Mat& w) const;

  /// One stored entry: matrix position (row <= col) and its terms.
  struct Entry {
    int row;
    int col;
    int begin;  // into ranks()/coefs()
    int end;
  };
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const std::vector<int>& ranks() const noexcept { return ranks_; }
  const std::vector<double>& coefs() const noexcept { return coefs_; }

  /// For each moment rank, the (row, col, coef) triples it contributes to, over
  /// the full matrix (both triangles).
  struct Contribution {
    int row;
    int col;
    double coef;
  };
  const std::vector<std::vector<Contribution>>& by_moment() const noexcept { return by_moment_; }

 private:
  int nvars_;
  int order_;
  int side_;
  std::size_t moment_count_;
  std::vector<Entry> entries_;
  std::vector<int> ranks_;
  std::vector<double> coefs_;
  std::vector<std::vector<Contribution>> by_moment_;
};

Mat moment_matrix(const Tms& y, int order);
Mat localizing_matrix(const Polynomial& q, const Tms& y, int order);

/// Rows of the scalar equalities equivalent to L_h^{(k)}(y) = 0:
/// <h x^beta, y> = 0 for |beta| <= 2 (k - ceil(deg h / 2)). Each row has
/// monomial_count(n, 2k) columns.
Mat equality_rows(const Polynomial& h, int order);

/// ceil(deg q / 2).
int half_degree(const Polynomial& q);

}  // namespace teicp
