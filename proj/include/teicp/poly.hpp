#pragma once

#include "teicp/tensor.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace teicp {

using Exponent = std::vector<int>;

/// Listing order of monomials: by total degree, then lexicographically with x1 highest
/// (1, x1, .., xn, x1^2, x1 x2, ...).
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

int total_degree(std::span<const int> alpha);

/// Number of monomials of degree <= d in n variables, C(n + d, d).
std::size_t monomial_count(int nvars, int max_degree);

/// Graded-lex enumeration of all monomials of degree <= max_degree, with
/// closed-form ranking.
class MonomialIndex {
 public:
  MonomialIndex(int nvars, int max_degree);

  int nvars() const noexcept { return nvars_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return table_.size(); }

  const Exponent& exponent(std::size_t rank) const { return table_.at(rank); }
  std::size_t rank(std::span<const int> alpha) const;

  /// Rank of alpha + beta, both given by rank.
  std::size_t rank_of_sum(std::size_t a, std::size_t b) const;

 private:
  int nvars_;
  int max_degree_;
  std::vector<Exponent> table_;
};

/// Sparse multivariate polynomial with double coefficients.
class Polynomial {
 public:
  using Terms = std::map<Exponent, double, GrlexLess>;

  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, double c);
  static Polynomial variable(int nvars, int i);
  static Polynomial monomial(const Exponent& alpha, double c = 1.0);

  int nvars() const noexcept { return nvars_; }
  int degree() const;
  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  double coefficient(const Exponent& alpha) const;

  /// Adds c x^alpha; results below the drop threshold are removed.
  void add_term(const Exponent& alpha, double c);

  double evaluate(const Vec& x) const;
  Vec gradient(const Vec& x) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

  static constexpr double kDropThreshold = 1e-14;

 private:
  int nvars_;
  Terms terms_;
};

/// Polynomial (T x^{m-1})_i.
Polynomial contract_polynomial(const Tensor& t, int i);

/// Polynomial T x^m.
Polynomial form_polynomial(const Tensor& t);

/// Equalities p and inequalities q whose common solutions with B x^m = 1 are the
/// normalized C-eigenvectors; f0 = A x^m recovers the eigenvalue.
struct CopSystem {
  Polynomial f0;
  std::vector<Polynomial> p;  // B x^m - 1, then (A x^m) b(x) - a(x)
  std::vector<Polynomial> q;  // x, then (A x^m) B x^{m-1} - A x^{m-1}
};

CopSystem build_cop_system(const TensorPair& pair);

/// Unit-sphere formulation split by the sign of xi . b(x).
struct GenSystem {
  std::vector<Polynomial> h;        // x.x - 1, then a_i b_j - b_i a_j for i < j
  std::vector<Polynomial> g;        // x, xi.b, (xi.a) B x^{m-1} - (xi.b) A x^{m-1}
  std::vector<Polynomial> g_tilde;  // x, -xi.b, (xi.b) A x^{m-1} - (xi.a) B x^{m-1}
};

GenSystem build_gen_system(const TensorPair& pair, const Vec& xi);

/// f = [x]_m^T (R^T R) [x]_m with R square, i.i.d. standard normal entries drawn
/// from a generator seeded with `seed`.
Polynomial random_sos_objective(int nvars, int half_degree, std::uint64_t seed);

}  // namespace teicp
