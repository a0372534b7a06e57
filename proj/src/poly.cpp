#include "teicp/poly.hpp"

#include "teicp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace teicp {

namespace {

// Monomials of exact degree d in v variables: C(v - 1 + d, d).
std::size_t exact_count(int v, int d) {
  if (v == 0) return d == 0 ? 1 : 0;
  std::size_t r = 1;
  for (int i = 1; i <= d; ++i) r = r * static_cast<std::size_t>(v - 1 + i) / static_cast<std::size_t>(i);
  return r;
}

void check_nvars(int a, int b) {
  if (a != b) throw InputError("polynomial variable counts differ");
}

}  // namespace

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

int total_degree(std::span<const int> alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

std::size_t monomial_count(int nvars, int max_degree) {
  if (max_degree < 0) return 0;
  return exact_count(nvars + 1, max_degree);
}

MonomialIndex::MonomialIndex(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree) {
  if (nvars < 1 || max_degree < 0) throw InputError("monomial index needs nvars >= 1 and degree >= 0");
  table_.reserve(monomial_count(nvars, max_degree));
  for (int d = 0; d <= max_degree; ++d) {
    // Lex-descending compositions of d into nvars parts.
    Exponent a(nvars, 0);
    a[0] = d;
    while (true) {
      table_.push_back(a);
      // Predecessor in lex order: find the last nonzero among the first n-1 parts.
      int j = nvars - 2;
      while (j >= 0 && a[j] == 0) --j;
      if (j < 0) break;
      const int tail = a[nvars - 1];
      a[nvars - 1] = 0;
      a[j] -= 1;
      a[j + 1] = tail + 1;
    }
  }
}

std::size_t MonomialIndex::rank(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != nvars_) throw InputError("exponent length != nvars");
  const int d = total_degree(alpha);
  if (d > max_degree_) throw InputError("monomial degree exceeds index range");
  std::size_t pos = monomial_count(nvars_, d - 1);
  int rem = d;
  for (int i = 0; i + 1 < nvars_; ++i) {
    for (int b = alpha[i] + 1; b <= rem; ++b) pos += exact_count(nvars_ - i - 1, rem - b);
    rem -= alpha[i];
  }
  return pos;
}

std::size_t MonomialIndex::rank_of_sum(std::size_t a, std::size_t b) const {
  Exponent s = table_[a];
  const Exponent& eb = table_[b];
  for (int i = 0; i < nvars_; ++i) s[i] += eb[i];
  return rank(s);
}

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  Exponent a(nvars, 0);
  a.at(i) = 1;
  return monomial(a);
}

Polynomial Polynomial::monomial(const Exponent& alpha, double c) {
  Polynomial p(static_cast<int>(alpha.size()));
  p.add_term(alpha, c);
  return p;
}

int Polynomial::degree() const {
  // Terms are graded, so the last key has maximal degree.
  return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
}

double Polynomial::coefficient(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Exponent& alpha, double c) {
  check_nvars(nvars_, static_cast<int>(alpha.size()));
  auto [it, inserted] = terms_.try_emplace(alpha, 0.0);
  it->second += c;
  if (std::abs(it->second) < kDropThreshold) terms_.erase(it);
}

double Polynomial::evaluate(const Vec& x) const {
  if (x.size() != nvars_) throw InputError("evaluation point length != nvars");
  double acc = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double v = c;
    for (int i = 0; i < nvars_; ++i) {
      for (int e = 0; e < alpha[i]; ++e) v *= x[i];
    }
    acc += v;
  }
  return acc;
}

Vec Polynomial::gradient(const Vec& x) const {
  if (x.size() != nvars_) throw InputError("evaluation point length != nvars");
  Vec g = Vec::Zero(nvars_);
  for (const auto& [alpha, c] : terms_) {
    for (int j = 0; j < nvars_; ++j) {
      if (alpha[j] == 0) continue;
      double v = c * alpha[j];
      for (int i = 0; i < nvars_; ++i) {
        const int e = i == j ? alpha[i] - 1 : alpha[i];
        for (int t = 0; t < e; ++t) v *= x[i];
      }
      g[j] += v;
    }
  }
  return g;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_nvars(nvars_, other.nvars_);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_nvars(nvars_, other.nvars_);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) < kDropThreshold) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_nvars(a.nvars_, b.nvars_);
  Polynomial r(a.nvars_);
  Exponent s(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) s[i] = ea[i] + eb[i];
      r.terms_[s] += ca * cb;
    }
  }
  for (auto it = r.terms_.begin(); it != r.terms_.end();) {
    it = std::abs(it->second) < Polynomial::kDropThreshold ? r.terms_.erase(it) : std::next(it);
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    os << std::abs(c);
    for (int i = 0; i < nvars_; ++i) {
      if (alpha[i] == 0) continue;
      os << "*x" << (i + 1);
      if (alpha[i] > 1) os << "^" << alpha[i];
    }
  }
  return os.str();
}

Polynomial contract_polynomial(const Tensor& t, int i) {
  const int n = t.dim();
  const int m = t.order();
  if (i < 0 || i >= n) throw InputError("contraction component out of range");
  Polynomial p(n);
  std::vector<int> idx(m, 0);
  idx[0] = i;
  Exponent alpha(n);
  while (true) {
    const double v = t.at(idx);
    if (v != 0.0) {
      std::fill(alpha.begin(), alpha.end(), 0);
      for (int q = 1; q < m; ++q) ++alpha[idx[q]];
      p.add_term(alpha, v);
    }
    int q = m - 1;
    while (q >= 1 && ++idx[q] == n) idx[q--] = 0;
    if (q < 1) break;
  }
  return p;
}

Polynomial form_polynomial(const Tensor& t) {
  Polynomial p(t.dim());
  for (int i = 0; i < t.dim(); ++i) p += Polynomial::variable(t.dim(), i) * contract_polynomial(t, i);
  return p;
}

CopSystem build_cop_system(const TensorPair& pair) {
  const int n = pair.dim();
  std::vector<Polynomial> ax, bx;
  for (int i = 0; i < n; ++i) {
    ax.push_back(contract_polynomial(pair.A, i));
    bx.push_back(contract_polynomial(pair.B, i));
  }
  Polynomial axm(n), bxm(n);
  for (int i = 0; i < n; ++i) {
    const Polynomial xi = Polynomial::variable(n, i);
    axm += xi * ax[i];
    bxm += xi * bx[i];
  }
  CopSystem sys{axm, {}, {}};
  sys.p.push_back(bxm - Polynomial::constant(n, 1.0));
  for (int i = 0; i < n; ++i) {
    const Polynomial xi = Polynomial::variable(n, i);
    sys.p.push_back(axm * (xi * bx[i]) - xi * ax[i]);
  }
  for (int i = 0; i < n; ++i) sys.q.push_back(Polynomial::variable(n, i));
  for (int i = 0; i < n; ++i) sys.q.push_back(axm * bx[i] - ax[i]);
  return sys;
}

GenSystem build_gen_system(const TensorPair& pair, const Vec& xi) {
  const int n = pair.dim();
  if (xi.size() != n) throw InputError("direction length != tensor dimension");
  std::vector<Polynomial> ax, bx, a, b;
  for (int i = 0; i < n; ++i) {
    ax.push_back(contract_polynomial(pair.A, i));
    bx.push_back(contract_polynomial(pair.B, i));
    const Polynomial v = Polynomial::variable(n, i);
    a.push_back(v * ax[i]);
    b.push_back(v * bx[i]);
  }
  GenSystem sys;
  Polynomial norm2(n);
  for (int i = 0; i < n; ++i) norm2 += Polynomial::variable(n, i) * Polynomial::variable(n, i);
  sys.h.push_back(norm2 - Polynomial::constant(n, 1.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) sys.h.push_back(a[i] * b[j] - b[i] * a[j]);
  }
  Polynomial xa(n), xb(n);
  for (int i = 0; i < n; ++i) {
    xa += xi[i] * a[i];
    xb += xi[i] * b[i];
  }
  for (int i = 0; i < n; ++i) {
    sys.g.push_back(Polynomial::variable(n, i));
    sys.g_tilde.push_back(Polynomial::variable(n, i));
  }
  sys.g.push_back(xb);
  sys.g_tilde.push_back(-1.0 * xb);
  for (int i = 0; i < n; ++i) {
    Polynomial v = xa * bx[i] - xb * ax[i];
    sys.g_tilde.push_back(-1.0 * v);
    sys.g.push_back(std::move(v));
  }
  return sys;
}

Polynomial random_sos_objective(int nvars, int half_degree, std::uint64_t seed) {
  const MonomialIndex basis(nvars, half_degree);
  const auto d = static_cast<Eigen::Index>(basis.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat r(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) r(i, j) = normal(rng);
  }
  const Mat gram = r.transpose() * r;
  Polynomial f(nvars);
  Exponent s(nvars);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Exponent& a = basis.exponent(i);
      const Exponent& b = basis.exponent(j);
      for (int v = 0; v < nvars; ++v) s[v] = a[v] + b[v];
      f.add_term(s, gram(i, j));
    }
  }
  return f;
}

}  // namespace teicp
