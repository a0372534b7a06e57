#include "teicp/tensor.hpp"

#include "teicp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace teicp {

const char* to_string(SolverError::Kind kind) noexcept {
  switch (kind) {
    case SolverError::Kind::OrderCapReached:
      return "order-cap";
    case SolverError::Kind::NumericalFailure:
      return "numerical-failure";
    case SolverError::Kind::DeltaUnderflow:
      return "delta-underflow";
    case SolverError::Kind::LevelCapExceeded:
      return "level-cap";
    case SolverError::Kind::NotCopositive:
      return "not-copositive";
  }
  return "unknown";
}

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

// Advances a base-n odometer; returns false after the last multi-index.
bool next_index(std::vector<int>& idx, int n) {
  for (int p = static_cast<int>(idx.size()) - 1; p >= 0; --p) {
    if (++idx[p] < n) return true;
    idx[p] = 0;
  }
  return false;
}

void check_dim(const Tensor& t, const Vec& x) {
  if (x.size() != t.dim()) {
    throw InputError("vector length " + std::to_string(x.size()) + " does not match tensor dimension " +
                     std::to_string(t.dim()));
  }
}

}  // namespace

Tensor::Tensor(int order, int dim, std::vector<double> entries, bool symmetric)
    : order_(order), dim_(dim), symmetric_(symmetric), entries_(std::move(entries)) {
  if (order < 1 || dim < 1) throw InputError("tensor order and dimension must be positive");
  if (entries_.size() != ipow(dim, order)) {
    throw InputError("tensor entry count " + std::to_string(entries_.size()) + " != " + std::to_string(dim) +
                     "^" + std::to_string(order));
  }
  if (symmetric_ && symmetry_defect() > 1e-12) throw InputError("tensor flagged symmetric but is not");
}

Tensor Tensor::identity(int order, int dim) {
  if (order < 1 || dim < 1) throw InputError("tensor order and dimension must be positive");
  std::vector<double> e(ipow(dim, order), 0.0);
  std::size_t stride = 0;
  for (int p = 0; p < order; ++p) stride += ipow(dim, p);
  for (int i = 0; i < dim; ++i) e[i * stride] = 1.0;
  return Tensor(order, dim, std::move(e), true);
}

Tensor Tensor::from_function(int order, int dim, const std::function<double(std::span<const int>)>& f) {
  if (order < 1 || dim < 1) throw InputError("tensor order and dimension must be positive");
  std::vector<double> e;
  e.reserve(ipow(dim, order));
  std::vector<int> idx(order, 0), one_based(order);
  do {
    for (int p = 0; p < order; ++p) one_based[p] = idx[p] + 1;
    e.push_back(f(one_based));
  } while (next_index(idx, dim));
  return Tensor(order, dim, std::move(e));
}

std::size_t Tensor::linear_index(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order_) throw InputError("multi-index length != tensor order");
  std::size_t k = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw InputError("multi-index out of range");
    k = k * dim_ + i;
  }
  return k;
}

double Tensor::at(std::span<const int> index) const { return entries_[linear_index(index)]; }

double Tensor::symmetry_defect() const {
  double worst = 0.0;
  std::vector<int> idx(order_, 0);
  do {
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    worst = std::max(worst, std::abs(at(idx) - at(sorted)));
  } while (next_index(idx, dim_));
  return worst;
}

Tensor Tensor::scaled(double s) const {
  std::vector<double> e = entries_;
  for (double& v : e) v *= s;
  return Tensor(order_, dim_, std::move(e), symmetric_);
}

TensorPair::TensorPair(Tensor a, Tensor b) : A(std::move(a)), B(std::move(b)) {
  if (A.order() != B.order() || A.dim() != B.dim()) throw InputError("tensor pair has mismatched shapes");
}

Vec apply_contract(const Tensor& t, const Vec& x) {
  check_dim(t, x);
  const int n = t.dim();
  // Contract the trailing index repeatedly: n^m -> n^{m-1} -> ... -> n.
  std::vector<double> cur(t.entries().begin(), t.entries().end());
  for (int p = t.order(); p > 1; --p) {
    std::vector<double> next(cur.size() / n, 0.0);
    for (std::size_t r = 0; r < next.size(); ++r) {
      double acc = 0.0;
      const double* row = cur.data() + r * n;
      for (int j = 0; j < n; ++j) acc += row[j] * x[j];
      next[r] = acc;
    }
    cur.swap(next);
  }
  return Eigen::Map<Vec>(cur.data(), n);
}

double full_contract(const Tensor& t, const Vec& x) { return x.dot(apply_contract(t, x)); }

Vec hadamard_contract(const Tensor& t, const Vec& x) { return x.cwiseProduct(apply_contract(t, x)); }

Mat contract_jacobian(const Tensor& t, const Vec& x) {
  check_dim(t, x);
  const int n = t.dim();
  const int m = t.order();
  Mat jac = Mat::Zero(n, n);
  if (m == 1) return jac;
  std::vector<int> idx(m, 0);
  std::size_t k = 0;
  do {
    const double v = t.entries()[k++];
    if (v != 0.0) {
      for (int p = 1; p < m; ++p) {
        double prod = v;
        for (int q = 1; q < m; ++q) {
          if (q != p) prod *= x[idx[q]];
        }
        jac(idx[0], idx[p]) += prod;
      }
    }
  } while (next_index(idx, n));
  return jac;
}

Tensor principal_subtensor(const Tensor& t, std::span<const int> subset) {
  if (subset.empty()) throw InputError("principal subtensor index set is empty");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= t.dim()) throw InputError("principal subtensor index out of range");
    if (i > 0 && subset[i] <= subset[i - 1]) throw InputError("principal subtensor index set must be sorted");
  }
  const int r = static_cast<int>(subset.size());
  std::vector<double> e;
  e.reserve(ipow(r, t.order()));
  std::vector<int> idx(t.order(), 0), full(t.order());
  do {
    for (int p = 0; p < t.order(); ++p) full[p] = subset[idx[p]];
    e.push_back(t.at(full));
  } while (next_index(idx, r));
  return Tensor(t.order(), r, std::move(e), t.symmetric());
}

bool entrywise_positive(const Tensor& t) {
  return std::all_of(t.entries().begin(), t.entries().end(), [](double v) { return v > 0.0; });
}

Tensor permute_indices(const Tensor& t, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != t.dim()) throw InputError("permutation length != tensor dimension");
  std::vector<double> e(t.entries().size());
  std::vector<int> idx(t.order(), 0), img(t.order());
  std::size_t k = 0;
  do {
    for (int p = 0; p < t.order(); ++p) img[p] = perm[idx[p]];
    e[t.linear_index(img)] = t.entries()[k++];
  } while (next_index(idx, t.dim()));
  return Tensor(t.order(), t.dim(), std::move(e), t.symmetric());
}

}  // namespace teicp
