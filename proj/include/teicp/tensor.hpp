#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace teicp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Dense m-th order, n-dimensional real tensor.
///
/// Entries are stored row-major over the multi-index (i1, ..., im), i1 slowest.
/// Symmetric tensors are stored in full; the flag is checked at construction.
/// Instances are immutable.
class Tensor {
 public:
  Tensor(int order, int dim, std::vector<double> entries, bool symmetric = false);

  static Tensor identity(int order, int dim);

  /// Fills entry (i1, ..., im) with `f` evaluated at the 1-based multi-index.
  static Tensor from_function(int order, int dim,
                              const std::function<double(std::span<const int>)>& f);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }
  bool symmetric() const noexcept { return symmetric_; }
  std::span<const double> entries() const noexcept { return entries_; }

  /// 0-based multi-index access.
  double at(std::span<const int> index) const;

  std::size_t linear_index(std::span<const int> index) const;

  /// Largest deviation between an entry and its image under index permutations.
  double symmetry_defect() const;

  Tensor scaled(double s) const;

 private:
  int order_;
  int dim_;
  bool symmetric_;
  std::vector<double> entries_;
};

/// A and B of equal order and dimension.
struct TensorPair {
  TensorPair(Tensor a, Tensor b);

  int order() const noexcept { return A.order(); }
  int dim() const noexcept { return A.dim(); }

  Tensor A;
  Tensor B;
};

/// (T x^{m-1})_i = sum over i2..im of T_{i,i2..im} x_{i2} ... x_{im}.
Vec apply_contract(const Tensor& t, const Vec& x);

/// T x^m.
double full_contract(const Tensor& t, const Vec& x);

/// x o (T x^{m-1}).
Vec hadamard_contract(const Tensor& t, const Vec& x);

/// Jacobian of x -> T x^{m-1}; entry (i, j) is the derivative of component i in x_j.
Mat contract_jacobian(const Tensor& t, const Vec& x);

/// Tensor restricted to the sorted, 0-based index subset J.
Tensor principal_subtensor(const Tensor& t, std::span<const int> subset);

/// True iff every entry is strictly positive (sufficient for strict copositivity).
bool entrywise_positive(const Tensor& t);

/// Tensor with T_{pi(i1)..pi(im)} = source_{i1..im}.
Tensor permute_indices(const Tensor& t, std::span<const int> perm);

}  // namespace teicp
