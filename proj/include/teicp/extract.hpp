#pragma once

#include "teicp/moment.hpp"
#include "teicp/tensor.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace teicp {

/// Number of eigenvalues of the symmetric matrix m with |sigma| > tol * max(sigma_1, 1).
int numerical_rank(const Mat& m, double tol = 1e-6);

struct FlatWitness {
  int t = 0;
  int rank = 0;
  std::vector<Vec> atoms;
  Vec weights;
};

/// Smallest t in [d0, k] with rank M_{t-d0}(y) == rank M_t(y). Atoms are not
/// filled in; see extract_atoms.
std::optional<FlatWitness> flat_truncation(const Tms& y, int k, int d0, double rank_tol = 1e-6);

struct ExtractOptions {
  double rank_tol = 1e-6;
  // Max relative Frobenius misfit of sum_j rho_j [u_j][u_j]^T against M_t(y).
  double reconstruction_tol = 1e-5;
  int retries = 3;
  std::uint64_t seed = 0;
};

/// Atoms of a y that is flat at order t with rank r: column echelon basis of
/// M_t, multiplication matrices, and a common Schur basis of a random
/// combination of them. Fills t, rank, atoms and weights; nullopt when the
/// atoms fail to reproduce M_t(y).
std::optional<FlatWitness> extract_atoms(const Tms& y, int t, int r, const ExtractOptions& opts = {});

/// Least-squares weights rho with sum_j rho_j point_moments(u_j, 2t) ~ y.
Vec atom_weights(const Tms& y, int t, const std::vector<Vec>& atoms);

enum class Normalization { Sphere, BNormalized };

struct PairResiduals {
  double min_x = 0.0;              // min_i x_i
  double min_w = 0.0;              // min_i w_i
  double complementarity = 0.0;    // max_i |x_i w_i|
  double normalization = 0.0;      // | |x|^2 - 1 | or | B x^m - 1 |
};

struct CEigenpair {
  double lambda = 0.0;
  Vec x;
  Vec w;  // lambda B x^{m-1} - A x^{m-1}
  PairResiduals residuals;
  int k = 0;     // relaxation order that produced x
  int t = 0;     // flat truncation order
  int rank = 0;  // rank of the flat moment matrix
};

/// Residuals of (lambda, x) as a complementarity eigenpair.
PairResiduals pair_residuals(const TensorPair& pair, double lambda, const Vec& x, Normalization norm);

/// Refines x by Newton steps on the active complementarity system and accepts
/// it when x >= -1e-6, w >= -1e-6, max |x_i w_i| <= 1e-6 and
/// |x^T w| <= 1e-6 (1 + |lambda|). For the sphere normalization lambda is
/// xi^T a(x) / xi^T b(x) with a = x o A x^{m-1}, b = x o B x^{m-1}, or the
/// least-squares ratio when |xi^T b| <= 1e-8 or xi is empty.
std::optional<CEigenpair> certify_pair(const TensorPair& pair, const Vec& x, Normalization norm,
                                       const Vec& xi = Vec());

}  // namespace teicp
