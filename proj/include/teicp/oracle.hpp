#pragma once

#include "teicp/extract.hpp"
#include "teicp/tensor.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace teicp {

/// Brute-force enumerator settings. All tolerances are absolute.
struct OracleConfig {
  int newton_starts = 200;  // per support set
  int newton_iters = 50;
  double dedup_tol = 1e-7;
  double feasibility_tol = 1e-8;
  int max_dim = 4;
  int max_order = 6;
  std::uint64_t seed = 0;
};

/// Solutions of A_J y^{m-1} = lambda B_J y^{m-1}, |y| = 1, y > 0 on one support.
struct SupportSolutions {
  std::vector<std::pair<double, Vec>> solutions;  // (lambda, y), y indexed within J
  bool overflow = false;  // more distinct roots than the count bound: likely a continuum
};

SupportSolutions enumerate_support(const TensorPair& pair, const std::vector<int>& support,
                                   const OracleConfig& cfg = {});

struct OracleResult {
  std::vector<CEigenpair> pairs;  // unit norm x, sorted by lambda
  std::vector<std::string> diagnostics;
};

/// Union over all nonempty supports, filtered by w >= 0 off the support.
OracleResult enumerate_all(const TensorPair& pair, const OracleConfig& cfg = {});

struct MatchReport {
  int matched = 0;
  std::vector<std::pair<double, Vec>> missing;  // in the reference only
  std::vector<std::pair<double, Vec>> extra;    // in the candidate only
  bool ok() const { return missing.empty() && extra.empty(); }
};

/// Pairs up (lambda, x) entries with |dlambda| <= tol and unit-normalized x within
/// vector_tol (max norm), so B x^m = 1 and |x| = 1 outputs compare equal.
MatchReport compare(const std::vector<CEigenpair>& candidate, const std::vector<CEigenpair>& reference, double tol,
                    double vector_tol = 1e-4);

}  // namespace teicp
