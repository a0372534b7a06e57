#pragma once

#include "teicp/extract.hpp"
#include "teicp/sdp.hpp"
#include "teicp/tensor.hpp"

#include <optional>
#include <vector>

namespace teicp {

struct CopOptions {
  double delta0 = 0.05;
  int k_max = 0;               // 0 means m + 3
  double cluster_tol = 1e-4;   // relative to max(1, |lambda|)
  bool assert_copositive = false;
  bool verbose = false;
  SdpOptions sdp;
  ExtractOptions extract;
};

/// One eigenvalue with every certified eigenvector found at it.
struct CopLevel {
  double lambda = 0.0;
  double relaxation_value = 0.0;
  std::vector<CEigenpair> pairs;
};

/// Minimizes A x^m over the C-eigenvector variety with B x^m = 1 for
/// k = m, m+1, ... until flat truncation. Throws SolverError on the order cap.
CopLevel smallest_ceig(const TensorPair& pair, const CopOptions& opts = {});

/// Largest delta in delta0 / 2^j whose probe max{A x^m : A x^m <= lambda_prev + delta}
/// returns lambda_prev. Throws SolverError(DeltaUnderflow) below 1e-10.
double delta_probe(const TensorPair& pair, double lambda_prev, const CopOptions& opts = {});

/// Next eigenvalue above lambda_prev + delta, or nullopt when the relaxation
/// is certified infeasible at some order.
std::optional<CopLevel> next_ceig(const TensorPair& pair, double lambda_prev, double delta,
                                  const CopOptions& opts = {});

/// All C-eigenpairs, sorted by lambda. Requires B entrywise positive unless
/// opts.assert_copositive is set.
std::vector<CEigenpair> all_ceigs_copositive(const TensorPair& pair, const CopOptions& opts = {});

}  // namespace teicp
