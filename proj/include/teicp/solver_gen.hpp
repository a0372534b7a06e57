#pragma once

#include "teicp/extract.hpp"
#include "teicp/poly.hpp"
#include "teicp/sdp.hpp"
#include "teicp/tensor.hpp"

#include <cstdint>
#include <vector>

namespace teicp {

struct GenOptions {
  std::uint64_t seed = 1;     // drives both xi and the objective
  double delta0 = 0.05;
  int k_max = 0;              // 0 means m + 3
  int level_cap = 50;
  double level_tol = 1e-5;    // relative, for "probe value equals the current level"
  bool verbose = false;
  SdpOptions sdp;
  ExtractOptions extract;
};

enum class GenCase { I, II };

/// Unit vector with i.i.d. standard normal entries before normalization.
Vec random_direction(int n, std::uint64_t seed);

/// Eigenpairs (unit-norm x) with xi^T b(x) >= 0 (case I) or <= 0 (case II),
/// found level by level in increasing value of the objective f.
std::vector<CEigenpair> case_sweep(const TensorPair& pair, const Vec& xi, const Polynomial& f, GenCase which,
                                   const GenOptions& opts);

/// Both cases, deduplicated and sorted by lambda.
std::vector<CEigenpair> all_ceigs_general(const TensorPair& pair, const GenOptions& opts = {});

}  // namespace teicp
