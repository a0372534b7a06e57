#pragma once

#include "teicp/tensor.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace teicp {

/// Built-in tensor families, evaluated at 1-based multi-indices (i1, ..., im).
///
///   identity              delta_{i1..im}
///   alternating-harmonic  sum_t (-1)^{i_{t+1}} / i_t, cyclic in t (m = 3: (-1)^j/i + (-1)^k/j + (-1)^i/k)
///   exp-alternating       1 / sum_t (-1)^{t+1} exp(i_t)
///   arctan-product        arctan(i1 i2 ... im)
///   tan-sum               tan(i1) + ... + tan(im)
///   inverse-linear        1 / (1 + sum_t t i_t)
///   tan-shift             tan(sum_t (-1)^{t+1} i_t / t)   (m = 3: tan(i - j/2 + k/3))
///   linear-sqrt           (sum_t t i_t - sqrt(sum_t t i_t^2)) / 10
///   random                symmetrized N(0,1) entries, needs a seed
///   random-positive       symmetrized U(0.5, 1.5) entries, needs a seed
Tensor formula_tensor(const std::string& family, int order, int dim, std::uint64_t seed = 0);

const std::vector<std::string>& formula_families();

/// Tensor from a JSON object {"format": ..., ...}; see README for the formats.
Tensor tensor_from_json(const nlohmann::json& spec, int order, int dim);

/// Dense JSON encoding.
nlohmann::json tensor_to_json(const Tensor& t);

/// {"schema_version", "order", "dim", "A", "B"}; B defaults to identity.
TensorPair pair_from_json(const nlohmann::json& problem);
TensorPair load_problem(const std::string& path);

/// Dense problem file for a formula pair.
nlohmann::json generate_problem(const std::string& a_family, const std::string& b_family, int dim, int order,
                                std::uint64_t seed);

inline constexpr int kSchemaVersion = 1;

}  // namespace teicp
