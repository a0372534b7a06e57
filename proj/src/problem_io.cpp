#include "teicp/problem_io.hpp"

#include "teicp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

namespace teicp {

using nlohmann::json;

namespace {

double alternating_harmonic(std::span<const int> idx) {
  const std::size_t m = idx.size();
  double s = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    const int next = idx[(t + 1) % m];
    s += (next % 2 == 0 ? 1.0 : -1.0) / idx[t];
  }
  return s;
}

double exp_alternating(std::span<const int> idx) {
  double s = 0.0;
  for (std::size_t t = 0; t < idx.size(); ++t) s += (t % 2 == 0 ? 1.0 : -1.0) * std::exp(idx[t]);
  return 1.0 / s;
}

double arctan_product(std::span<const int> idx) {
  double p = 1.0;
  for (int i : idx) p *= i;
  return std::atan(p);
}

double tan_sum(std::span<const int> idx) {
  double s = 0.0;
  for (int i : idx) s += std::tan(static_cast<double>(i));
  return s;
}

double inverse_linear(std::span<const int> idx) {
  double s = 1.0;
  for (std::size_t t = 0; t < idx.size(); ++t) s += static_cast<double>(t + 1) * idx[t];
  return 1.0 / s;
}

double tan_shift(std::span<const int> idx) {
  double s = 0.0;
  for (std::size_t t = 0; t < idx.size(); ++t) s += (t % 2 == 0 ? 1.0 : -1.0) * idx[t] / static_cast<double>(t + 1);
  return std::tan(s);
}

double linear_sqrt(std::span<const int> idx) {
  double lin = 0.0, sq = 0.0;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    const double w = static_cast<double>(t + 1);
    lin += w * idx[t];
    sq += w * idx[t] * idx[t];
  }
  return (lin - std::sqrt(sq)) / 10.0;
}

// Symmetric tensor with one draw per sorted index tuple.
template <class Dist>
Tensor random_symmetric(int order, int dim, std::uint64_t seed, Dist dist) {
  std::mt19937_64 rng(seed);
  std::map<std::vector<int>, double> drawn;
  auto t = Tensor::from_function(order, dim, [&](std::span<const int> idx) {
    std::vector<int> key(idx.begin(), idx.end());
    std::sort(key.begin(), key.end());
    auto it = drawn.find(key);
    if (it == drawn.end()) it = drawn.emplace(key, dist(rng)).first;
    return it->second;
  });
  return Tensor(order, dim, std::vector<double>(t.entries().begin(), t.entries().end()), true);
}

void check_sizes(int order, int dim) {
  if (order < 2) throw InputError("order must be at least 2");
  if (dim < 1) throw InputError("dim must be at least 1");
  if (std::pow(static_cast<double>(dim), order) > 1e8) throw InputError("tensor too large for dense storage");
}

std::vector<int> read_index(const json& e, int order, int dim) {
  if (!e.is_object() || !e.contains("index") || !e.contains("value")) {
    throw InputError("entry must be an object with \"index\" and \"value\"");
  }
  const auto& ij = e.at("index");
  if (!ij.is_array() || static_cast<int>(ij.size()) != order) {
    throw InputError("entry index must have exactly " + std::to_string(order) + " components");
  }
  std::vector<int> idx;
  for (const auto& v : ij) {
    if (!v.is_number_integer()) throw InputError("entry index components must be integers");
    const int i = v.get<int>();
    if (i < 1 || i > dim) throw InputError("entry index out of range 1.." + std::to_string(dim));
    idx.push_back(i - 1);
  }
  if (!e.at("value").is_number()) throw InputError("entry value must be a number");
  return idx;
}

std::size_t linear(std::span<const int> idx, int dim) {
  std::size_t p = 0;
  for (int i : idx) p = p * dim + i;
  return p;
}

}  // namespace

const std::vector<std::string>& formula_families() {
  static const std::vector<std::string> names = {
      "identity",      "alternating-harmonic", "exp-alternating", "arctan-product", "tan-sum",
      "inverse-linear", "tan-shift",           "linear-sqrt",     "random",         "random-positive"};
  return names;
}

Tensor formula_tensor(const std::string& family, int order, int dim, std::uint64_t seed) {
  check_sizes(order, dim);
  if (family == "identity") return Tensor::identity(order, dim);
  if (family == "random") return random_symmetric(order, dim, seed, std::normal_distribution<double>(0.0, 1.0));
  if (family == "random-positive") {
    return random_symmetric(order, dim, seed, std::uniform_real_distribution<double>(0.5, 1.5));
  }
  double (*f)(std::span<const int>) = nullptr;
  if (family == "alternating-harmonic") f = alternating_harmonic;
  else if (family == "exp-alternating") f = exp_alternating;
  else if (family == "arctan-product") f = arctan_product;
  else if (family == "tan-sum") f = tan_sum;
  else if (family == "inverse-linear") f = inverse_linear;
  else if (family == "tan-shift") f = tan_shift;
  else if (family == "linear-sqrt") f = linear_sqrt;
  else throw InputError("unknown formula family \"" + family + "\"");
  Tensor t = Tensor::from_function(order, dim, f);
  for (double v : t.entries()) {
    if (!std::isfinite(v)) throw InputError("family \"" + family + "\" has a non-finite entry at this order");
  }
  return t;
}

Tensor tensor_from_json(const json& spec, int order, int dim) {
  check_sizes(order, dim);
  if (!spec.is_object() || !spec.contains("format") || !spec.at("format").is_string()) {
    throw InputError("tensor must be an object with a string \"format\"");
  }
  const std::string format = spec.at("format").get<std::string>();
  const std::size_t total = static_cast<std::size_t>(std::llround(std::pow(dim, order)));

  if (format == "identity") return Tensor::identity(order, dim);
  if (format == "formula") {
    if (!spec.contains("family") || !spec.at("family").is_string()) throw InputError("formula needs \"family\"");
    const std::uint64_t seed = spec.value("seed", std::uint64_t{0});
    return formula_tensor(spec.at("family").get<std::string>(), order, dim, seed);
  }
  if (!spec.contains("entries") || !spec.at("entries").is_array()) {
    throw InputError("format \"" + format + "\" needs an \"entries\" array");
  }
  const json& entries = spec.at("entries");

  if (format == "dense") {
    if (entries.size() != total) {
      throw InputError("dense tensor has " + std::to_string(entries.size()) + " entries, expected " +
                       std::to_string(total));
    }
    std::vector<double> v;
    v.reserve(total);
    for (const auto& e : entries) {
      if (!e.is_number()) throw InputError("dense entries must be numbers");
      v.push_back(e.get<double>());
    }
    return Tensor(order, dim, std::move(v));
  }

  std::vector<double> v(total, 0.0);
  std::vector<bool> seen(total, false);
  if (format == "coordinate") {
    for (const auto& e : entries) {
      const auto idx = read_index(e, order, dim);
      const std::size_t p = linear(idx, dim);
      if (seen[p]) throw InputError("duplicate coordinate entry");
      seen[p] = true;
      v[p] = e.at("value").get<double>();
    }
    return Tensor(order, dim, std::move(v));
  }
  if (format == "symmetric-upper") {
    for (const auto& e : entries) {
      auto idx = read_index(e, order, dim);
      if (!std::is_sorted(idx.begin(), idx.end())) throw InputError("symmetric-upper indices must be nondecreasing");
      const double value = e.at("value").get<double>();
      if (seen[linear(idx, dim)]) throw InputError("duplicate symmetric-upper entry");
      do {
        const std::size_t p = linear(idx, dim);
        seen[p] = true;
        v[p] = value;
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
    return Tensor(order, dim, std::move(v), true);
  }
  throw InputError("unknown tensor format \"" + format + "\"");
}

json tensor_to_json(const Tensor& t) {
  return json{{"format", "dense"}, {"entries", std::vector<double>(t.entries().begin(), t.entries().end())}};
}

TensorPair pair_from_json(const json& problem) {
  if (!problem.is_object()) throw InputError("problem must be a JSON object");
  if (problem.contains("schema_version")) {
    const auto& sv = problem.at("schema_version");
    if (!sv.is_number_integer() || sv.get<int>() != kSchemaVersion) throw InputError("unsupported schema_version");
  }
  for (const char* key : {"order", "dim"}) {
    if (!problem.contains(key) || !problem.at(key).is_number_integer()) {
      throw InputError(std::string("problem needs integer \"") + key + "\"");
    }
  }
  if (!problem.contains("A")) throw InputError("problem needs \"A\"");
  const int order = problem.at("order").get<int>();
  const int dim = problem.at("dim").get<int>();
  Tensor a = tensor_from_json(problem.at("A"), order, dim);
  Tensor b = problem.contains("B") ? tensor_from_json(problem.at("B"), order, dim) : Tensor::identity(order, dim);
  return TensorPair(std::move(a), std::move(b));
}

TensorPair load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json problem;
  try {
    problem = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return pair_from_json(problem);
}

json generate_problem(const std::string& a_family, const std::string& b_family, int dim, int order,
                      std::uint64_t seed) {
  const Tensor a = formula_tensor(a_family, order, dim, seed);
  // Different stream for B so "random"/"random" does not give A == B.
  const Tensor b = formula_tensor(b_family, order, dim, seed + 0x5bd1e995ULL);
  return json{{"schema_version", kSchemaVersion},
              {"order", order},
              {"dim", dim},
              {"A", tensor_to_json(a)},
              {"B", tensor_to_json(b)}};
}

}  // namespace teicp
