#include "teicp/solver_gen.hpp"

#include "hierarchy.hpp"
#include "teicp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace teicp {

namespace {

// Separate streams for xi and R from one user seed.
constexpr std::uint64_t kObjectiveStream = 0x9e3779b97f4a7c15ULL;

int order_cap(const TensorPair& pair, const GenOptions& opts) {
  const int cap = opts.k_max > 0 ? opts.k_max : pair.order() + 3;
  if (cap < pair.order()) throw InputError("k_max must be at least the tensor order");
  return cap;
}

// Smallest delta in delta0 / 2^j with max{f : f <= level + delta} == level.
double level_delta(const detail::ClimbSpec& base, double level, const GenOptions& opts) {
  const double tol = opts.level_tol * std::max(1.0, std::abs(level));
  for (double delta = opts.delta0; delta >= 1e-10; delta *= 0.5) {
    for (int k = base.k_min; k <= base.k_max; ++k) {
      const auto pr = detail::probe(base, level + delta, k);
      if (pr.outcome.status != SdpStatus::Optimal) continue;
      if (pr.outcome.value <= level + tol) return delta;
      if (pr.flat) break;
    }
  }
  throw SolverError(SolverError::Kind::DeltaUnderflow,
                    "delta fell below 1e-10 above level " + std::to_string(level) +
                        "; the eigenvector set may be infinite");
}

}  // namespace

Vec random_direction(int n, std::uint64_t seed) {
  if (n < 1) throw InputError("random_direction: n must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

std::vector<CEigenpair> case_sweep(const TensorPair& pair, const Vec& xi, const Polynomial& f, GenCase which,
                                   const GenOptions& opts) {
  const int m = pair.order();
  const GenSystem sys = build_gen_system(pair, xi);
  const std::vector<Polynomial>& g = which == GenCase::I ? sys.g : sys.g_tilde;
  const char* tag = which == GenCase::I ? "case I" : "case II";

  detail::ClimbSpec spec;
  spec.objective = &f;
  spec.equalities = &sys.h;
  spec.inequalities = &g;
  spec.sense = Sense::Minimize;
  spec.k_min = m;
  spec.k_max = order_cap(pair, opts);
  spec.d0 = m;
  spec.pair = &pair;
  spec.normalization = Normalization::Sphere;
  spec.xi = xi;
  spec.sdp = &opts.sdp;
  spec.extract = &opts.extract;
  spec.verbose = opts.verbose;
  spec.tag = tag;

  std::vector<CEigenpair> found;
  std::vector<Polynomial> ineq = g;
  for (int level = 1; level <= opts.level_cap; ++level) {
    detail::ClimbSpec lvl = spec;
    lvl.inequalities = &ineq;
    const auto res = detail::climb(lvl);
    if (res.verdict == detail::Verdict::Infeasible) return found;
    if (res.verdict == detail::Verdict::OrderCap) {
      throw SolverError(SolverError::Kind::OrderCapReached,
                        std::string(tag) + ": order cap " + std::to_string(res.k) + " reached: " + res.note);
    }
    const double tol = opts.level_tol * std::max(1.0, std::abs(res.value));
    for (const auto& p : res.pairs) {
      if (std::abs(f.evaluate(p.x) - res.value) <= std::max(tol, 1e-6)) found.push_back(p);
    }
    const double delta = level_delta(spec, res.value, opts);
    if (opts.verbose) std::fprintf(stderr, "[%s] level %d f=%.10g delta=%.6g\n", tag, level, res.value, delta);
    ineq = g;
    ineq.push_back(f - Polynomial::constant(pair.dim(), res.value + delta));
  }
  throw SolverError(SolverError::Kind::LevelCapExceeded, std::string(tag) + ": level cap reached");
}

std::vector<CEigenpair> all_ceigs_general(const TensorPair& pair, const GenOptions& opts) {
  const int n = pair.dim();
  const int m = pair.order();
  const Vec xi = random_direction(n, opts.seed);
  Polynomial f = random_sos_objective(n, m, opts.seed ^ kObjectiveStream);
  std::vector<CEigenpair> all = case_sweep(pair, xi, f, GenCase::I, opts);
  if (!all.empty() && f.evaluate(all.front().x) < 1e-8) {
    // f nearly vanishes at an eigenvector; one redraw as a guard.
    if (opts.verbose) std::fprintf(stderr, "[gen] objective nearly zero at an eigenvector, redrawing R\n");
    f = random_sos_objective(n, m, (opts.seed ^ kObjectiveStream) + 1);
    all = case_sweep(pair, xi, f, GenCase::I, opts);
  }
  auto second = case_sweep(pair, xi, f, GenCase::II, opts);
  for (auto& p : second) all.push_back(std::move(p));
  detail::dedupe_pairs(all, 1e-6);
  std::stable_sort(all.begin(), all.end(), [](const CEigenpair& a, const CEigenpair& b) { return a.lambda < b.lambda; });
  return all;
}

}  // namespace teicp
