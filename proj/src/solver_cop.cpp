#include "teicp/solver_cop.hpp"

#include "hierarchy.hpp"
#include "teicp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace teicp {

namespace {

int order_cap(const TensorPair& pair, const CopOptions& opts) {
  const int cap = opts.k_max > 0 ? opts.k_max : pair.order() + 3;
  if (cap < pair.order()) throw InputError("k_max must be at least the tensor order");
  return cap;
}

double cluster_tol(const CopOptions& opts, double lambda) { return opts.cluster_tol * std::max(1.0, std::abs(lambda)); }

// Owns the polynomial system so a ClimbSpec can point into it.
struct CopContext {
  CopContext(const TensorPair& pair, const CopOptions& opts) : sys(build_cop_system(pair)), ineq(sys.q) {
    spec.objective = &sys.f0;
    spec.equalities = &sys.p;
    spec.inequalities = &ineq;
    spec.sense = Sense::Minimize;
    spec.k_min = pair.order();
    spec.k_max = order_cap(pair, opts);
    spec.d0 = pair.order();
    spec.pair = &pair;
    spec.normalization = Normalization::BNormalized;
    spec.sdp = &opts.sdp;
    spec.extract = &opts.extract;
    spec.verbose = opts.verbose;
    spec.tag = "cop";
  }

  CopSystem sys;
  std::vector<Polynomial> ineq;
  detail::ClimbSpec spec;
};

// Keeps the pairs whose eigenvalue matches the relaxation value.
CopLevel make_level(const detail::ClimbResult& res, const CopOptions& opts) {
  CopLevel level;
  level.relaxation_value = res.value;
  for (const auto& p : res.pairs) {
    if (std::abs(p.lambda - res.value) <= cluster_tol(opts, res.value)) level.pairs.push_back(p);
  }
  if (level.pairs.empty()) {
    throw SolverError(SolverError::Kind::NumericalFailure,
                      "certified atoms do not attain the relaxation value " + std::to_string(res.value));
  }
  level.lambda = level.pairs.front().lambda;
  for (const auto& p : level.pairs) level.lambda = std::min(level.lambda, p.lambda);
  return level;
}

[[noreturn]] void order_cap_error(const detail::ClimbResult& res) {
  throw SolverError(SolverError::Kind::OrderCapReached, "order cap " + std::to_string(res.k) + " reached: " + res.note);
}

void require_copositive(const TensorPair& pair, const CopOptions& opts) {
  if (!opts.assert_copositive && !entrywise_positive(pair.B)) {
    throw SolverError(SolverError::Kind::NotCopositive,
                      "copositive path needs B entrywise positive or an explicit copositivity assertion");
  }
}

// delta_probe plus the certified atoms of an accepted flat probe that sit
// within the cluster window above lambda_prev. Those eigenvalues are merged
// into the current level rather than skipped.
struct ProbeGap {
  double delta = 0.0;
  std::vector<CEigenpair> cluster;
};

ProbeGap probe_gap(const TensorPair& pair, double lambda_prev, const CopOptions& opts) {
  CopContext ctx(pair, opts);
  const double tol = cluster_tol(opts, lambda_prev);
  for (double delta = opts.delta0; delta >= 1e-10; delta *= 0.5) {
    for (int k = ctx.spec.k_min; k <= ctx.spec.k_max; ++k) {
      auto pr = detail::probe(ctx.spec, lambda_prev + delta, k);
      if (pr.outcome.status != SdpStatus::Optimal) continue;
      if (pr.outcome.value <= lambda_prev + tol) {
        // A value clearly above lambda_prev is another eigenvalue in the window;
        // climb further for a flat probe whose atoms show it.
        const double noise = 1e-6 * std::max(1.0, std::abs(lambda_prev));
        for (int k2 = k + 1; pr.pairs.empty() && pr.outcome.value > lambda_prev + noise && k2 <= ctx.spec.k_max; ++k2) {
          auto higher = detail::probe(ctx.spec, lambda_prev + delta, k2);
          if (higher.outcome.status == SdpStatus::Optimal) pr = std::move(higher);
        }
        ProbeGap gap{delta, {}};
        for (auto& p : pr.pairs) {
          if (std::abs(p.lambda - lambda_prev) <= tol) gap.cluster.push_back(std::move(p));
        }
        return gap;
      }
      // A flat probe value is exact, so a larger order cannot bring it down.
      if (pr.flat) break;
    }
  }
  throw SolverError(SolverError::Kind::DeltaUnderflow,
                    "delta fell below 1e-10 above lambda = " + std::to_string(lambda_prev) +
                        "; eigenvalues may cluster or form a continuum");
}

}  // namespace

CopLevel smallest_ceig(const TensorPair& pair, const CopOptions& opts) {
  require_copositive(pair, opts);
  CopContext ctx(pair, opts);
  const auto res = detail::climb(ctx.spec);
  if (res.verdict == detail::Verdict::Infeasible) {
    throw SolverError(SolverError::Kind::NumericalFailure, "first relaxation reported infeasible");
  }
  if (res.verdict == detail::Verdict::OrderCap) order_cap_error(res);
  return make_level(res, opts);
}

double delta_probe(const TensorPair& pair, double lambda_prev, const CopOptions& opts) {
  return probe_gap(pair, lambda_prev, opts).delta;
}

std::optional<CopLevel> next_ceig(const TensorPair& pair, double lambda_prev, double delta, const CopOptions& opts) {
  CopContext ctx(pair, opts);
  ctx.ineq.push_back(ctx.sys.f0 - Polynomial::constant(pair.dim(), lambda_prev + delta));
  const auto res = detail::climb(ctx.spec);
  if (res.verdict == detail::Verdict::Infeasible) return std::nullopt;
  if (res.verdict == detail::Verdict::OrderCap) order_cap_error(res);
  return make_level(res, opts);
}

std::vector<CEigenpair> all_ceigs_copositive(const TensorPair& pair, const CopOptions& opts) {
  require_copositive(pair, opts);
  const int n = pair.dim();
  const double count_bound = n * std::pow(static_cast<double>(pair.order()), n - 1);
  std::vector<CEigenpair> out;
  CopLevel level = smallest_ceig(pair, opts);
  int levels = 1;
  while (true) {
    for (auto& p : level.pairs) out.push_back(std::move(p));
    auto gap = probe_gap(pair, level.lambda, opts);
    for (auto& p : gap.cluster) out.push_back(std::move(p));
    const double delta = gap.delta;
    if (opts.verbose) std::fprintf(stderr, "[cop] lambda=%.10g delta=%.6g\n", level.lambda, delta);
    auto next = next_ceig(pair, level.lambda, delta, opts);
    if (!next) break;
    if (++levels > count_bound) {
      throw SolverError(SolverError::Kind::NumericalFailure, "more eigenvalue levels than the count bound allows");
    }
    level = std::move(*next);
  }
  detail::dedupe_pairs(out, 1e-6);
  std::stable_sort(out.begin(), out.end(), [](const CEigenpair& a, const CEigenpair& b) { return a.lambda < b.lambda; });
  return out;
}

}  // namespace teicp
