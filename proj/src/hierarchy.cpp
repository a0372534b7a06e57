#include "hierarchy.hpp"

#include <cmath>
#include <cstdio>

namespace teicp::detail {

namespace {

// Atoms of a flat y that certify as eigenpairs.
std::vector<CEigenpair> certified_atoms(const ClimbSpec& spec, const Tms& y, const FlatWitness& fw, int k) {
  std::vector<CEigenpair> pairs;
  const auto ex = extract_atoms(y, fw.t, fw.rank, *spec.extract);
  if (!ex) return pairs;
  for (const Vec& u : ex->atoms) {
    auto c = certify_pair(*spec.pair, u, spec.normalization, spec.xi);
    if (!c) continue;
    c->k = k;
    c->t = fw.t;
    c->rank = fw.rank;
    pairs.push_back(std::move(*c));
  }
  dedupe_pairs(pairs, 1e-6);
  return pairs;
}

}  // namespace

void dedupe_pairs(std::vector<CEigenpair>& pairs, double tol) {
  std::vector<CEigenpair> kept;
  for (auto& p : pairs) {
    bool dup = false;
    for (const auto& q : kept) {
      if ((p.x - q.x).cwiseAbs().maxCoeff() <= tol) dup = true;
    }
    if (!dup) kept.push_back(std::move(p));
  }
  pairs = std::move(kept);
}

ClimbResult climb(const ClimbSpec& spec) {
  ClimbResult res;
  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    res.k = k;
    const SdpProblem prob = build_relaxation(*spec.objective, *spec.equalities, *spec.inequalities, k, spec.sense);
    const SdpOutcome out = solve(prob, *spec.sdp);
    if (spec.verbose) {
      std::fprintf(stderr, "[%s] k=%d %s value=%.10g iters=%d\n", spec.tag, k, to_string(out.status), out.value,
                   out.iterations);
    }
    if (out.status == SdpStatus::Infeasible) {
      res.verdict = Verdict::Infeasible;
      return res;
    }
    if (out.status != SdpStatus::Optimal) {
      res.note = std::string("order ") + std::to_string(k) + ": " + to_string(out.status) + " (" + out.message + ")";
      continue;
    }
    const auto fw = flat_truncation(out.y, k, spec.d0, spec.extract->rank_tol);
    if (!fw) {
      res.note = "no flat truncation up to order " + std::to_string(k);
      continue;
    }
    auto pairs = certified_atoms(spec, out.y, *fw, k);
    if (spec.verbose) std::fprintf(stderr, "[%s]   flat t=%d rank=%d certified=%zu\n", spec.tag, fw->t, fw->rank, pairs.size());
    if (pairs.empty()) {
      res.note = "flat at order " + std::to_string(k) + " but no atom certified";
      continue;
    }
    res.verdict = Verdict::Flat;
    res.value = out.value;
    res.witness = *fw;
    res.pairs = std::move(pairs);
    return res;
  }
  return res;
}

ProbeResult probe(const ClimbSpec& spec, double bound, int k) {
  ProbeResult res;
  res.outcome = solve_value_probe(*spec.objective, *spec.equalities, *spec.inequalities, *spec.objective, bound, k,
                                  *spec.sdp);
  if (spec.verbose) {
    std::fprintf(stderr, "[%s] probe bound=%.10g k=%d %s value=%.10g\n", spec.tag, bound, k,
                 to_string(res.outcome.status), res.outcome.value);
  }
  if (res.outcome.status == SdpStatus::Optimal) {
    const auto fw = flat_truncation(res.outcome.y, k, spec.d0, spec.extract->rank_tol);
    res.flat = fw.has_value() && extract_atoms(res.outcome.y, fw->t, fw->rank, *spec.extract).has_value();
    if (res.flat) res.pairs = certified_atoms(spec, res.outcome.y, *fw, k);
  }
  return res;
}

}  // namespace teicp::detail
