#include "teicp/oracle.hpp"

#include "hierarchy.hpp"
#include "teicp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace teicp {

namespace {

// F(y, lambda) = (A y^{m-1} - lambda B y^{m-1}, (|y|^2 - 1) / 2).
Vec residual(const TensorPair& sub, const Vec& y, double lambda) {
  const int s = sub.dim();
  Vec f(s + 1);
  f.head(s) = apply_contract(sub.A, y) - lambda * apply_contract(sub.B, y);
  f[s] = 0.5 * (y.squaredNorm() - 1.0);
  return f;
}

Mat jacobian(const TensorPair& sub, const Vec& y, double lambda) {
  const int s = sub.dim();
  Mat j = Mat::Zero(s + 1, s + 1);
  j.topLeftCorner(s, s) = contract_jacobian(sub.A, y) - lambda * contract_jacobian(sub.B, y);
  j.topRightCorner(s, 1) = -apply_contract(sub.B, y);
  j.bottomLeftCorner(1, s) = y.transpose();
  return j;
}

// Damped Newton from (y, lambda); true when it lands on a root.
bool newton(const TensorPair& sub, Vec& y, double& lambda, int iters) {
  const int s = sub.dim();
  Vec f = residual(sub, y, lambda);
  double fn = f.norm();
  for (int it = 0; it < iters && fn > 1e-14; ++it) {
    const Vec step = jacobian(sub, y, lambda).colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) return false;
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls, alpha *= 0.5) {
      const Vec yn = y + alpha * step.head(s);
      const double ln = lambda + alpha * step[s];
      const Vec fnew = residual(sub, yn, ln);
      if (fnew.norm() < (1.0 - 1e-4 * alpha) * fn) {
        y = yn;
        lambda = ln;
        f = fnew;
        fn = fnew.norm();
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return fn <= 1e-10 * (1.0 + std::abs(lambda));
}

double count_bound(int s, int m) { return s * std::pow(static_cast<double>(m), s - 1); }

}  // namespace

SupportSolutions enumerate_support(const TensorPair& pair, const std::vector<int>& support, const OracleConfig& cfg) {
  if (support.empty()) throw InputError("enumerate_support: empty support");
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= pair.dim()) throw InputError("enumerate_support: index out of range");
    if (i > 0 && support[i] <= support[i - 1]) throw InputError("enumerate_support: support must be sorted");
  }
  const TensorPair sub(principal_subtensor(pair.A, support), principal_subtensor(pair.B, support));
  const int s = sub.dim();
  const int m = sub.order();
  SupportSolutions out;

  if (s == 1) {
    const double a = sub.A.entries()[0];
    const double b = sub.B.entries()[0];
    if (b != 0.0) out.solutions.emplace_back(a / b, Vec::Ones(1));
    return out;
  }

  // One stream per support so results do not depend on enumeration order.
  std::uint64_t seed = cfg.seed;
  for (int j : support) seed = seed * 1315423911ULL + static_cast<std::uint64_t>(j) + 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.05, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int start = 0; start < cfg.newton_starts; ++start) {
    Vec y(s);
    for (int i = 0; i < s; ++i) y[i] = pos(rng);
    y.normalize();
    const double den = full_contract(sub.B, y);
    double lambda = std::abs(den) > 1e-12 ? full_contract(sub.A, y) / den : normal(rng);
    if (!newton(sub, y, lambda, cfg.newton_iters)) continue;
    if (y.minCoeff() < cfg.feasibility_tol) continue;
    bool dup = false;
    for (const auto& [l, v] : out.solutions) {
      if ((v - y).cwiseAbs().maxCoeff() <= cfg.dedup_tol) dup = true;
    }
    if (!dup) out.solutions.emplace_back(lambda, y);
  }
  out.overflow = out.solutions.size() > count_bound(s, m);
  return out;
}

OracleResult enumerate_all(const TensorPair& pair, const OracleConfig& cfg) {
  const int n = pair.dim();
  const int m = pair.order();
  if (n > cfg.max_dim || m > cfg.max_order) {
    throw InputError("oracle limited to n <= " + std::to_string(cfg.max_dim) + ", m <= " +
                     std::to_string(cfg.max_order));
  }
  OracleResult out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) support.push_back(i);
    }
    const auto sols = enumerate_support(pair, support, cfg);
    if (sols.overflow) {
      std::string js;
      for (int j : support) js += (js.empty() ? "" : ",") + std::to_string(j + 1);
      out.diagnostics.push_back("support {" + js + "}: " + std::to_string(sols.solutions.size()) +
                                " distinct roots exceed the count bound; eigenvector set is likely infinite");
    }
    for (const auto& [lambda, y] : sols.solutions) {
      Vec x = Vec::Zero(n);
      for (std::size_t i = 0; i < support.size(); ++i) x[support[i]] = y[static_cast<int>(i)];
      const Vec w = lambda * apply_contract(pair.B, x) - apply_contract(pair.A, x);
      bool feasible = true;
      for (int i = 0; i < n; ++i) {
        if (!(mask & (1u << i)) && w[i] < -cfg.feasibility_tol) feasible = false;
      }
      if (!feasible) continue;
      CEigenpair p;
      p.lambda = lambda;
      p.x = x;
      p.w = w;
      p.residuals = pair_residuals(pair, lambda, x, Normalization::Sphere);
      out.pairs.push_back(std::move(p));
    }
  }
  detail::dedupe_pairs(out.pairs, cfg.dedup_tol);
  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const CEigenpair& a, const CEigenpair& b) { return a.lambda < b.lambda; });
  return out;
}

MatchReport compare(const std::vector<CEigenpair>& candidate, const std::vector<CEigenpair>& reference, double tol,
                    double vector_tol) {
  MatchReport rep;
  std::vector<bool> used(reference.size(), false);
  for (const auto& c : candidate) {
    const Vec cx = c.x.normalized();
    bool found = false;
    for (std::size_t j = 0; j < reference.size() && !found; ++j) {
      if (used[j] || std::abs(c.lambda - reference[j].lambda) > tol) continue;
      if ((cx - reference[j].x.normalized()).cwiseAbs().maxCoeff() > vector_tol) continue;
      used[j] = true;
      found = true;
    }
    if (found) ++rep.matched;
    else rep.extra.emplace_back(c.lambda, c.x);
  }
  for (std::size_t j = 0; j < reference.size(); ++j) {
    if (!used[j]) rep.missing.emplace_back(reference[j].lambda, reference[j].x);
  }
  return rep;
}

}  // namespace teicp
