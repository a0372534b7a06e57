#include "property_checks.hpp"

#include "teicp/extract.hpp"
#include "teicp/moment.hpp"
#include "teicp/oracle.hpp"
#include "teicp/problem_io.hpp"
#include "teicp/sdp.hpp"
#include "teicp/solver_cop.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace teicp::props {

namespace {

Vec monomial_vector(const Vec& u, int degree) {
  const MonomialIndex idx(static_cast<int>(u.size()), degree);
  Vec v(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    double p = 1.0;
    for (int i = 0; i < u.size(); ++i) p *= std::pow(u[i], idx.exponent(r)[i]);
    v[static_cast<int>(r)] = p;
  }
  return v;
}

Vec uniform_vec(int n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

TensorPair positive_pair(int n, int m, std::uint64_t seed) {
  return TensorPair(formula_tensor("random", m, n, seed), formula_tensor("random-positive", m, n, seed + 1000));
}

Check fail(std::ostringstream& os) { return {false, os.str()}; }

}  // namespace

Check dirac_round_trip(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_n(1, 4), pick_r(1, 3);
  std::uniform_real_distribution<double> pick_w(0.2, 1.0);
  double worst = 0.0;
  for (int inst = 0; inst < instances; ++inst) {
    const int n = pick_n(rng), r = pick_r(rng);
    std::vector<Vec> atoms;
    while (static_cast<int>(atoms.size()) < r) {
      const Vec u = uniform_vec(n, rng, -1.0, 1.0);
      bool separated = true;
      for (const auto& a : atoms) separated = separated && (a - u).norm() >= 0.2;
      if (separated) atoms.push_back(u);
    }
    Tms y(n, 8);
    y.values.setZero();
    for (const auto& a : atoms) y.values += pick_w(rng) * point_moments(a, 8).values;
    const auto fw = flat_truncation(y, 4, 1);
    std::ostringstream os;
    if (!fw || fw->rank != r) {
      os << "instance " << inst << " (n=" << n << ", r=" << r << "): no flat truncation of rank r";
      return fail(os);
    }
    const auto ex = extract_atoms(y, fw->t, fw->rank);
    if (!ex || static_cast<int>(ex->atoms.size()) != r) {
      os << "instance " << inst << ": extraction failed";
      return fail(os);
    }
    for (const auto& a : atoms) {
      double d = 1e300;
      for (const auto& b : ex->atoms) d = std::min(d, (a - b).cwiseAbs().maxCoeff());
      worst = std::max(worst, d);
    }
  }
  std::ostringstream os;
  os << instances << " instances, worst recovery error " << worst;
  return {worst <= 1e-6, os.str()};
}

Check localizing_identity(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_n(1, 3), pick_d(0, 3), pick_k(2, 3);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int inst = 0; inst < instances; ++inst) {
    const int n = pick_n(rng), deg = pick_d(rng), k = pick_k(rng);
    const MonomialIndex idx(n, deg);
    Polynomial q(n);
    for (std::size_t r = 0; r < idx.size(); ++r) q.add_term(idx.exponent(r), normal(rng));
    const Vec u = uniform_vec(n, rng, -1.0, 1.0);
    const Vec v = monomial_vector(u, k - half_degree(q));
    const Mat expect = q.evaluate(u) * v * v.transpose();
    const Mat got = localizing_matrix(q, point_moments(u, 2 * k), k);
    worst = std::max(worst, (got - expect).cwiseAbs().maxCoeff());
  }
  std::ostringstream os;
  os << instances << " instances, worst deviation " << worst;
  return {worst <= 1e-10, os.str()};
}

Check hierarchy_monotone(int pairs, std::uint64_t seed) {
  for (int p = 0; p < pairs; ++p) {
    const TensorPair pair = positive_pair(2, 3, seed + p);
    const CopSystem sys = build_cop_system(pair);
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 3; k <= 5; ++k) {
      const auto out = solve(build_relaxation(sys.f0, sys.p, sys.q, k, Sense::Minimize));
      std::ostringstream os;
      if (out.status != SdpStatus::Optimal) {
        os << "pair " << p << " order " << k << ": " << to_string(out.status);
        return fail(os);
      }
      if (out.value < prev - 1e-6 * (1.0 + std::abs(prev))) {
        os << "pair " << p << ": value drops from " << prev << " to " << out.value << " at order " << k;
        return fail(os);
      }
      prev = out.value;
    }
  }
  std::ostringstream os;
  os << pairs << " pairs, orders 3..5 nondecreasing";
  return {true, os.str()};
}

Check count_bound(int pairs, std::uint64_t seed) {
  int worst_slack = 1 << 30;
  for (int p = 0; p < pairs; ++p) {
    const int n = 2 + p % 2, m = 3 + (p / 2) % 2;
    const TensorPair pair(formula_tensor("random", m, n, seed + p), formula_tensor("random", m, n, seed + 500 + p));
    const auto res = enumerate_all(pair);
    std::vector<double> lambdas;
    for (const auto& e : res.pairs) {
      if (lambdas.empty() || std::abs(e.lambda - lambdas.back()) > 1e-7) lambdas.push_back(e.lambda);
    }
    const int bound = n * static_cast<int>(std::pow(m, n - 1));
    worst_slack = std::min(worst_slack, bound - static_cast<int>(lambdas.size()));
    if (static_cast<int>(lambdas.size()) > bound) {
      std::ostringstream os;
      os << "pair " << p << " (n=" << n << ", m=" << m << "): " << lambdas.size() << " eigenvalues > " << bound;
      return fail(os);
    }
  }
  std::ostringstream os;
  os << pairs << " oracle runs, smallest slack " << worst_slack;
  return {true, os.str()};
}

Check residual_bounds(int pairs, std::uint64_t seed) {
  int checked = 0;
  for (int p = 0; p < pairs; ++p) {
    const TensorPair pair = positive_pair(2, 3 + p % 2, seed + p);
    auto sol = all_ceigs_copositive(pair);
    const auto ref = enumerate_all(pair).pairs;
    for (const auto& e : sol) {
      // B x^m = 1 identity.
      std::ostringstream os;
      if (std::abs(e.lambda - full_contract(pair.A, e.x)) > 1e-8 || std::abs(full_contract(pair.B, e.x) - 1.0) > 1e-8) {
        os << "pair " << p << ": lambda != A x^m at lambda = " << e.lambda;
        return fail(os);
      }
    }
    sol.insert(sol.end(), ref.begin(), ref.end());
    for (const auto& e : sol) {
      const Vec w = e.lambda * apply_contract(pair.B, e.x) - apply_contract(pair.A, e.x);
      const bool ok = e.x.minCoeff() >= -1e-6 && w.minCoeff() >= -1e-6 &&
                      std::abs(e.x.dot(w)) <= 1e-6 * (1.0 + std::abs(e.lambda));
      ++checked;
      if (!ok) {
        std::ostringstream os;
        os << "pair " << p << ": residual bound violated at lambda = " << e.lambda;
        return fail(os);
      }
    }
  }
  std::ostringstream os;
  os << checked << " pairs checked";
  return {true, os.str()};
}

Check scaling_equivariance(int pairs, std::uint64_t seed) {
  const double s = 2.5;
  for (int p = 0; p < pairs; ++p) {
    const TensorPair pair = positive_pair(2, 3, seed + p);
    const auto base = all_ceigs_copositive(pair);
    const auto sa = all_ceigs_copositive(TensorPair(pair.A.scaled(s), pair.B));
    const auto sb = all_ceigs_copositive(TensorPair(pair.A, pair.B.scaled(s)));
    std::ostringstream os;
    if (sa.size() != base.size() || sb.size() != base.size()) {
      os << "pair " << p << ": list sizes " << base.size() << "/" << sa.size() << "/" << sb.size();
      return fail(os);
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double l = base[i].lambda;
      if (std::abs(sa[i].lambda - s * l) > 1e-6 * (1 + std::abs(s * l)) ||
          std::abs(sb[i].lambda - l / s) > 1e-6 * (1 + std::abs(l / s))) {
        os << "pair " << p << ": lambda " << l << " maps to " << sa[i].lambda << " and " << sb[i].lambda;
        return fail(os);
      }
    }
  }
  std::ostringstream os;
  os << pairs << " pairs, s = " << s;
  return {true, os.str()};
}

}  // namespace teicp::props
