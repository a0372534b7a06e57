// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "property_checks.hpp"
#include "teicp/oracle.hpp"
#include "teicp/problem_io.hpp"
#include "teicp/sdp.hpp"
#include "teicp/solver_cop.hpp"
#include "teicp/solver_gen.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace teicp;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_list(const std::vector<CEigenpair>& v) {
  std::ostringstream os;
  os.precision(5);
  os << std::fixed << "{";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].lambda;
  os << "}";
  return os.str();
}

// Sorted eigenvalues equal the expected list within tol.
bool lambdas_match(const std::vector<CEigenpair>& got, const std::vector<double>& expect, double tol) {
  if (got.size() != expect.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (std::abs(got[i].lambda - expect[i]) > tol) return false;
  }
  return true;
}

TensorPair formula_pair(const char* a, const char* b, int n, int m) {
  return TensorPair(formula_tensor(a, m, n), formula_tensor(b, m, n));
}

std::vector<CEigenpair> cop_assert(const TensorPair& pair) {
  CopOptions opts;
  opts.assert_copositive = true;
  return all_ceigs_copositive(pair, opts);
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  const auto got = all_ceigs_copositive(load_problem(TEICP_DATA_DIR "/dense_pair_n2.json"));
  const double secs = since(t0);
  const std::vector<Vec> printed = {(Vec(2) << 0.8328, 0.0585).finished(), (Vec(2) << 0.2577, 0.6538).finished(),
                                    (Vec(2) << 0.8847, 0.0).finished()};
  bool ok = lambdas_match(got, {0.4678, 0.4848, 0.4991}, 1e-3) && secs < 60.0;
  double vec_err = 0.0;
  if (ok) {
    for (std::size_t i = 0; i < 3; ++i) {
      vec_err = std::max(vec_err, (got[i].x.normalized() - printed[i].normalized()).cwiseAbs().maxCoeff());
    }
    ok = vec_err <= 1e-2;
  }
  std::ostringstream os;
  os << fmt_list(got) << ", eigenvector error " << vec_err << ", " << secs << " s";
  return {ok, os.str()};
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  const auto got = all_ceigs_copositive(load_problem(TEICP_DATA_DIR "/dense_pair_n3.json"));
  const double secs = since(t0);
  std::ostringstream os;
  os << fmt_list(got) << ", " << secs << " s";
  return {lambdas_match(got, {1.5520, 2.3562, 2.7583}, 1e-3) && secs < 600.0, os.str()};
}

Outcome criterion3() {
  const auto n3 = cop_assert(formula_pair("alternating-harmonic", "identity", 3, 3));
  const auto n4 = cop_assert(formula_pair("alternating-harmonic", "identity", 4, 3));
  const bool ok = lambdas_match(n3, {-8.7329, -8.1633, -3.1458, -3.0000, -1.2863, -1.0000, 2.1458}, 1e-3) &&
                  n4.size() == 7 && std::abs(n4.back().lambda - 6.6817) <= 1e-3;
  return {ok, "n=3 " + fmt_list(n3) + "; n=4 " + fmt_list(n4)};
}

Outcome criterion4() {
  const auto n3 = cop_assert(formula_pair("exp-alternating", "identity", 3, 5));
  const auto n4 = cop_assert(formula_pair("exp-alternating", "identity", 4, 5));
  return {lambdas_match(n3, {2.4335}, 1e-3) && lambdas_match(n4, {5.4419}, 1e-3),
          "n=3 " + fmt_list(n3) + "; n=4 " + fmt_list(n4)};
}

// Both case relaxations at k = 4 report Infeasible, and the sweep is empty.
bool tan_sum_empty(int n, std::string& note) {
  const TensorPair pair = formula_pair("inverse-linear", "tan-sum", n, 4);
  const GenOptions opts;
  const GenSystem sys = build_gen_system(pair, random_direction(n, opts.seed));
  const Polynomial f = random_sos_objective(n, 4, 7);
  bool ok = true;
  for (const auto* g : {&sys.g, &sys.g_tilde}) {
    const auto out = solve(build_relaxation(f, sys.h, *g, 4, Sense::Minimize));
    ok = ok && out.status == SdpStatus::Infeasible;
  }
  const auto all = all_ceigs_general(pair, opts);
  note += "n=" + std::to_string(n) + " " + fmt_list(all) + (ok ? " (k=4 infeasible) " : " (k=4 not infeasible) ");
  return ok && all.empty();
}

Outcome criterion5() {
  const auto arc = all_ceigs_general(formula_pair("linear-sqrt", "arctan-product", 3, 4));
  std::string note = "arctan n=3 " + fmt_list(arc) + "; tan-sum ";
  const bool ok = lambdas_match(arc, {0.8706, 0.9780, 1.3163}, 1e-3);
  const bool e3 = tan_sum_empty(3, note);
  const bool e4 = tan_sum_empty(4, note);
  return {ok && e3 && e4, note};
}

Outcome criterion6() {
  const auto n3 = all_ceigs_general(formula_pair("tan-shift", "alternating-harmonic", 3, 3));
  const auto n4 = all_ceigs_general(formula_pair("tan-shift", "alternating-harmonic", 4, 3));
  return {lambdas_match(n3, {-4.0192, -0.3669}, 1e-3) && lambdas_match(n4, {-0.8408, -0.2332}, 1e-3),
          "n=3 " + fmt_list(n3) + "; n=4 " + fmt_list(n4)};
}

Outcome criterion7() {
  int agree = 0, missing = 0, extra = 0;
  std::string first_bad;
  for (int i = 0; i < 30; ++i) {
    const int n = i < 10 ? 2 : (i < 20 ? 3 : 2);
    const int m = i < 20 ? 3 : 4;
    const std::uint64_t seed = 100 + static_cast<std::uint64_t>(i);
    const TensorPair pair(formula_tensor("random", m, n, seed), formula_tensor("random-positive", m, n, seed + 1000));
    const auto rep = compare(all_ceigs_copositive(pair), enumerate_all(pair).pairs, 1e-4);
    missing += static_cast<int>(rep.missing.size());
    extra += static_cast<int>(rep.extra.size());
    if (rep.ok()) ++agree;
    else if (first_bad.empty()) first_bad = ", first mismatch at seed " + std::to_string(seed);
  }
  std::ostringstream os;
  os << agree << "/30 pairs agree, " << missing << " missing, " << extra << " extra" << first_bad;
  return {agree == 30, os.str()};
}

Outcome criterion8() {
  const std::vector<std::pair<const char*, props::Check>> checks = {
      {"dirac", props::dirac_round_trip(100, 1)},       {"localizing", props::localizing_identity(100, 2)},
      {"monotone", props::hierarchy_monotone(4, 3)},    {"count", props::count_bound(50, 4)},
      {"residuals", props::residual_bounds(4, 5)},      {"scaling", props::scaling_equivariance(3, 6)}};
  bool ok = true;
  std::string note;
  for (const auto& [name, c] : checks) {
    ok = ok && c.ok;
    note += std::string(note.empty() ? "" : "; ") + name + (c.ok ? " ok" : " FAILED: " + c.detail);
  }
  return {ok, note};
}

Outcome criterion9() {
  const TensorPair pair = load_problem(TEICP_DATA_DIR "/dense_pair_n2.json");
  const auto all = all_ceigs_copositive(pair);
  if (all.size() != 3) return {false, "expected 3 eigenvalues, got " + fmt_list(all)};
  const double last = all.back().lambda;
  const double delta = delta_probe(pair, last);
  const bool none = !next_ceig(pair, last, delta).has_value();
  std::ostringstream os;
  os << "after lambda3 = " << last << ", delta = " << delta << ": "
     << (none ? "next relaxation infeasible" : "next relaxation returned a value");
  return {none, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << o.detail << "  [" << since(t0)
              << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
