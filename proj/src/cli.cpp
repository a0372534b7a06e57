#include "teicp/cli.hpp"

#include "teicp/errors.hpp"
#include "teicp/oracle.hpp"
#include "teicp/solver_cop.hpp"
#include "teicp/solver_gen.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace teicp {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<double> to_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json pair_json(const CEigenpair& p, const char* method) {
  return json{{"lambda", p.lambda},
              {"x", to_std(p.x)},
              {"w", to_std(p.w)},
              {"residuals",
               {{"min_x", p.residuals.min_x},
                {"min_w", p.residuals.min_w},
                {"complementarity", p.residuals.complementarity},
                {"normalization", p.residuals.normalization}}},
              {"certificate", {{"method", method}, {"k", p.k}, {"t", p.t}, {"rank", p.rank}}}};
}

std::string status_of(SolverError::Kind kind) {
  switch (kind) {
    case SolverError::Kind::OrderCapReached: return "order-cap";
    case SolverError::Kind::NumericalFailure: return "numerical-failure";
    case SolverError::Kind::DeltaUnderflow: return "delta-underflow";
    case SolverError::Kind::LevelCapExceeded: return "level-cap";
    case SolverError::Kind::NotCopositive: return "not-copositive";
  }
  return "failed";
}

json list_json(const std::vector<std::pair<double, Vec>>& v) {
  json out = json::array();
  for (const auto& [l, x] : v) out.push_back({{"lambda", l}, {"x", to_std(x)}});
  return out;
}

}  // namespace

RunResult run_problem(const TensorPair& pair, const RunOptions& opts) {
  if (opts.method != "auto" && opts.method != "copositive" && opts.method != "general") {
    throw InputError("method must be auto, copositive or general");
  }
  const bool cop = opts.method == "copositive" ||
                   (opts.method == "auto" && (opts.assert_copositive || entrywise_positive(pair.B)));
  RunResult res;
  json& rep = res.report;
  rep["schema_version"] = 1;
  rep["method"] = cop ? "copositive" : "general";
  rep["normalization"] = cop ? "Bx^m=1" : "unit-sphere";
  json options = {{"method", opts.method}, {"seed", opts.seed}, {"delta0", opts.delta0}, {"k_max", opts.k_max},
                  {"assert_copositive", opts.assert_copositive}, {"oracle", opts.oracle}};
  if (opts.tol) options["tol"] = *opts.tol;
  rep["options"] = options;

  std::vector<CEigenpair> pairs;
  json timing;
  const auto t0 = Clock::now();
  try {
    if (cop) {
      CopOptions co;
      co.delta0 = opts.delta0;
      co.k_max = opts.k_max;
      if (opts.tol) co.cluster_tol = *opts.tol;
      co.assert_copositive = opts.assert_copositive;
      co.verbose = opts.verbose;
      pairs = all_ceigs_copositive(pair, co);
    } else {
      GenOptions go;
      go.seed = opts.seed;
      go.delta0 = opts.delta0;
      go.k_max = opts.k_max;
      if (opts.tol) go.level_tol = *opts.tol;
      go.verbose = opts.verbose;
      pairs = all_ceigs_general(pair, go);
    }
    rep["status"] = pairs.empty() ? "infeasible-empty" : "complete";
  } catch (const SolverError& e) {
    rep["status"] = status_of(e.kind());
    rep["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    res.exit_code = 3;
  }
  timing["solve_seconds"] = seconds_since(t0);

  json list = json::array();
  for (const auto& p : pairs) list.push_back(pair_json(p, "flat-truncation"));
  rep["eigenpairs"] = list;

  if (opts.oracle) {
    const OracleConfig cfg;
    if (pair.dim() > cfg.max_dim || pair.order() > cfg.max_order) {
      rep["oracle"] = {{"skipped", "instance above the oracle size guard"}};
    } else {
      const auto t1 = Clock::now();
      const auto ref = enumerate_all(pair, cfg);
      const auto cmp = compare(pairs, ref.pairs, 1e-4);
      timing["oracle_seconds"] = seconds_since(t1);
      rep["oracle"] = {{"count", ref.pairs.size()},
                       {"matched", cmp.matched},
                       {"missing", list_json(cmp.missing)},
                       {"extra", list_json(cmp.extra)},
                       {"agree", cmp.ok()},
                       {"diagnostics", ref.diagnostics}};
    }
  }
  if (opts.timing) rep["timing"] = timing;
  return res;
}

std::string plain_report(const json& report) {
  std::ostringstream out;
  out << "status " << report.at("status").get<std::string>() << " (" << report.at("method").get<std::string>()
      << ")\n";
  char buf[64];
  for (const auto& p : report.at("eigenpairs")) {
    std::snprintf(buf, sizeof buf, "%.6f", p.at("lambda").get<double>());
    out << buf;
    for (const auto& v : p.at("x")) {
      std::snprintf(buf, sizeof buf, " %.6f", v.get<double>());
      out << buf;
    }
    out << "\n";
  }
  if (report.contains("error")) out << "error: " << report["error"]["message"].get<std::string>() << "\n";
  if (report.contains("oracle") && report["oracle"].contains("agree")) {
    out << "oracle " << (report["oracle"]["agree"].get<bool>() ? "agrees" : "DISAGREES") << " ("
        << report["oracle"]["matched"].get<int>() << " matched)\n";
  }
  return out.str();
}

}  // namespace teicp
