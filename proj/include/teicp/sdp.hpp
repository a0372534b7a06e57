#pragma once

#include "teicp/moment.hpp"

#include <optional>
#include <string>
#include <vector>

namespace teicp {

enum class Sense { Minimize, Maximize };

enum class SdpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(SdpStatus status) noexcept;

/// Moment relaxation of order k in standard form over the tms y of degree 2k:
///
///   optimize <objective, y>  s.t.  y_0 = 1,  equalities * y = rhs,
///                                  block_i(y) >= 0 (PSD) for every psd block.
///
/// The first psd block is always the moment matrix M_k(y).
struct SdpProblem {
  int nvars = 0;
  int order = 0;
  Sense sense = Sense::Minimize;
  Vec objective;
  std::vector<LocalizingOperator> psd_blocks;
  Mat equalities;  // includes the normalization row y_0 = 1
  Vec rhs;

  std::size_t moment_count() const { return static_cast<std::size_t>(objective.size()); }
};

/// k-th Lasserre relaxation of  opt f  s.t.  h = 0 (each h), g >= 0 (each g).
SdpProblem build_relaxation(const Polynomial& objective, const std::vector<Polynomial>& equalities,
                            const std::vector<Polynomial>& inequalities, int order, Sense sense);

struct SdpOptions {
  double feasibility_tol = 1e-8;
  double gap_tol = 1e-8;
  double certificate_margin = 1e-10;
  // A run that stalls before reaching the tolerances above still reports
  // Optimal when its best iterate has residuals and relative gap below this.
  double stall_tol = 1e-5;
  // Dual residual allowed at a stalled iterate. Moment relaxations often have
  // an unattained dual while the moment side converges.
  double dual_stall_tol = 1e-4;
  int max_iterations = 200;
  double step_fraction = 0.98;
  bool verbose = false;
};

/// Farkas ray proving the relaxation infeasible: Z_i PSD and multipliers w with
/// sum_i block_i^*(Z_i) + E^T w = 0 and rhs . w > 0. Any feasible y would give
/// 0 <= sum_i <block_i(y), Z_i> = -rhs . w.
struct InfeasibilityCertificate {
  std::vector<Mat> z;  // one PSD matrix per psd block, unit total Frobenius norm
  Vec multipliers;     // equality multipliers w with sum_i block_i^*(Z_i) + E^T w ~ 0
  double margin = 0.0;    // rhs . w for the normalized ray
  double residual = 0.0;  // || sum_i block_i^*(Z_i) + E^T w ||
};

struct SdpOutcome {
  SdpStatus status = SdpStatus::NumericalFailure;
  double value = 0.0;
  Tms y{1, 0};
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  std::optional<InfeasibilityCertificate> certificate;
  std::string message;
};

SdpOutcome solve(const SdpProblem& problem, const SdpOptions& options = {});

/// Checks a certificate against the problem data, independently of the solver.
/// Returns the verified margin, or a negative number when the ray fails.
double verify_certificate(const SdpProblem& problem, const InfeasibilityCertificate& cert,
                          double residual_tol = 1e-7);

/// Maximizes `objective` over h = 0, g >= 0 and the extra bound
/// `bounded <= bound` at relaxation order k.
SdpOutcome solve_value_probe(const Polynomial& objective, const std::vector<Polynomial>& equalities,
                             const std::vector<Polynomial>& inequalities, const Polynomial& bounded,
                             double bound, int order, const SdpOptions& options = {});

}  // namespace teicp
