#include "teicp/sdp.hpp"

#include "teicp/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace teicp {

const char* to_string(SdpStatus status) noexcept {
  switch (status) {
    case SdpStatus::Optimal:
      return "optimal";
    case SdpStatus::Infeasible:
      return "infeasible";
    case SdpStatus::Unbounded:
      return "unbounded";
    case SdpStatus::NumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

SdpProblem build_relaxation(const Polynomial& objective, const std::vector<Polynomial>& equalities,
                            const std::vector<Polynomial>& inequalities, int order, Sense sense) {
  const int n = objective.nvars();
  int max_degree = objective.degree();
  for (const auto& h : equalities) max_degree = std::max(max_degree, h.degree());
  for (const auto& g : inequalities) max_degree = std::max(max_degree, g.degree());
  if (2 * order < max_degree) {
    throw InputError("relaxation order " + std::to_string(order) + " too small for degree " +
                     std::to_string(max_degree));
  }
  const MonomialIndex moments(n, 2 * order);
  SdpProblem prob;
  prob.nvars = n;
  prob.order = order;
  prob.sense = sense;
  prob.objective = coefficient_vector(objective, moments);
  prob.psd_blocks.emplace_back(Polynomial::constant(n, 1.0), order);
  for (const auto& g : inequalities) {
    if (g.nvars() != n) throw InputError("inequality variable count mismatch");
    if (g.is_zero()) continue;
    prob.psd_blocks.emplace_back(g, order);
  }
  std::vector<Mat> rows;
  Eigen::Index total = 1;
  for (const auto& h : equalities) {
    if (h.nvars() != n) throw InputError("equality variable count mismatch");
    if (h.is_zero()) continue;
    rows.push_back(equality_rows(h, order));
    total += rows.back().rows();
  }
  prob.equalities = Mat::Zero(total, static_cast<Eigen::Index>(moments.size()));
  prob.rhs = Vec::Zero(total);
  prob.equalities(0, 0) = 1.0;
  prob.rhs[0] = 1.0;
  Eigen::Index at = 1;
  for (const Mat& r : rows) {
    prob.equalities.middleRows(at, r.rows()) = r;
    at += r.rows();
  }
  return prob;
}

namespace {

using Blocks = std::vector<Mat>;

double dot(const Blocks& a, const Blocks& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].cwiseProduct(b[i]).sum();
  return acc;
}

double norm(const Blocks& a) { return std::sqrt(dot(a, a)); }

// Smallest eigenvalue of the symmetric matrix d scaled by diag(lam)^{-1/2} on both sides.
double max_step(const Vec& lam, const Mat& d) {
  const Vec isq = lam.cwiseSqrt().cwiseInverse();
  const Mat scaled = isq.asDiagonal() * d * isq.asDiagonal();
  const double emin = Eigen::SelfAdjointEigenSolver<Mat>(scaled, Eigen::EigenvaluesOnly).eigenvalues()[0];
  return emin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / emin;
}

// Solves lam o U = d for symmetric U, with a o b = (ab + ba) / 2 and lam diagonal.
Mat jordan_solve(const Vec& lam, const Mat& d) {
  Mat u(d.rows(), d.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) u(i, j) = 2.0 * d(i, j) / (lam[i] + lam[j]);
  }
  return u;
}

Mat jordan_product(const Mat& a, const Mat& b) { return 0.5 * (a * b + b * a); }

// Nesterov-Todd scaling state of one PSD block: s = R diag(lam) R^T and
// z = R^{-T} diag(lam) R^{-1}.
struct NtBlock {
  Mat r;
  Mat rinv;
  Vec lam;
};

// Homogeneous self-dual embedding of
//   min c^T u  s.t.  s = hhat - G u >= 0,
// where u parametrizes the affine solution set of the equality constraints,
// y = xp + N u, and G u = -F(N u) with F the scaled block map.
class HsdSolver {
 public:
  HsdSolver(const SdpProblem& prob, const SdpOptions& opt) : prob_(prob), opt_(opt) {}

  SdpOutcome run();

 private:
  Blocks apply_f(const Vec& y) const {
    Blocks out;
    out.reserve(prob_.psd_blocks.size());
    for (std::size_t b = 0; b < prob_.psd_blocks.size(); ++b) {
      out.push_back(block_scale_[b] * prob_.psd_blocks[b].realize(y));
    }
    return out;
  }

  Vec apply_f_adjoint(const Blocks& z) const {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(prob_.moment_count()));
    for (std::size_t b = 0; b < z.size(); ++b) v += block_scale_[b] * prob_.psd_blocks[b].adjoint(z[b]);
    return v;
  }

  bool preprocess(SdpOutcome& out);
  // Schur complement N^T F^* W F N with W = P^{-1} per block; false when the
  // factorization fails even after a small shift.
  bool factor_schur(const std::vector<NtBlock>& st);
  // Solves the reduced Newton system in scaled coordinates: bzs = R^{-1} bz R^{-T},
  // and dzs returns R^T dz R.
  void solve_kkt(const Vec& bu, const Blocks& bzs, const std::vector<NtBlock>& st, Vec& du, Blocks& dzs) const;
  SdpOutcome finish_optimal(const Vec& u, double tau, SdpOutcome out) const;
  SdpOutcome finish_infeasible(const Blocks& z, SdpOutcome out) const;

  const SdpProblem& prob_;
  const SdpOptions& opt_;
  std::vector<double> block_scale_;
  double obj_scale_ = 1.0;
  Vec c_;      // minimize-sense objective, scaled
  Mat null_;   // orthonormal basis of the equality null space
  Vec xp_;     // particular solution of the equalities
  Vec chat_;   // null_^T c_
  double c0_ = 0.0;
  Blocks hhat_;  // F(xp)
  Eigen::LLT<Mat> chol_;
  static constexpr int kRefinementSteps = 2;
  static constexpr int kStallWindow = 5;
  static constexpr int kGiveUpWindow = 25;
};

bool HsdSolver::preprocess(SdpOutcome& out) {
  for (const auto& blk : prob_.psd_blocks) {
    double mx = 0.0;
    for (double c : blk.coefs()) mx = std::max(mx, std::abs(c));
    block_scale_.push_back(mx > 0.0 ? 1.0 / mx : 1.0);
  }
  c_ = prob_.sense == Sense::Minimize ? prob_.objective : Vec(-prob_.objective);
  obj_scale_ = std::max(1.0, c_.cwiseAbs().maxCoeff());
  c_ /= obj_scale_;

  Mat e = prob_.equalities;
  Vec rhs = prob_.rhs;
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    const double nr = e.row(i).norm();
    if (nr > 0.0) {
      e.row(i) /= nr;
      rhs[i] /= nr;
    }
  }
  const Eigen::Index nmom = e.cols();
  Eigen::ColPivHouseholderQR<Mat> qr(e.transpose());
  qr.setThreshold(1e-11);
  const Eigen::Index rank = qr.rank();
  const Mat q = qr.householderQ();
  const Mat r11 = qr.matrixR().topLeftCorner(rank, rank).triangularView<Eigen::Upper>();
  Vec bsel(rank);
  for (Eigen::Index i = 0; i < rank; ++i) bsel[i] = rhs[qr.colsPermutation().indices()[i]];
  const Vec w = r11.transpose().triangularView<Eigen::Lower>().solve(bsel);
  xp_ = q.leftCols(rank) * w;
  null_ = q.rightCols(nmom - rank);
  const Vec eq_res = e * xp_ - rhs;
  if (eq_res.norm() > 1e-9 * (1.0 + rhs.norm())) {
    // Inconsistent equalities: w = residual direction satisfies E^T w ~ 0 with rhs . w > 0.
    InfeasibilityCertificate cert;
    for (const auto& blk : prob_.psd_blocks) cert.z.push_back(Mat::Zero(blk.side(), blk.side()));
    Vec wr = -eq_res;
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
      const double nr = prob_.equalities.row(i).norm();
      if (nr > 0.0) wr[i] /= nr;
    }
    const double scale = wr.norm();
    cert.multipliers = wr / scale;
    cert.residual = (prob_.equalities.transpose() * cert.multipliers).norm();
    cert.margin = prob_.rhs.dot(cert.multipliers);
    out.status = SdpStatus::Infeasible;
    out.message = "equality constraints are inconsistent";
    out.certificate = cert;
    return false;
  }
  chat_ = null_.transpose() * c_;
  c0_ = c_.dot(xp_);
  hhat_ = apply_f(xp_);
  return true;
}

bool HsdSolver::factor_schur(const std::vector<NtBlock>& st) {
  const auto nmom = static_cast<Eigen::Index>(prob_.moment_count());
  Mat full = Mat::Zero(nmom, nmom);
  for (std::size_t b = 0; b < prob_.psd_blocks.size(); ++b) {
    const auto& by = prob_.psd_blocks[b].by_moment();
    const Mat w = st[b].rinv.transpose() * st[b].rinv;  // inverse of the NT scaling point
    const double s2 = block_scale_[b] * block_scale_[b];
    for (Eigen::Index a = 0; a < nmom; ++a) {
      const auto& ca = by[a];
      if (ca.empty()) continue;
      const auto p = static_cast<Eigen::Index>(ca.size());
      Mat left(w.rows(), p), right(p, w.cols());
      for (Eigen::Index t = 0; t < p; ++t) {
        left.col(t) = ca[t].coef * w.col(ca[t].row);
        right.row(t) = w.row(ca[t].col);
      }
      const Mat y = left * right;  // W L_a W
      for (Eigen::Index bb = a; bb < nmom; ++bb) {
        double acc = 0.0;
        for (const auto& cb : by[bb]) acc += cb.coef * y(cb.col, cb.row);
        full(a, bb) += s2 * acc;
      }
    }
  }
  full.triangularView<Eigen::StrictlyLower>() = full.transpose().triangularView<Eigen::StrictlyLower>();
  const Mat h = null_.transpose() * (full * null_);
  chol_.compute(h);
  if (chol_.info() == Eigen::Success) return true;
  const double reg = 1e-13 * std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
  chol_.compute(h + reg * Mat::Identity(h.rows(), h.cols()));
  return chol_.info() == Eigen::Success;
}

void HsdSolver::solve_kkt(const Vec& bu, const Blocks& bzs, const std::vector<NtBlock>& st, Vec& du,
                          Blocks& dzs) const {
  const std::size_t nb = bzs.size();
  Blocks t(nb);
  for (std::size_t b = 0; b < nb; ++b) t[b] = st[b].rinv.transpose() * bzs[b] * st[b].rinv;
  const Vec rhs = bu - null_.transpose() * apply_f_adjoint(t);
  du = chol_.solve(rhs);
  for (int it = 0; it < kRefinementSteps; ++it) {
    const Blocks fu = apply_f(null_ * du);
    Blocks w(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const Mat sc = st[b].rinv * fu[b] * st[b].rinv.transpose();
      w[b] = st[b].rinv.transpose() * sc * st[b].rinv;
    }
    du += chol_.solve(rhs - null_.transpose() * apply_f_adjoint(w));
  }
  const Blocks fu = apply_f(null_ * du);
  dzs.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const Mat t2 = -(st[b].rinv * fu[b] * st[b].rinv.transpose()) - bzs[b];
    dzs[b] = 0.5 * (t2 + t2.transpose());
  }
}

SdpOutcome HsdSolver::finish_optimal(const Vec& u, double tau, SdpOutcome out) const {
  const Vec y = xp_ + null_ * (u / tau);
  out.status = SdpStatus::Optimal;
  out.y = Tms(prob_.nvars, 2 * prob_.order, y);
  out.value = prob_.objective.dot(y);
  return out;
}

SdpOutcome HsdSolver::finish_infeasible(const Blocks& z, SdpOutcome out) const {
  InfeasibilityCertificate cert;
  Blocks zz(z.size());
  for (std::size_t b = 0; b < z.size(); ++b) {
    Eigen::SelfAdjointEigenSolver<Mat> es(z[b]);
    zz[b] = block_scale_[b] * (es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).asDiagonal() *
                               es.eigenvectors().transpose());
  }
  const double zn = norm(zz);
  for (auto& m : zz) m /= zn;
  Vec v = Vec::Zero(static_cast<Eigen::Index>(prob_.moment_count()));
  for (std::size_t b = 0; b < zz.size(); ++b) v += prob_.psd_blocks[b].adjoint(zz[b]);
  // E^T w = -v in the least-squares sense.
  const Mat et = prob_.equalities.transpose();
  cert.multipliers = et.colPivHouseholderQr().solve(-v);
  cert.residual = (et * cert.multipliers + v).norm();
  cert.margin = prob_.rhs.dot(cert.multipliers);
  cert.z = std::move(zz);
  out.status = SdpStatus::Infeasible;
  out.certificate = std::move(cert);
  return out;
}

SdpOutcome HsdSolver::run() {
  SdpOutcome out;
  out.y = Tms(prob_.nvars, 2 * prob_.order);
  if (!preprocess(out)) return out;

  const std::size_t nb = prob_.psd_blocks.size();
  const Eigen::Index d = null_.cols();
  if (d == 0) {
    // The equalities pin y down; check the blocks directly.
    for (std::size_t b = 0; b < nb; ++b) {
      Eigen::SelfAdjointEigenSolver<Mat> es(hhat_[b], Eigen::EigenvaluesOnly);
      if (es.eigenvalues()[0] < -opt_.feasibility_tol) {
        Eigen::SelfAdjointEigenSolver<Mat> ev(hhat_[b]);
        Blocks z(nb);
        for (std::size_t j = 0; j < nb; ++j) z[j] = Mat::Zero(hhat_[j].rows(), hhat_[j].cols());
        z[b] = ev.eigenvectors().col(0) * ev.eigenvectors().col(0).transpose();
        out.message = "equalities determine y, which violates a block";
        return finish_infeasible(z, out);
      }
    }
    return finish_optimal(Vec::Zero(0), 1.0, out);
  }

  int nu = 0;
  std::vector<NtBlock> st(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const int s = prob_.psd_blocks[b].side();
    nu += s;
    st[b] = {Mat::Identity(s, s), Mat::Identity(s, s), Vec::Ones(s)};
  }
  Vec u = Vec::Zero(d);
  double tau = 1.0;
  double kappa = 1.0;
  const double hnorm = std::max(1.0, norm(hhat_));
  const double cnorm = std::max(1.0, chat_.norm());

  struct Best {
    double merit = std::numeric_limits<double>::infinity();
    int iter = -1;
    Vec y;
    double pres = 0.0, dres = 0.0, gap = 0.0;
  } best;
  struct BestRay {
    double pinf = std::numeric_limits<double>::infinity();
    int iter = -1;
    int improved = -1;  // last iterate that halved pinf
    Blocks z;
  } best_ray;
  std::string stop_reason;
  double best_progress = std::numeric_limits<double>::infinity();
  int progress_iter = 0;

  Blocks s_blk(nb), z_blk(nb);
  for (int iter = 0; iter <= opt_.max_iterations; ++iter) {
    out.iterations = iter;
    for (std::size_t b = 0; b < nb; ++b) {
      s_blk[b] = st[b].r * st[b].lam.asDiagonal() * st[b].r.transpose();
      z_blk[b] = st[b].rinv.transpose() * st[b].lam.asDiagonal() * st[b].rinv;
    }
    // Residuals of the embedding.
    const Vec fadj_z = apply_f_adjoint(z_blk);
    const Vec ru = -(null_.transpose() * fadj_z) + chat_ * tau;
    const Vec yu = null_ * u;
    const Blocks fyu = apply_f(yu);
    Blocks rz(nb);
    for (std::size_t b = 0; b < nb; ++b) rz[b] = s_blk[b] - fyu[b] - tau * hhat_[b];
    const double cu = chat_.dot(u);
    const double hz = dot(hhat_, z_blk);
    const double rtau = kappa + cu + hz;
    double sz = 0.0;
    for (const auto& blk : st) sz += blk.lam.squaredNorm();
    const double mu = (sz + tau * kappa) / (nu + 1);

    const double pres = norm(rz) / tau / hnorm;
    const double dres = ru.norm() / tau / cnorm;
    const double pobj = (cu / tau + c0_) * obj_scale_;
    const double dobj = (-hz / tau + c0_) * obj_scale_;
    const double gap = sz / (tau * tau) * obj_scale_;
    out.primal_residual = pres;
    out.dual_residual = dres;
    out.gap = gap;
    if (pres <= opt_.feasibility_tol && dres <= opt_.feasibility_tol &&
        gap <= opt_.gap_tol * (1.0 + std::abs(pobj))) {
      return finish_optimal(u, tau, out);
    }
    double pinf = std::numeric_limits<double>::infinity();
    double dinf = pinf;
    if (hz < 0.0) {
      pinf = (null_.transpose() * fadj_z).norm() / (-hz);
      if (tau < 1e-6 * kappa && pinf < best_ray.pinf) {
        if (pinf < 0.5 * best_ray.pinf) best_ray.improved = iter;
        best_ray.pinf = pinf;
        best_ray.iter = iter;
        best_ray.z = z_blk;
      }
      if (pinf <= opt_.feasibility_tol) {
        out = finish_infeasible(z_blk, out);
        if (out.certificate->margin >= opt_.certificate_margin) return out;
        out.status = SdpStatus::NumericalFailure;
        out.message = "infeasibility ray failed verification";
        out.certificate.reset();
      }
    }
    if (cu < 0.0) {
      Blocks ray(nb);
      for (std::size_t b = 0; b < nb; ++b) ray[b] = s_blk[b] - fyu[b];
      dinf = norm(ray) / (-cu);
      if (dinf <= opt_.feasibility_tol) {
        out.status = SdpStatus::Unbounded;
        out.message = "objective unbounded on the relaxation";
        return out;
      }
    }
    if (opt_.verbose) {
      std::fprintf(stderr,
                   "%3d pobj % .10e dobj % .10e pres %.2e dres %.2e gap %.2e tau %.2e kappa %.2e pinf %.2e dinf %.2e\n",
                   iter, pobj, dobj, pres, dres, gap, tau, kappa, pinf, dinf);
    }
    const double merit = std::max({pres, dres * opt_.stall_tol / opt_.dual_stall_tol, gap / (1.0 + std::abs(pobj))});
    if (std::isfinite(merit) && merit < best.merit) {
      best = {merit, iter, xp_ + null_ * (u / tau), pres, dres, gap};
    }
    // Without a strictly feasible point the Newton systems degrade as mu -> 0;
    // once a usable iterate exists, stop when progress ends.
    if (best.merit <= opt_.stall_tol && (iter - best.iter >= kStallWindow || merit > 1e3 * best.merit)) {
      stop_reason = "progress stalled";
      break;
    }
    if (best_ray.pinf <= opt_.stall_tol && iter - best_ray.improved >= kStallWindow) {
      stop_reason = "infeasibility ray stalled";
      break;
    }
    // Neither optimality nor either infeasibility measure is improving.
    const double progress = std::min({merit, pinf, dinf});
    if (progress < 0.5 * best_progress) {
      best_progress = progress;
      progress_iter = iter;
    }
    if (iter - progress_iter >= kGiveUpWindow) {
      stop_reason = "no progress toward optimality or infeasibility";
      break;
    }
    if (iter == opt_.max_iterations) break;

    if (!factor_schur(st)) {
      stop_reason = "Schur complement factorization failed";
      break;
    }

    // The tau column is solved relative to the current iterate y = xp + N u / tau:
    // F(y) = (s - r_z) / tau has moderate size in scaled coordinates, while
    // F(xp) does not. gs is R^{-1} F(y) R^{-T}.
    Blocks gs(nb), rzs(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const Mat t = st[b].rinv * rz[b] * st[b].rinv.transpose();
      rzs[b] = 0.5 * (t + t.transpose());
      gs[b] = (Mat(st[b].lam.asDiagonal()) - rzs[b]) / tau;
    }
    Vec du2;
    Blocks dz2;
    solve_kkt(-chat_, gs, st, du2, dz2);
    du2 += u / tau;
    // <hhat, dz2> = <F(y), dz2> - u^T N^T F^*(dz2) / tau, and N^T F^*(dz2) = c.
    const double den_base = chat_.dot(du2) + dot(gs, dz2) - cu / tau;

    // Returns the full direction for complementarity targets dsz (per block) and dtk.
    struct Direction {
      Vec du;
      Blocks dz, ds_scaled, dz_scaled;
      double dtau, dkappa;
    };
    auto direction = [&](double eta, const Blocks& dsz, double dtk) {
      Direction dir;
      Blocks uu(nb), bz(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        uu[b] = jordan_solve(st[b].lam, dsz[b]);
        bz[b] = -eta * rzs[b] - uu[b];
      }
      Vec du1;
      Blocks dz1;
      solve_kkt(-eta * ru, bz, st, du1, dz1);
      // As above, with N^T F^*(dz1) = eta r_u.
      const double hdz1 = dot(gs, dz1) - eta * u.dot(ru) / tau;
      const double num = -eta * rtau - dtk / tau - chat_.dot(du1) - hdz1;
      const double den = -kappa / tau + den_base;
      dir.dtau = num / den;
      dir.du = du1 + dir.dtau * du2;
      dir.dz.resize(nb);
      dir.ds_scaled.resize(nb);
      dir.dz_scaled.resize(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        dir.dz_scaled[b] = dz1[b] + dir.dtau * dz2[b];
        dir.dz[b] = st[b].rinv.transpose() * dir.dz_scaled[b] * st[b].rinv;
        dir.ds_scaled[b] = uu[b] - dir.dz_scaled[b];
      }
      dir.dkappa = (dtk - kappa * dir.dtau) / tau;
      return dir;
    };
    auto step_to_boundary = [&](const Direction& dir) {
      double a = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < nb; ++b) {
        a = std::min(a, max_step(st[b].lam, dir.ds_scaled[b]));
        a = std::min(a, max_step(st[b].lam, dir.dz_scaled[b]));
      }
      if (dir.dtau < 0.0) a = std::min(a, -tau / dir.dtau);
      if (dir.dkappa < 0.0) a = std::min(a, -kappa / dir.dkappa);
      return a;
    };

    // Predictor.
    Blocks dsz(nb);
    for (std::size_t b = 0; b < nb; ++b) dsz[b] = Mat(Vec(-st[b].lam.cwiseAbs2()).asDiagonal());
    const Direction aff = direction(1.0, dsz, -tau * kappa);
    const double a_aff = std::min(1.0, step_to_boundary(aff));
    // Driving the gap far below its tolerance only worsens the conditioning of
    // the Schur complement, so keep mu near the level the gap test needs.
    const double gap_floor = 0.1 * opt_.gap_tol * (1.0 + std::abs(pobj)) / obj_scale_;
    const double sigma = std::max(std::pow(1.0 - a_aff, 3), std::min(1.0, gap_floor / (sz / (tau * tau))));

    // Corrector.
    for (std::size_t b = 0; b < nb; ++b) {
      dsz[b] = Mat(Vec(-st[b].lam.cwiseAbs2()).asDiagonal());
      dsz[b].diagonal().array() += sigma * mu;
      dsz[b] -= jordan_product(aff.ds_scaled[b], aff.dz_scaled[b]);
    }
    const Direction dir = direction(1.0, dsz, -tau * kappa + sigma * mu - aff.dtau * aff.dkappa);
    const double alpha = std::min(1.0, opt_.step_fraction * step_to_boundary(dir));

    u += alpha * dir.du;
    tau += alpha * dir.dtau;
    kappa += alpha * dir.dkappa;
    for (std::size_t b = 0; b < nb; ++b) {
      const Mat s_new = Mat(st[b].lam.asDiagonal()) + alpha * dir.ds_scaled[b];
      const Mat z_new = Mat(st[b].lam.asDiagonal()) + alpha * dir.dz_scaled[b];
      Eigen::LLT<Mat> ls(s_new), lz(z_new);
      if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) {
        stop_reason = "lost positive definiteness while updating the scaling";
        break;
      }
      const Mat lsm = ls.matrixL();
      const Mat lzm = lz.matrixL();
      Eigen::JacobiSVD<Mat> svd(lzm.transpose() * lsm, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Vec sv = svd.singularValues();
      const Vec isq = sv.cwiseSqrt().cwiseInverse();
      const Mat r_new = st[b].r * lsm * svd.matrixV() * isq.asDiagonal();
      const Mat rinv_new = isq.asDiagonal() * svd.matrixU().transpose() * lzm.transpose() * st[b].rinv;
      st[b].r = r_new;
      st[b].rinv = rinv_new;
      st[b].lam = sv;
    }
    if (!stop_reason.empty()) break;
  }
  if (stop_reason.empty()) stop_reason = "iteration cap reached";
  out.status = SdpStatus::NumericalFailure;
  out.message = stop_reason;
  if (best.iter >= 0) {
    out.y = Tms(prob_.nvars, 2 * prob_.order, best.y);
    out.value = prob_.objective.dot(best.y);
    out.primal_residual = best.pres;
    out.dual_residual = best.dres;
    out.gap = best.gap;
    if (best.merit <= opt_.stall_tol) {
      out.status = SdpStatus::Optimal;
      out.message = stop_reason + "; best iterate " + std::to_string(best.iter) + " meets the stall tolerance";
      return out;
    }
  }
  if (best_ray.pinf <= opt_.stall_tol) {
    // Same accuracy floor as above, on the infeasibility side. The ray must
    // still verify with a margin well above its residual.
    SdpOutcome inf = finish_infeasible(best_ray.z, out);
    const auto& cert = *inf.certificate;
    if (opt_.verbose) {
      std::fprintf(stderr, "ray from iterate %d: margin %.3e residual %.3e\n", best_ray.iter, cert.margin,
                   cert.residual);
    }
    if (cert.margin >= opt_.certificate_margin && cert.residual <= 1e-3 * cert.margin) {
      inf.message = stop_reason + "; ray from iterate " + std::to_string(best_ray.iter) + " meets the stall tolerance";
      return inf;
    }
  }
  return out;
}

}  // namespace

SdpOutcome solve(const SdpProblem& problem, const SdpOptions& options) {
  HsdSolver solver(problem, options);
  return solver.run();
}

double verify_certificate(const SdpProblem& problem, const InfeasibilityCertificate& cert, double residual_tol) {
  if (cert.z.size() != problem.psd_blocks.size()) return -1.0;
  if (cert.multipliers.size() != problem.equalities.rows()) return -1.0;
  Vec v = problem.equalities.transpose() * cert.multipliers;
  for (std::size_t b = 0; b < cert.z.size(); ++b) {
    const Mat& z = cert.z[b];
    if (z.rows() != problem.psd_blocks[b].side()) return -1.0;
    if (z.size() > 0) {
      const double emin = Eigen::SelfAdjointEigenSolver<Mat>(z, Eigen::EigenvaluesOnly).eigenvalues()[0];
      if (emin < -1e-12) return -1.0;
    }
    v += problem.psd_blocks[b].adjoint(z);
  }
  if (v.norm() > residual_tol) return -1.0;
  const double margin = problem.rhs.dot(cert.multipliers);
  return margin > 0.0 ? margin : -1.0;
}

SdpOutcome solve_value_probe(const Polynomial& objective, const std::vector<Polynomial>& equalities,
                             const std::vector<Polynomial>& inequalities, const Polynomial& bounded, double bound,
                             int order, const SdpOptions& options) {
  std::vector<Polynomial> ineq = inequalities;
  ineq.push_back(Polynomial::constant(bounded.nvars(), bound) - bounded);
  return solve(build_relaxation(objective, equalities, ineq, order, Sense::Maximize), options);
}

}  // namespace teicp
