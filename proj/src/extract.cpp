#include "teicp/extract.hpp"

#include "teicp/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>

namespace teicp {

namespace {

constexpr double kActiveThreshold = 1e-5;
constexpr double kAcceptTol = 1e-6;
constexpr int kNewtonSteps = 5;

double residual_norm(const Vec& f) { return f.size() == 0 ? 0.0 : f.cwiseAbs().maxCoeff(); }

// Moment matrix misfit of the atomic measure against y, relative to M_t(y).
double reconstruction_misfit(const Tms& y, int t, const std::vector<Vec>& atoms, const Vec& weights) {
  const Mat m = moment_matrix(y, t);
  Mat rec = Mat::Zero(m.rows(), m.cols());
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const Vec v = point_moments(atoms[j], t).values;
    rec += weights[static_cast<Eigen::Index>(j)] * v * v.transpose();
  }
  return (rec - m).norm() / std::max(1.0, m.norm());
}

}  // namespace

int numerical_rank(const Mat& m, double tol) {
  if (m.size() == 0) return 0;
  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(m, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs();
  const double cut = tol * std::max(ev.maxCoeff(), 1.0);
  return static_cast<int>((ev.array() > cut).count());
}

std::optional<FlatWitness> flat_truncation(const Tms& y, int k, int d0, double rank_tol) {
  if (y.degree < 2 * k) throw InputError("flat_truncation: tms degree below 2k");
  if (d0 < 1) throw InputError("flat_truncation: d0 must be positive");
  for (int t = d0; t <= k; ++t) {
    const int hi = numerical_rank(moment_matrix(y, t), rank_tol);
    const int lo = numerical_rank(moment_matrix(y, t - d0), rank_tol);
    if (hi == lo && hi > 0) {
      FlatWitness w;
      w.t = t;
      w.rank = hi;
      return w;
    }
  }
  return std::nullopt;
}

Vec atom_weights(const Tms& y, int t, const std::vector<Vec>& atoms) {
  const auto len = static_cast<Eigen::Index>(monomial_count(y.nvars, 2 * t));
  Mat v(len, static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t j = 0; j < atoms.size(); ++j) v.col(static_cast<Eigen::Index>(j)) = point_moments(atoms[j], 2 * t).values;
  return v.colPivHouseholderQr().solve(y.values.head(len));
}

std::optional<FlatWitness> extract_atoms(const Tms& y, int t, int r, const ExtractOptions& opts) {
  if (r < 1 || t < 1) return std::nullopt;
  const int n = y.nvars;
  const MonomialIndex rows(n, t);
  const auto below = static_cast<Eigen::Index>(monomial_count(n, t - 1));
  if (r > below) return std::nullopt;

  // M_t = V V^T from the top r eigenpairs.
  Eigen::SelfAdjointEigenSolver<Mat> es(moment_matrix(y, t));
  const Vec top = es.eigenvalues().tail(r).cwiseMax(0.0).cwiseSqrt();
  const Mat v = es.eigenvectors().rightCols(r) * top.asDiagonal();

  // Basis monomials: r pivot rows among degree <= t - 1, so that x_i times a
  // basis monomial still indexes a row of M_t.
  Eigen::ColPivHouseholderQR<Mat> piv(v.topRows(below).transpose());
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) basis[static_cast<std::size_t>(j)] = piv.colsPermutation().indices()[j];
  Mat vb(r, r);
  for (int j = 0; j < r; ++j) vb.row(j) = v.row(basis[static_cast<std::size_t>(j)]);
  const Mat u = v * vb.inverse();  // column echelon form, u(basis, :) = I

  std::vector<Mat> mult(static_cast<std::size_t>(n), Mat(r, r));
  Exponent e(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r; ++j) {
      e = rows.exponent(static_cast<std::size_t>(basis[static_cast<std::size_t>(j)]));
      e[i] += 1;
      mult[static_cast<std::size_t>(i)].row(j) = u.row(static_cast<Eigen::Index>(rows.rank(e)));
    }
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    Vec c(n);
    for (int i = 0; i < n; ++i) c[i] = unif(rng);
    c /= c.sum();
    Mat comb = Mat::Zero(r, r);
    for (int i = 0; i < n; ++i) comb += c[i] * mult[static_cast<std::size_t>(i)];
    Eigen::RealSchur<Mat> schur(comb);
    if (schur.info() != Eigen::Success) continue;
    const Mat& q = schur.matrixU();
    const Mat& tri = schur.matrixT();
    bool real_spectrum = true;
    for (int j = 0; j + 1 < r; ++j) {
      if (std::abs(tri(j + 1, j)) > 1e-8 * std::max(1.0, tri.norm())) real_spectrum = false;
    }
    if (!real_spectrum) continue;
    std::vector<Vec> atoms(static_cast<std::size_t>(r), Vec(n));
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < n; ++i) {
        atoms[static_cast<std::size_t>(j)][i] = q.col(j).dot(mult[static_cast<std::size_t>(i)] * q.col(j));
      }
    }
    const Vec w = atom_weights(y, t, atoms);
    if (w.minCoeff() <= 0.0) continue;
    if (reconstruction_misfit(y, t, atoms, w) > opts.reconstruction_tol) continue;
    FlatWitness out;
    out.t = t;
    out.rank = r;
    out.atoms = std::move(atoms);
    out.weights = w;
    return out;
  }
  return std::nullopt;
}

PairResiduals pair_residuals(const TensorPair& pair, double lambda, const Vec& x, Normalization norm) {
  const Vec gb = apply_contract(pair.B, x);
  const Vec w = lambda * gb - apply_contract(pair.A, x);
  PairResiduals r;
  r.min_x = x.minCoeff();
  r.min_w = w.minCoeff();
  r.complementarity = x.cwiseProduct(w).cwiseAbs().maxCoeff();
  r.normalization = norm == Normalization::Sphere ? std::abs(x.squaredNorm() - 1.0) : std::abs(x.dot(gb) - 1.0);
  return r;
}

std::optional<CEigenpair> certify_pair(const TensorPair& pair, const Vec& x_in, Normalization norm, const Vec& xi) {
  const int n = pair.dim();
  const int m = pair.order();
  if (x_in.size() != n) throw InputError("certify_pair: vector length != tensor dimension");
  if (x_in.norm() == 0.0) return std::nullopt;

  Vec x = x_in;
  double lambda = 0.0;
  if (norm == Normalization::BNormalized) {
    const double bx = full_contract(pair.B, x);
    if (!(bx > 0.0)) return std::nullopt;
    x /= std::pow(bx, 1.0 / m);
    lambda = full_contract(pair.A, x);
  } else {
    x.normalize();
    const Vec a = hadamard_contract(pair.A, x);
    const Vec b = hadamard_contract(pair.B, x);
    const double xb = xi.size() == n ? xi.dot(b) : 0.0;
    if (std::abs(xb) > 1e-8) {
      lambda = xi.dot(a) / xb;
    } else {
      if (b.squaredNorm() == 0.0) return std::nullopt;
      lambda = a.dot(b) / b.squaredNorm();
    }
  }

  std::vector<int> active;
  for (int i = 0; i < n; ++i) {
    if (x[i] > kActiveThreshold) active.push_back(i);
  }
  if (active.empty()) return std::nullopt;
  for (int i = 0; i < n; ++i) {
    if (x[i] <= kActiveThreshold) x[i] = 0.0;
  }
  const auto na = static_cast<Eigen::Index>(active.size());

  // Square system in (x_J, lambda): w_J = 0 plus the normalization.
  auto system = [&](const Vec& xv, double lam, Vec& f, Mat* jac) {
    const Vec ga = apply_contract(pair.A, xv);
    const Vec gb = apply_contract(pair.B, xv);
    f.resize(na + 1);
    for (Eigen::Index r = 0; r < na; ++r) f[r] = lam * gb[active[r]] - ga[active[r]];
    f[na] = norm == Normalization::Sphere ? xv.squaredNorm() - 1.0 : xv.dot(gb) - 1.0;
    if (jac == nullptr) return;
    const Mat ja = contract_jacobian(pair.A, xv);
    const Mat jb = contract_jacobian(pair.B, xv);
    const Vec gnorm = norm == Normalization::Sphere ? Vec(2.0 * xv) : Vec(gb + jb.transpose() * xv);
    jac->resize(na + 1, na + 1);
    for (Eigen::Index r = 0; r < na; ++r) {
      for (Eigen::Index c = 0; c < na; ++c) (*jac)(r, c) = lam * jb(active[r], active[c]) - ja(active[r], active[c]);
      (*jac)(r, na) = gb[active[r]];
      (*jac)(na, r) = gnorm[active[r]];
    }
    (*jac)(na, na) = 0.0;
  };

  Vec f;
  Mat jac;
  system(x, lambda, f, nullptr);
  Vec best_x = x;
  double best_lambda = lambda;
  double best_res = residual_norm(f);
  for (int step = 0; step < kNewtonSteps; ++step) {
    system(x, lambda, f, &jac);
    const Vec d = jac.colPivHouseholderQr().solve(-f);
    if (!d.allFinite()) break;
    for (Eigen::Index r = 0; r < na; ++r) x[active[r]] += d[r];
    lambda += d[na];
    system(x, lambda, f, nullptr);
    const double res = residual_norm(f);
    if (res < best_res) {
      best_res = res;
      best_x = x;
      best_lambda = lambda;
    }
  }

  CEigenpair out;
  out.lambda = best_lambda;
  out.x = best_x;
  out.w = best_lambda * apply_contract(pair.B, best_x) - apply_contract(pair.A, best_x);
  out.residuals = pair_residuals(pair, best_lambda, best_x, norm);
  const PairResiduals& r = out.residuals;
  const bool ok = r.min_x >= -kAcceptTol && r.min_w >= -kAcceptTol && r.complementarity <= kAcceptTol &&
                  std::abs(best_x.dot(out.w)) <= kAcceptTol * (1.0 + std::abs(best_lambda)) &&
                  r.normalization <= kAcceptTol;
  if (!ok) return std::nullopt;
  return out;
}

}  // namespace teicp
