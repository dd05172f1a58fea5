#include "weylball/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wb {

namespace {

void require_nonempty(const CMatrix& a, const char* who) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw InvalidArgument(std::string(who) + ": dimension-zero matrix");
  }
}

void require_square(const CMatrix& a, const char* who) {
  require_nonempty(a, who);
  if (a.rows() != a.cols()) {
    throw InvalidArgument(std::string(who) + ": matrix is not square");
  }
}

double cut_level(double sigma_max, const Tolerance& tol, double ref_scale) {
  return tol.rel_rank_cut * std::max(sigma_max, ref_scale);
}

}  // namespace

void Tolerance::validate() const {
  if (!(rel_rank_cut > 0) || !(psd_slack > 0) || !(eq_abs > 0)) {
    throw InvalidArgument("tolerance entries must be strictly positive");
  }
}

CMatrix identity(Eigen::Index q) { return CMatrix::Identity(q, q); }

CMatrix zeros(Eigen::Index r, Eigen::Index c) { return CMatrix::Zero(r, c); }

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 || a.cols() == 1) return a.norm();
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

CMatrix pinv(const CMatrix& a, const Tolerance& tol, double ref_scale) {
  require_nonempty(a, "pinv");
  if (!a.allFinite()) throw InvalidArgument("pinv: non-finite entries");
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cut = cut_level(sv.size() ? sv(0) : 0.0, tol, ref_scale);
  CMatrix out = CMatrix::Zero(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) {
      out.noalias() += (svd.matrixV().col(i) / sv(i)) * svd.matrixU().col(i).adjoint();
    }
  }
  return out;
}

Eigen::Index rank(const CMatrix& a, const Tolerance& tol, double ref_scale) {
  require_nonempty(a, "rank");
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double cut = cut_level(sv.size() ? sv(0) : 0.0, tol, ref_scale);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++r;
  }
  return r;
}

bool is_hermitian(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) return false;
  return op_norm(a - a.adjoint()) <= tol.eq_abs * (1.0 + op_norm(a));
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

CMatrix imag_part(const CMatrix& a) { return (a - a.adjoint()) / (2.0 * I_UNIT); }

CMatrix psd_sqrt(const CMatrix& a, const Tolerance& tol) {
  require_square(a, "psd_sqrt");
  if (!is_hermitian(a, tol)) {
    throw DefinitenessError("psd_sqrt: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  const auto& lam = es.eigenvalues();
  const double lmax = lam(lam.size() - 1);
  const double lmin = lam(0);
  if (lmin < -tol.psd_slack * (1.0 + std::max(lmax, 0.0))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "psd_sqrt: negative eigenvalue " << lmin;
    throw DefinitenessError(msg.str());
  }
  // Eigenvalues at or below the rank cut are treated as exact zeros so the
  // root keeps the range of A instead of inflating round-off to sqrt(eps).
  const double cut = tol.rel_rank_cut * std::max(std::abs(lmax), std::abs(lmin));
  Eigen::VectorXd root = lam.unaryExpr([cut](double x) { return x <= cut ? 0.0 : std::sqrt(x); });
  CMatrix out = es.eigenvectors() * root.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  return hermitian_part(out);
}

HermitianClass classify_hermitian(const CMatrix& a, const Tolerance& tol, double ref_scale) {
  require_square(a, "classify_hermitian");
  HermitianClass out;
  out.rank = rank(a, tol, ref_scale);
  out.hermitian = is_hermitian(a, tol);
  if (!out.hermitian) return out;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  const auto& lam = es.eigenvalues();
  const double lmax = lam(lam.size() - 1);
  out.psd = lam(0) >= -tol.psd_slack * (1.0 + std::max(lmax, 0.0));
  out.pd = out.psd && out.rank == a.rows() && lam(0) > 0.0;
  return out;
}

Projectors projectors(const CMatrix& a, const Tolerance& tol, double ref_scale) {
  require_square(a, "projectors");
  const CMatrix ap = pinv(a, tol, ref_scale);
  Projectors p;
  p.ran = hermitian_part(a * ap);
  p.nul = hermitian_part(identity(a.rows()) - ap * a);
  return p;
}

double contraction_defect(const CMatrix& k) { return op_norm(k); }

bool range_included(const CMatrix& a, const CMatrix& b, const Tolerance& tol, double ref_scale) {
  const CMatrix proj = b * pinv(b, tol, ref_scale);
  const CMatrix resid = a - proj * a;
  return op_norm(resid) <= tol.eq_abs * (1.0 + op_norm(a));
}

CMatrix spectral_clean(const CMatrix& a, const Tolerance& tol, double ref_scale) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  Eigen::VectorXd lam = es.eigenvalues();
  const double amax = lam.cwiseAbs().maxCoeff();
  const double cut = cut_level(amax, tol, ref_scale);
  bool any = false;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) <= cut) {
      lam(i) = 0.0;
    } else {
      any = true;
    }
  }
  if (!any) return CMatrix::Zero(a.rows(), a.cols());
  CMatrix out = es.eigenvectors() * lam.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  return hermitian_part(out);
}

CMatrix right_solve(const CMatrix& b, const CMatrix& a) {
  // X A = B  <=>  A* X* = B*
  Eigen::PartialPivLU<CMatrix> lu(a.adjoint());
  return lu.solve(b.adjoint()).adjoint();
}

CMatrix left_solve(const CMatrix& a, const CMatrix& b) {
  Eigen::PartialPivLU<CMatrix> lu(a);
  return lu.solve(b);
}

bool near_singular(const CMatrix& a, double cut) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return true;
  return sv(sv.size() - 1) <= cut * sv(0);
}

double rel_dev(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max({1.0, op_norm(a), op_norm(b)});
  return op_norm(a - b) / scale;
}

}  // namespace wb
