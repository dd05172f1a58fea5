#pragma once

#include "weylball/xfunc.hpp"

#include <memory>

namespace wb {

struct WeylBall {
  cplx w;
  CMatrix center;
  CMatrix gamma;  // left semi-radius factor
  CMatrix rho;    // right semi-radius factor
  CMatrix L;      // squared left semi-radius
  CMatrix R;      // squared right semi-radius
  CMatrix sqrt_L, sqrt_R, sqrt_L_pinv, sqrt_R_pinv;
  Eigen::Index rank = 0;
};

struct SemiRadii {
  CMatrix gamma, rho, L, R;
};

// Semi-radius factors at any non-real z; the ball itself needs Im z > 0.
SemiRadii semi_radii(const Prepared& p, cplx z, int m);

// Ball of values at w attained by the solutions of the problem with data
// s_0..s_m. For even m this is the "<=" problem; for odd m the formulas use
// the odd-index X-function and give the same ball as the natural extension.
WeylBall ball_parameters(const Prepared& p, cplx w, int m);
WeylBall ball_parameters(const MomentSequence& s, cplx w, const Tolerance& tol = {});

struct Membership {
  bool member = false;
  CMatrix K_hat;
  double norm = 0.0;
  double residual = 0.0;
};

Membership ball_membership(const WeylBall& ball, const CMatrix& v, const Tolerance& tol = {});

struct ConstantPair {
  CMatrix phi;
  CMatrix psi;
};

// Linear fractional transform of a constant pair through an even-index
// resolvent: -(a_n h^+ phi + a'_{n+1} psi)(b_n h^+ phi + b'_{n+1} psi)^{-1}.
CMatrix lft_value(const Prepared& p, const ConstantPair& pair, cplx z);
CMatrix lft_value(const MomentSequence& s, const ConstantPair& pair, cplx z,
                  const Tolerance& tol = {});

ConstantPair center_pair(const Prepared& p, cplx w);
CMatrix center_solution(const Prepared& p, cplx w, cplx z);
CMatrix center_solution(const MomentSequence& s, cplx w, cplx z, const Tolerance& tol = {});

// Rational solution whose value at w is center + (w - conj w)^{-1} gamma C rho.
class PointSolution {
 public:
  PointSolution(std::shared_ptr<const Prepared> p, ConstantPair pair)
      : p_(std::move(p)), pair_(std::move(pair)) {}
  CMatrix operator()(cplx z) const { return lft_value(*p_, pair_, z); }
  const ConstantPair& pair() const { return pair_; }

 private:
  std::shared_ptr<const Prepared> p_;
  ConstantPair pair_;
};

// Pair built from E = -X(w)*, B = (Im w)^{-1} Im E, P/Q onto ran/nul E.
ConstantPair point_pair(const CMatrix& e, double b, const CMatrix& c, const Tolerance& tol = {});

PointSolution point_solution(std::shared_ptr<const Prepared> p, cplx w, const CMatrix& c);
PointSolution point_solution(const MomentSequence& s, cplx w, const CMatrix& c,
                             const Tolerance& tol = {});

// Whether {M + A1 K B1} and {M + A2 K B2} over contractions K coincide.
bool ball_equal(const CMatrix& m, const CMatrix& a1, const CMatrix& b1, const CMatrix& a2,
                const CMatrix& b2, const Tolerance& tol = {});

// Contraction formed from a pair against E:
// (sqrt B)^+ (p - E q)(p - E* q)^+ sqrt B.
CMatrix pair_contraction(const CMatrix& e, double b, const CMatrix& pp, const CMatrix& qq,
                         const Tolerance& tol = {});

// Non-degenerate resolvent system.
struct KovalishinaSystem {
  int n = 0;
  cplx z;
  CMatrix H_inv, u, v, R_T;
  CMatrix U;                // 2q x 2q value at z
  CMatrix R_blk, S_blk, T_blk;
  CMatrix C, g, d;          // valid for Im z > 0
  CMatrix C_alt;            // center through the reflected point
};

CMatrix kovalishina_shift_resolvent(Eigen::Index q, int n, cplx z);
CMatrix kovalishina_U(const MomentSequence& s, cplx z, const Tolerance& tol = {});
KovalishinaSystem kovalishina_system(const MomentSequence& s, cplx z, const Tolerance& tol = {});

struct KovalishinaSums {
  CMatrix center;
  CMatrix center_alt;
  CMatrix L_inv;
  CMatrix R_inv;
};

KovalishinaSums kovalishina_sums(const Prepared& p, cplx z);
KovalishinaSums kovalishina_sums(const MomentSequence& s, cplx z, const Tolerance& tol = {});

// 2q x 2q signature matrix [[0, -iI], [iI, 0]].
CMatrix j_tilde(Eigen::Index q);

}  // namespace wb
