#include "weylball/ball.hpp"

#include <cmath>
#include <string>

namespace wb {

namespace {

void require_upper(cplx w, const char* who) {
  if (!(w.imag() > 0.0)) throw DomainError(std::string(who) + ": point must lie in the upper half-plane");
}

void require_even(const Prepared& p, const char* who) {
  if (p.s.kappa() % 2 != 0) throw InvalidArgument(std::string(who) + ": top index must be even");
}

CMatrix checked_left(const CMatrix& a, const CMatrix& rhs, const char* who) {
  if (near_singular(a)) throw ConsistencyError(std::string(who) + ": singular pivot");
  return left_solve(a, rhs);
}

CMatrix checked_right(const CMatrix& rhs, const CMatrix& a, const char* who) {
  if (near_singular(a)) throw ConsistencyError(std::string(who) + ": singular pivot");
  return right_solve(rhs, a);
}

// Hermitian PSD root of a matrix already known to be PSD up to round-off,
// with round-off directions removed first so the root does not inflate them.
CMatrix clean_root(const CMatrix& a, const Tolerance& tol) {
  try {
    return psd_sqrt(spectral_clean(a, tol, 0.0), tol);
  } catch (const DefinitenessError& e) {
    throw ConsistencyError(std::string("expected a PSD matrix: ") + e.what());
  }
}

}  // namespace

SemiRadii semi_radii(const Prepared& p, cplx z, int m) {
  if (z.imag() == 0.0) throw DomainError("semi_radii: point on the real axis");
  if (m < 0 || m > p.s.kappa()) throw BoundsError("semi_radii: index out of range");
  const Tolerance& tol = p.tol;
  const auto un = static_cast<std::size_t>(m / 2);
  const CMatrix& h = p.h[2 * un];
  const CMatrix proj = hermitian_part(h * p.hp(2 * static_cast<int>(un)));

  const XFunctionEval x = x_eval(p, m, z);
  const CMatrix bmat = hermitian_part(proj * x.imag_part_scaled * proj);
  const CMatrix sbp = pinv(clean_root(bmat, tol), tol);

  SemiRadii out;
  out.gamma = checked_left(p.abcd.d[un](z), h * sbp, "d_n(z)");
  out.rho = checked_right(sbp * h, p.abcd.b[un](z), "b_n(z)");
  const double gap = std::abs(z - std::conj(z));
  out.L = hermitian_part(out.gamma * out.gamma.adjoint() / gap);
  out.R = hermitian_part(out.rho.adjoint() * out.rho / gap);
  return out;
}

WeylBall ball_parameters(const Prepared& p, cplx w, int m) {
  require_upper(w, "ball_parameters");
  if (m < 0 || m > p.s.kappa()) throw BoundsError("ball_parameters: index out of range");
  const Tolerance& tol = p.tol;
  const auto un = static_cast<std::size_t>(m / 2);
  const CMatrix& hp = p.hp(2 * static_cast<int>(un));
  const SemiRadii sr = semi_radii(p, w, m);

  const bool even = m % 2 == 0;
  const CMatrix dn = p.abcd.d[un](w);
  const CMatrix cn = p.abcd.c[un](w);
  const CMatrix dn1 = even ? p.abcd.d_raised[un + 1](w) : p.abcd.d[un + 1](w);
  const CMatrix cn1 = even ? p.abcd.c_raised[un + 1](w) : p.abcd.c[un + 1](w);
  const CMatrix xs = x_eval(p, m, w).value.adjoint();

  WeylBall ball;
  ball.w = w;
  ball.gamma = sr.gamma;
  ball.rho = sr.rho;
  ball.L = sr.L;
  ball.R = sr.R;
  ball.center = -checked_left(xs * hp * dn - dn1, xs * hp * cn - cn1, "center pivot");
  ball.sqrt_L = clean_root(ball.L, tol);
  ball.sqrt_R = clean_root(ball.R, tol);
  ball.sqrt_L_pinv = pinv(ball.sqrt_L, tol);
  ball.sqrt_R_pinv = pinv(ball.sqrt_R, tol);
  ball.rank = rank(p.h[2 * un], tol, p.h.ref[2 * un]);
  return ball;
}

WeylBall ball_parameters(const MomentSequence& s, cplx w, const Tolerance& tol) {
  require_upper(w, "ball_parameters");
  if (s.kappa() % 2 != 0) throw InvalidArgument("ball_parameters: top index must be even");
  return ball_parameters(*prepare(s, tol), w, s.kappa());
}

Membership ball_membership(const WeylBall& ball, const CMatrix& v, const Tolerance& tol) {
  Membership out;
  const CMatrix off = v - ball.center;
  out.K_hat = ball.sqrt_L_pinv * off * ball.sqrt_R_pinv;
  out.norm = contraction_defect(out.K_hat);
  out.residual = op_norm(ball.sqrt_L * out.K_hat * ball.sqrt_R - off);
  out.member = out.residual <= tol.eq_abs * (1.0 + op_norm(v)) && out.norm <= 1.0 + tol.eq_abs;
  return out;
}

CMatrix lft_value(const Prepared& p, const ConstantPair& pair, cplx z) {
  require_even(p, "lft_value");
  require_upper(z, "lft_value");
  const int n = p.s.kappa() / 2;
  const auto un = static_cast<std::size_t>(n);
  const CMatrix& hp = p.hp(2 * n);
  const CMatrix num = p.abcd.a[un](z) * hp * pair.phi + p.abcd.a_raised[un + 1](z) * pair.psi;
  const CMatrix den = p.abcd.b[un](z) * hp * pair.phi + p.abcd.b_raised[un + 1](z) * pair.psi;
  if (near_singular(den)) throw ExceptionalPointError("lft_value: singular denominator");
  return -right_solve(num, den);
}

CMatrix lft_value(const MomentSequence& s, const ConstantPair& pair, cplx z, const Tolerance& tol) {
  return lft_value(*prepare(s, tol), pair, z);
}

ConstantPair center_pair(const Prepared& p, cplx w) {
  require_even(p, "center_pair");
  require_upper(w, "center_pair");
  const CMatrix x = x_eval(p, p.s.kappa(), w).value;
  return {-x.adjoint(), identity(p.s.q)};
}

CMatrix center_solution(const Prepared& p, cplx w, cplx z) {
  return lft_value(p, center_pair(p, w), z);
}

CMatrix center_solution(const MomentSequence& s, cplx w, cplx z, const Tolerance& tol) {
  return center_solution(*prepare(s, tol), w, z);
}

ConstantPair point_pair(const CMatrix& e, double b, const CMatrix& c, const Tolerance& tol) {
  const Projectors pq = projectors(e, tol);
  const CMatrix bmat = hermitian_part(pq.ran * (imag_part(e) / b) * pq.ran);
  const CMatrix sbp = pinv(clean_root(bmat, tol), tol);
  ConstantPair out;
  out.phi = e * sbp - e.adjoint() * sbp * c * pq.ran;
  out.psi = sbp - sbp * c * pq.ran + pq.nul;
  return out;
}

PointSolution point_solution(std::shared_ptr<const Prepared> p, cplx w, const CMatrix& c) {
  require_even(*p, "point_solution");
  require_upper(w, "point_solution");
  const auto q = p->s.q;
  if (c.rows() != q || c.cols() != q) throw InvalidArgument("point_solution: C must be q x q");
  if (contraction_defect(c) > 1.0 + p->tol.eq_abs) {
    throw InvalidArgument("point_solution: C is not contractive");
  }
  const CMatrix e = -x_eval(*p, p->s.kappa(), w).value.adjoint();
  ConstantPair pair = point_pair(e, w.imag(), c, p->tol);
  return PointSolution(std::move(p), std::move(pair));
}

PointSolution point_solution(const MomentSequence& s, cplx w, const CMatrix& c, const Tolerance& tol) {
  return point_solution(prepare(s, tol), w, c);
}

bool ball_equal(const CMatrix& m, const CMatrix& a1, const CMatrix& b1, const CMatrix& a2,
                const CMatrix& b2, const Tolerance& tol) {
  (void)m;  // both balls share the center by construction
  auto vanishes = [&](const CMatrix& x) { return op_norm(x) <= tol.eq_abs; };
  const bool deg1 = vanishes(a1) || vanishes(b1);
  const bool deg2 = vanishes(a2) || vanishes(b2);
  if (deg1 || deg2) return deg1 && deg2;
  const CMatrix l1 = a1 * a1.adjoint();
  const CMatrix l2 = a2 * a2.adjoint();
  const CMatrix r1 = b1.adjoint() * b1;
  const CMatrix r2 = b2.adjoint() * b2;
  const double t2 = l2.trace().real();
  if (t2 <= 0.0) return false;
  const double ratio = l1.trace().real() / t2;
  if (!(ratio > 0.0)) return false;
  const bool left = op_norm(l1 - ratio * l2) <= tol.eq_abs * (1.0 + op_norm(l1));
  const bool right = op_norm(r1 - r2 / ratio) <= tol.eq_abs * (1.0 + op_norm(r1));
  return left && right;
}

CMatrix pair_contraction(const CMatrix& e, double b, const CMatrix& pp, const CMatrix& qq,
                         const Tolerance& tol) {
  const CMatrix bmat = hermitian_part(imag_part(e) / b);
  const CMatrix sb = clean_root(bmat, tol);
  const CMatrix sbp = pinv(sb, tol);
  return sbp * (pp - e * qq) * pinv(pp - e.adjoint() * qq, tol) * sb;
}

CMatrix j_tilde(Eigen::Index q) {
  CMatrix j = CMatrix::Zero(2 * q, 2 * q);
  j.topRightCorner(q, q) = -I_UNIT * identity(q);
  j.bottomLeftCorner(q, q) = I_UNIT * identity(q);
  return j;
}

CMatrix kovalishina_shift_resolvent(Eigen::Index q, int n, cplx z) {
  CMatrix r = CMatrix::Zero(q * (n + 1), q * (n + 1));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= i; ++j) r.block(q * i, q * j, q, q) = std::pow(z, i - j) * identity(q);
  }
  return r;
}

namespace {

struct KovData {
  int n;
  Eigen::Index q;
  CMatrix H_inv, u, v;
};

KovData kov_data(const MomentSequence& s, const Tolerance& tol) {
  if (s.kappa() % 2 != 0) throw InvalidArgument("kovalishina: top index must be even");
  KovData k;
  k.n = s.kappa() / 2;
  k.q = s.q;
  const CMatrix h = block_hankel(s, k.n);
  if (!classify_hermitian(h, tol).pd) {
    throw DegenerateDataError("kovalishina: block Hankel matrix is not positive definite");
  }
  k.H_inv = hermitian_part(h.inverse());
  const auto dim = k.q * (k.n + 1);
  k.v = CMatrix::Zero(dim, k.q);
  k.v.topRows(k.q) = identity(k.q);
  k.u = CMatrix::Zero(dim, k.q);
  if (k.n >= 1) k.u.bottomRows(k.q * k.n) = -y_block(s, 0, k.n - 1);
  return k;
}

CMatrix kov_U(const KovData& k, cplx z) {
  CMatrix uv(k.u.rows(), 2 * k.q);
  uv << k.u, k.v;
  const CMatrix rt = kovalishina_shift_resolvent(k.q, k.n, std::conj(z));
  return identity(2 * k.q) + I_UNIT * z * uv.adjoint() * rt.adjoint() * k.H_inv * uv * j_tilde(k.q);
}

struct Rst {
  CMatrix R, S, T;
};

Rst kov_rst(const KovData& k, cplx z) {
  const CMatrix rt = kovalishina_shift_resolvent(k.q, k.n, z);
  const CMatrix g = rt.adjoint() * k.H_inv * rt;
  const cplx f = I_UNIT * (std::conj(z) - z);
  Rst out;
  out.R = f * k.v.adjoint() * g * k.v;
  out.S = I_UNIT * identity(k.q) + f * k.v.adjoint() * g * k.u;
  out.T = f * k.u.adjoint() * g * k.u;
  return out;
}

}  // namespace

CMatrix kovalishina_U(const MomentSequence& s, cplx z, const Tolerance& tol) {
  return kov_U(kov_data(s, tol), z);
}

KovalishinaSystem kovalishina_system(const MomentSequence& s, cplx z, const Tolerance& tol) {
  const KovData k = kov_data(s, tol);
  KovalishinaSystem sys;
  sys.n = k.n;
  sys.z = z;
  sys.H_inv = k.H_inv;
  sys.u = k.u;
  sys.v = k.v;
  sys.R_T = kovalishina_shift_resolvent(k.q, k.n, z);
  sys.U = kov_U(k, z);
  const Rst r = kov_rst(k, z);
  sys.R_blk = r.R;
  sys.S_blk = r.S;
  sys.T_blk = r.T;
  if (z.imag() != 0.0) {
    sys.g = r.R.inverse();
    sys.C = sys.g * r.S;
    sys.d = r.S.adjoint() * sys.g * r.S - r.T;
    const Rst rc = kov_rst(k, std::conj(z));
    sys.C_alt = right_solve(rc.S.adjoint(), rc.R);
  }
  return sys;
}

KovalishinaSums kovalishina_sums(const Prepared& p, cplx z) {
  if (p.s.kappa() % 2 != 0) throw InvalidArgument("kovalishina_sums: top index must be even");
  if (z.imag() == 0.0) throw DomainError("kovalishina_sums: point on the real axis");
  const int n = p.s.kappa() / 2;
  const auto q = p.s.q;
  for (int k = 0; k <= n; ++k) {
    if (!classify_hermitian(p.h_raw[2 * k], p.tol, p.h_raw.ref[static_cast<std::size_t>(2 * k)]).pd) {
      throw DegenerateDataError("kovalishina_sums: a Hankel parameter is singular");
    }
  }
  CMatrix dd = zeros(q, q), dc = zeros(q, q), bb = zeros(q, q), ab = zeros(q, q);
  for (int k = 0; k <= n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const CMatrix hinv = p.h[2 * k].inverse();
    const CMatrix ak = p.abcd.a[uk](z), bk = p.abcd.b[uk](z);
    const CMatrix ck = p.abcd.c[uk](z), dk = p.abcd.d[uk](z);
    dd += dk.adjoint() * hinv * dk;
    dc += dk.adjoint() * hinv * ck;
    bb += bk * hinv * bk.adjoint();
    ab += ak * hinv * bk.adjoint();
  }
  const cplx gap = z - std::conj(z);
  const double agap = std::abs(gap);
  KovalishinaSums out;
  out.L_inv = agap * dd;
  out.R_inv = agap * bb;
  out.center = -right_solve(identity(q) + gap * ab, gap * bb);
  out.center_alt = -left_solve(gap * dd, identity(q) + gap * dc);
  return out;
}

KovalishinaSums kovalishina_sums(const MomentSequence& s, cplx z, const Tolerance& tol) {
  return kovalishina_sums(*prepare(s, tol), z);
}

}  // namespace wb
