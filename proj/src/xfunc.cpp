#include "weylball/xfunc.hpp"

#include <string>

namespace wb {

std::shared_ptr<const Prepared> prepare(const MomentSequence& s, const Tolerance& tol) {
  auto p = std::make_shared<Prepared>();
  p->s = s;
  p->tol = tol;
  p->h_raw = hankel_parameters(s, tol);
  p->cls = classify_parameters(s, p->h_raw, tol);
  if (!p->cls.nnd_extendable) {
    throw PreconditionError("sequence is not Hankel non-negative definite extendable");
  }
  p->h = regularize(p->h_raw, tol);
  p->abcd = abcd_quadruple(p->h, tol);
  for (const auto& hj : p->h.h) p->h_pinv.push_back(pinv(hj, tol));
  return p;
}

namespace {

void check_point(cplx z) {
  if (z.imag() == 0.0) throw DomainError("X-function evaluated on the real axis");
}

void check_index(const Prepared& p, int m) {
  if (m < -1 || m > p.s.kappa()) throw BoundsError("X-function index out of range");
}

CMatrix solve_checked(const CMatrix& a, const CMatrix& rhs, const char* who) {
  if (near_singular(a)) throw ConsistencyError(std::string(who) + " is singular off the real axis");
  return left_solve(a, rhs);
}

CMatrix right_solve_checked(const CMatrix& rhs, const CMatrix& a, const char* who) {
  if (near_singular(a)) throw ConsistencyError(std::string(who) + " is singular off the real axis");
  return right_solve(rhs, a);
}

CMatrix b_form(const Prepared& p, int m, cplx z) {
  const int n = m / 2;
  const auto un = static_cast<std::size_t>(n);
  const CMatrix num = (m % 2 == 0) ? p.abcd.b_raised[un + 1](z) : p.abcd.b[un + 1](z);
  return p.h[2 * n] * solve_checked(p.abcd.b[un](z), num, "b_n(z)");
}

}  // namespace

CMatrix x_eval_d_form(const Prepared& p, int m, cplx z) {
  check_point(z);
  check_index(p, m);
  const auto q = p.s.q;
  if (m == -1) return zeros(q, q);
  const int n = m / 2;
  const auto un = static_cast<std::size_t>(n);
  const CMatrix num = (m % 2 == 0) ? p.abcd.d_raised[un + 1](z) : p.abcd.d[un + 1](z);
  return right_solve_checked(num, p.abcd.d[un](z), "d_n(z)") * p.h[2 * n];
}

XFunctionEval x_eval(const Prepared& p, int m, cplx z) {
  check_point(z);
  check_index(p, m);
  XFunctionEval out;
  out.m = m;
  out.z = z;
  const auto q = p.s.q;
  if (m == -1) {
    out.value = zeros(q, q);
    out.imag_part_scaled = zeros(q, q);
    return out;
  }
  out.value = b_form(p, m, z);
  const CMatrix alt = x_eval_d_form(p, m, z);
  if (op_norm(out.value - alt) > p.tol.eq_abs * (1.0 + op_norm(out.value))) {
    throw ConsistencyError("X-function: left and right evaluations disagree");
  }
  out.imag_part_scaled = hermitian_part(imag_part(out.value) / z.imag());
  return out;
}

XFunctionEval x_eval(const MomentSequence& s, int m, cplx z, const Tolerance& tol) {
  check_point(z);
  return x_eval(*prepare(s, tol), m, z);
}

CMatrix x_pinv(const Prepared& p, int m, cplx z) {
  check_point(z);
  check_index(p, m);
  if (m % 2 == 0 || m < 1) throw InvalidArgument("x_pinv: index must be odd and positive");
  const int n = (m - 1) / 2;
  const auto un = static_cast<std::size_t>(n);
  const CMatrix& h = p.h[2 * n];
  const CMatrix& hp = p.hp(2 * n);
  return hp * h * solve_checked(p.abcd.b[un + 1](z), p.abcd.b[un](z), "b_{n+1}(z)") * hp;
}

CMatrix x_pinv(const MomentSequence& s, int m, cplx z, const Tolerance& tol) {
  check_point(z);
  return x_pinv(*prepare(s, tol), m, z);
}

CMatrix x_pinv_d_form(const Prepared& p, int m, cplx z) {
  check_point(z);
  check_index(p, m);
  if (m % 2 == 0 || m < 1) throw InvalidArgument("x_pinv: index must be odd and positive");
  const int n = (m - 1) / 2;
  const auto un = static_cast<std::size_t>(n);
  const CMatrix& h = p.h[2 * n];
  const CMatrix& hp = p.hp(2 * n);
  return hp * right_solve_checked(p.abcd.d[un](z), p.abcd.d[un + 1](z), "d_{n+1}(z)") * h * hp;
}

}  // namespace wb
