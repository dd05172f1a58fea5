#pragma once

#include "weylball/polys.hpp"

#include <memory>

namespace wb {

// Everything derived once from a sequence: raw and regularized parameters,
// the classification, and the polynomial quadruple.
struct Prepared {
  MomentSequence s;
  Tolerance tol;
  HankelParameters h_raw;
  HankelParameters h;  // regularized
  SequenceClass cls;
  AbcdQuadruple abcd;
  std::vector<CMatrix> h_pinv;

  const CMatrix& hp(int j) const { return h_pinv.at(static_cast<std::size_t>(j)); }
};

// Throws PreconditionError unless the sequence is nnd-extendable.
std::shared_ptr<const Prepared> prepare(const MomentSequence& s, const Tolerance& tol = {});

struct XFunctionEval {
  int m = -1;
  cplx z;
  CMatrix value;
  CMatrix imag_part_scaled;  // (Im z)^{-1} Im X_m(z)
};

XFunctionEval x_eval(const Prepared& p, int m, cplx z);
XFunctionEval x_eval(const MomentSequence& s, int m, cplx z, const Tolerance& tol = {});

// Same value through the right-hand polynomial family.
CMatrix x_eval_d_form(const Prepared& p, int m, cplx z);

// Closed form of the pseudoinverse of an odd-index X-function.
CMatrix x_pinv(const Prepared& p, int m, cplx z);
CMatrix x_pinv(const MomentSequence& s, int m, cplx z, const Tolerance& tol = {});
CMatrix x_pinv_d_form(const Prepared& p, int m, cplx z);

}  // namespace wb
