#pragma once

#include "weylball/measures.hpp"

#include <gtest/gtest.h>

#include <initializer_list>

namespace wb::testing {

inline CMatrix scalar(cplx x) {
  CMatrix m(1, 1);
  m(0, 0) = x;
  return m;
}

inline CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline CMatrix diag2(cplx a, cplx b) { return mat2(a, 0.0, 0.0, b); }

inline MomentSequence scalar_seq(std::initializer_list<double> v) {
  std::vector<CMatrix> s;
  for (double x : v) s.push_back(scalar(x));
  return MomentSequence::make(1, s);
}

// s = (1)
inline MomentSequence unit_mass() { return scalar_seq({1.0}); }
// s = (1, 0, 1): moments of the symmetric two-point measure
inline MomentSequence symmetric_pair() { return scalar_seq({1.0, 0.0, 1.0}); }
// s = (0, 0, 0)
inline MomentSequence zero_data() { return scalar_seq({0.0, 0.0, 0.0}); }
// q = 2, rank-one data diag(1,0), 0, diag(1,0)
inline MomentSequence rank_one_data() {
  return MomentSequence::make(2, {diag2(1, 0), zeros(2, 2), diag2(1, 0)});
}
// q = 2, positive definite data s0, 0, s0
inline MomentSequence definite_data() {
  const CMatrix s0 = mat2(2, 1, 1, 1);
  return MomentSequence::make(2, {s0, zeros(2, 2), s0});
}

#define EXPECT_MAT_NEAR(a, b, tol) EXPECT_LE(::wb::op_norm((a) - (b)), (tol)) << "lhs:\n" << (a) << "\nrhs:\n" << (b)

}  // namespace wb::testing
