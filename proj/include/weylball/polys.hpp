#pragma once

#include "weylball/hankel.hpp"

#include <vector>

namespace wb {

// Matrix polynomial sum_j z^j A_j with dense coefficient storage.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(Eigen::Index rows, Eigen::Index cols);
  explicit MatrixPolynomial(std::vector<CMatrix> coeffs);

  static MatrixPolynomial constant(const CMatrix& a);
  // z * I_q
  static MatrixPolynomial shift(Eigen::Index q);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  const std::vector<CMatrix>& coeffs() const { return coeffs_; }
  // Coefficient of z^j; zero beyond the stored length.
  CMatrix coeff(int j) const;

  // Largest j whose coefficient exceeds rtol times the largest coefficient
  // norm; -1 stands for the zero polynomial.
  int degree(double rtol = 1e-12) const;

  CMatrix operator()(cplx z) const;

  MatrixPolynomial operator+(const MatrixPolynomial& o) const;
  MatrixPolynomial operator-(const MatrixPolynomial& o) const;
  MatrixPolynomial operator*(const MatrixPolynomial& o) const;
  MatrixPolynomial operator*(const CMatrix& a) const;
  friend MatrixPolynomial operator*(const CMatrix& a, const MatrixPolynomial& p);
  MatrixPolynomial times_z() const;

  // Block (i,j) of size q x q of a polynomial with block structure.
  MatrixPolynomial block(Eigen::Index i, Eigen::Index j, Eigen::Index q) const;

 private:
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  std::vector<CMatrix> coeffs_;
};

// Max coefficient deviation over max(1, largest coefficient norm).
double poly_rel_dev(const MatrixPolynomial& p, const MatrixPolynomial& r);

// Two polynomial families of first and second kind, plus the companion
// family whose top member is raised in degree by a plain factor z.
struct AbcdQuadruple {
  std::vector<MatrixPolynomial> a, b, c, d;  // index 0..eps(kappa)
  // Index 1..floor(kappa/2)+1; slot 0 mirrors index 0 of the main family.
  std::vector<MatrixPolynomial> a_raised, b_raised, c_raised, d_raised;

  int top() const { return static_cast<int>(b.size()) - 1; }
  int raised_top() const { return static_cast<int>(b_raised.size()) - 1; }
};

AbcdQuadruple abcd_quadruple(const HankelParameters& h, const Tolerance& tol = {});

MatrixPolynomial s_transform(const MatrixPolynomial& p, const MomentSequence& s,
                             double rtol = 1e-12);

// 2q x 2q product of the elementary factors built from the Schur table.
MatrixPolynomial resolvent_matrix(const MomentSequence& s, int m, const Tolerance& tol = {});

// V_{A,B}(z) = [[0, -A], [A^+, zI - A^+ B]].
MatrixPolynomial elementary_factor(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {},
                                   double ref_scale = 0.0);

}  // namespace wb
