#include "weylball/polys.hpp"

#include <algorithm>

namespace wb {

MatrixPolynomial::MatrixPolynomial(Eigen::Index rows, Eigen::Index cols)
    : rows_(rows), cols_(cols), coeffs_{CMatrix::Zero(rows, cols)} {}

MatrixPolynomial::MatrixPolynomial(std::vector<CMatrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("matrix polynomial needs a coefficient");
  rows_ = coeffs_.front().rows();
  cols_ = coeffs_.front().cols();
  for (const auto& c : coeffs_) {
    if (c.rows() != rows_ || c.cols() != cols_) {
      throw InvalidArgument("matrix polynomial coefficients differ in shape");
    }
  }
}

MatrixPolynomial MatrixPolynomial::constant(const CMatrix& a) { return MatrixPolynomial({a}); }

MatrixPolynomial MatrixPolynomial::shift(Eigen::Index q) {
  return MatrixPolynomial({zeros(q, q), identity(q)});
}

CMatrix MatrixPolynomial::coeff(int j) const {
  if (j < 0 || j >= static_cast<int>(coeffs_.size())) return CMatrix::Zero(rows_, cols_);
  return coeffs_[static_cast<std::size_t>(j)];
}

int MatrixPolynomial::degree(double rtol) const {
  double big = 0.0;
  for (const auto& c : coeffs_) big = std::max(big, op_norm(c));
  if (big == 0.0) return -1;
  for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j) {
    if (op_norm(coeffs_[static_cast<std::size_t>(j)]) > rtol * big) return j;
  }
  return -1;
}

CMatrix MatrixPolynomial::operator()(cplx z) const {
  CMatrix acc = coeffs_.back();
  for (int j = static_cast<int>(coeffs_.size()) - 2; j >= 0; --j) {
    acc = acc * z + coeffs_[static_cast<std::size_t>(j)];
  }
  return acc;
}

MatrixPolynomial MatrixPolynomial::operator+(const MatrixPolynomial& o) const {
  const std::size_t len = std::max(coeffs_.size(), o.coeffs_.size());
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < len; ++j) {
    out.push_back(coeff(static_cast<int>(j)) + o.coeff(static_cast<int>(j)));
  }
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial MatrixPolynomial::operator-(const MatrixPolynomial& o) const {
  const std::size_t len = std::max(coeffs_.size(), o.coeffs_.size());
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < len; ++j) {
    out.push_back(coeff(static_cast<int>(j)) - o.coeff(static_cast<int>(j)));
  }
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial MatrixPolynomial::operator*(const MatrixPolynomial& o) const {
  const std::size_t len = coeffs_.size() + o.coeffs_.size() - 1;
  std::vector<CMatrix> out(len, CMatrix::Zero(rows_, o.cols_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial MatrixPolynomial::operator*(const CMatrix& a) const {
  std::vector<CMatrix> out;
  for (const auto& c : coeffs_) out.push_back(c * a);
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial operator*(const CMatrix& a, const MatrixPolynomial& p) {
  std::vector<CMatrix> out;
  for (const auto& c : p.coeffs_) out.push_back(a * c);
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial MatrixPolynomial::times_z() const {
  std::vector<CMatrix> out;
  out.push_back(CMatrix::Zero(rows_, cols_));
  for (const auto& c : coeffs_) out.push_back(c);
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial MatrixPolynomial::block(Eigen::Index i, Eigen::Index j, Eigen::Index q) const {
  std::vector<CMatrix> out;
  for (const auto& c : coeffs_) out.push_back(c.block(i * q, j * q, q, q));
  return MatrixPolynomial(std::move(out));
}

double poly_rel_dev(const MatrixPolynomial& p, const MatrixPolynomial& r) {
  const std::size_t len = std::max(p.coeffs().size(), r.coeffs().size());
  double big = 1.0;
  double dev = 0.0;
  for (std::size_t j = 0; j < len; ++j) {
    const CMatrix a = p.coeff(static_cast<int>(j));
    const CMatrix b = r.coeff(static_cast<int>(j));
    big = std::max({big, op_norm(a), op_norm(b)});
    dev = std::max(dev, op_norm(a - b));
  }
  return dev / big;
}

AbcdQuadruple abcd_quadruple(const HankelParameters& h, const Tolerance& tol) {
  const int kappa = h.kappa();
  const auto q = h[0].rows();
  const CMatrix id = identity(q);
  const MatrixPolynomial z = MatrixPolynomial::shift(q);
  auto hp = [&](int j) { return pinv(h[j], tol, h.ref[static_cast<std::size_t>(j)]); };

  AbcdQuadruple out;
  out.a.push_back(MatrixPolynomial::constant(zeros(q, q)));
  out.b.push_back(MatrixPolynomial::constant(id));
  out.c.push_back(MatrixPolynomial::constant(zeros(q, q)));
  out.d.push_back(MatrixPolynomial::constant(id));
  if (kappa >= 1) {
    out.a.push_back(MatrixPolynomial::constant(h[0]));
    out.b.push_back(z - MatrixPolynomial::constant(hp(0) * h[1]));
    out.c.push_back(MatrixPolynomial::constant(h[0]));
    out.d.push_back(z - MatrixPolynomial::constant(h[1] * hp(0)));
  }
  for (int k = 2; 2 * k - 1 <= kappa; ++k) {
    const auto k1 = static_cast<std::size_t>(k - 1);
    const auto k2 = static_cast<std::size_t>(k - 2);
    const MatrixPolynomial right = z - MatrixPolynomial::constant(hp(2 * k - 2) * h[2 * k - 1]);
    const MatrixPolynomial left = z - MatrixPolynomial::constant(h[2 * k - 1] * hp(2 * k - 2));
    const CMatrix rc = hp(2 * k - 4) * h[2 * k - 2];
    const CMatrix lc = h[2 * k - 2] * hp(2 * k - 4);
    out.a.push_back(out.a[k1] * right - out.a[k2] * rc);
    out.b.push_back(out.b[k1] * right - out.b[k2] * rc);
    out.c.push_back(left * out.c[k1] - lc * out.c[k2]);
    out.d.push_back(left * out.d[k1] - lc * out.d[k2]);
  }

  out.a_raised.push_back(out.a[0]);
  out.b_raised.push_back(out.b[0]);
  out.c_raised.push_back(out.c[0]);
  out.d_raised.push_back(out.d[0]);
  out.a_raised.push_back(MatrixPolynomial::constant(h[0]));
  out.b_raised.push_back(z);
  out.c_raised.push_back(MatrixPolynomial::constant(h[0]));
  out.d_raised.push_back(z);
  for (int k = 2; 2 * k - 2 <= kappa; ++k) {
    const auto k1 = static_cast<std::size_t>(k - 1);
    const auto k2 = static_cast<std::size_t>(k - 2);
    const CMatrix rc = hp(2 * k - 4) * h[2 * k - 2];
    const CMatrix lc = h[2 * k - 2] * hp(2 * k - 4);
    out.a_raised.push_back(out.a[k1].times_z() - out.a[k2] * rc);
    out.b_raised.push_back(out.b[k1].times_z() - out.b[k2] * rc);
    out.c_raised.push_back(out.c[k1].times_z() - lc * out.c[k2]);
    out.d_raised.push_back(out.d[k1].times_z() - lc * out.d[k2]);
  }
  return out;
}

MatrixPolynomial s_transform(const MatrixPolynomial& p, const MomentSequence& s, double rtol) {
  const auto q = s.q;
  const int k = p.degree(rtol);
  if (k <= 0) return MatrixPolynomial::constant(zeros(q, p.cols()));
  if (k > s.kappa() + 1) throw BoundsError("s_transform: degree exceeds available moments");
  // Coefficient i of the result is sum_{j >= i} s_{j-i} A_{j+1}.
  std::vector<CMatrix> out;
  for (int i = 0; i < k; ++i) {
    CMatrix acc = CMatrix::Zero(q, p.cols());
    for (int j = i; j < k; ++j) acc += s[j - i] * p.coeff(j + 1);
    out.push_back(acc);
  }
  return MatrixPolynomial(std::move(out));
}

MatrixPolynomial elementary_factor(const CMatrix& a, const CMatrix& b, const Tolerance& tol,
                                   double ref_scale) {
  const auto q = a.rows();
  const CMatrix ap = pinv(a, tol, ref_scale);
  CMatrix c0 = CMatrix::Zero(2 * q, 2 * q);
  CMatrix c1 = CMatrix::Zero(2 * q, 2 * q);
  c0.topRightCorner(q, q) = -a;
  c0.bottomLeftCorner(q, q) = ap;
  c0.bottomRightCorner(q, q) = -ap * b;
  c1.bottomRightCorner(q, q) = identity(q);
  return MatrixPolynomial({c0, c1});
}

MatrixPolynomial resolvent_matrix(const MomentSequence& s, int m, const Tolerance& tol) {
  if (m < 0 || m > s.kappa()) throw BoundsError("resolvent_matrix: index out of range");
  const MomentSequence t = s.truncated(m);
  if (!classify_sequence(t, tol).nnd_extendable) {
    throw PreconditionError("resolvent_matrix: sequence is not nnd-extendable");
  }
  const SchurTable table = schur_table(t, tol);
  const auto q = s.q;
  const int n = m / 2;
  MatrixPolynomial acc = MatrixPolynomial::constant(identity(2 * q));
  for (int k = 0; k < n; ++k) {
    const auto& lvl = table.levels[static_cast<std::size_t>(k)];
    acc = acc * elementary_factor(lvl[0], lvl[1], tol, op_norm(s[2 * k]));
  }
  const auto& last = table.levels[static_cast<std::size_t>(n)];
  if (m % 2 == 0) {
    acc = acc * elementary_factor(last[0], zeros(q, q), tol, op_norm(s[2 * n]));
  } else {
    acc = acc * elementary_factor(last[0], last[1], tol, op_norm(s[2 * n]));
  }
  return acc;
}

}  // namespace wb
