#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace wb {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx I_UNIT{0.0, 1.0};

// Rank and definiteness thresholds shared by every module.
struct Tolerance {
  double rel_rank_cut = 1e-9;
  double psd_slack = 1e-9;
  double eq_abs = 1e-8;

  void validate() const;
};

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DefinitenessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct BoundsError : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ExceptionalPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CMatrix identity(Eigen::Index q);
CMatrix zeros(Eigen::Index r, Eigen::Index c);

// Spectral norm (largest singular value).
double op_norm(const CMatrix& a);

// Moore-Penrose inverse. Singular values at or below
// rel_rank_cut * max(sigma_max, ref_scale) are dropped; ref_scale lets a
// caller supply the magnitude of the data a matrix was derived from, so
// that round-off residue of an exactly singular block is not inverted.
CMatrix pinv(const CMatrix& a, const Tolerance& tol = {}, double ref_scale = 0.0);

// Numerical rank at the same cut as pinv.
Eigen::Index rank(const CMatrix& a, const Tolerance& tol = {}, double ref_scale = 0.0);

bool is_hermitian(const CMatrix& a, const Tolerance& tol = {});
CMatrix hermitian_part(const CMatrix& a);
// (A - A*) / 2i
CMatrix imag_part(const CMatrix& a);

// Hermitian PSD square root; eigenvalues at the rank cut map to 0.
// Throws DefinitenessError unless A is Hermitian PSD within tolerance.
CMatrix psd_sqrt(const CMatrix& a, const Tolerance& tol = {});

struct HermitianClass {
  bool hermitian = false;
  bool psd = false;
  bool pd = false;
  Eigen::Index rank = 0;
};
HermitianClass classify_hermitian(const CMatrix& a, const Tolerance& tol = {},
                                  double ref_scale = 0.0);

struct Projectors {
  CMatrix ran;
  CMatrix nul;
};
Projectors projectors(const CMatrix& a, const Tolerance& tol = {}, double ref_scale = 0.0);

double contraction_defect(const CMatrix& k);

// ran A contained in ran B, judged by the residual of projecting A onto ran B.
bool range_included(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {},
                    double ref_scale = 0.0);

// Replace a Hermitian matrix by its spectral truncation: eigenvalues with
// modulus at or below rel_rank_cut * max(|lambda|_max, ref_scale) become 0.
CMatrix spectral_clean(const CMatrix& a, const Tolerance& tol, double ref_scale);

// Solve X * A = B for X (right division) via LU.
CMatrix right_solve(const CMatrix& b, const CMatrix& a);
// Solve A * X = B for X via LU.
CMatrix left_solve(const CMatrix& a, const CMatrix& b);
// True when A is numerically singular relative to its own norm.
bool near_singular(const CMatrix& a, double cut = 1e-13);

// ||A - B|| <= rtol * max(1, ||A||, ||B||)
double rel_dev(const CMatrix& a, const CMatrix& b);

}  // namespace wb
