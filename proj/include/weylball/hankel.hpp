#pragma once

#include "weylball/linalg.hpp"

#include <optional>
#include <vector>

namespace wb {

// Truncated sequence s_0..s_kappa of q x q matrices.
struct MomentSequence {
  Eigen::Index q = 1;
  std::vector<CMatrix> s;

  int kappa() const { return static_cast<int>(s.size()) - 1; }
  const CMatrix& operator[](int j) const { return s.at(static_cast<std::size_t>(j)); }

  // Validates shapes and the Hermitian requirement; rejects, never repairs.
  static MomentSequence make(Eigen::Index q, std::vector<CMatrix> s, const Tolerance& tol = {});

  MomentSequence truncated(int top) const;
  MomentSequence adjoint() const;
};

// Column stack (s_l; ...; s_m) and row stack (s_l, ..., s_m).
CMatrix y_block(const MomentSequence& s, int l, int m);
CMatrix z_block(const MomentSequence& s, int l, int m);
// [s_{j+k+shift}]_{j,k=0..n}
CMatrix block_hankel(const MomentSequence& s, int n, int shift = 0);

struct HankelSystem {
  int n = 0;
  std::optional<CMatrix> H;  // needs 2n <= kappa
  std::optional<CMatrix> K;  // needs 2n+1 <= kappa
  CMatrix Theta;             // needs 2n-1 <= kappa
  std::optional<CMatrix> Sigma, M, N, Lambda;  // need 2n <= kappa
};

HankelSystem hankel_system(const MomentSequence& s, int n, const Tolerance& tol = {});

struct HankelParameters {
  std::vector<CMatrix> h;
  // Magnitude of the terms each h_j was formed from; drives rank cuts.
  std::vector<double> ref;

  int kappa() const { return static_cast<int>(h.size()) - 1; }
  const CMatrix& operator[](int j) const { return h.at(static_cast<std::size_t>(j)); }
};

HankelParameters hankel_parameters(const MomentSequence& s, const Tolerance& tol = {});

// Snap the parameters onto their exact range structure: even entries are
// spectrally truncated inside ran h_{2k-2}, odd entries compressed onto
// ran h_{2k}. Only meaningful for extendable data.
HankelParameters regularize(const HankelParameters& h, const Tolerance& tol = {});

struct SequenceClass {
  bool hankel_nnd = false;
  bool hankel_pd = false;
  bool nnd_extendable = false;
  bool pd_extendable = false;
};

SequenceClass classify_sequence(const MomentSequence& s, const Tolerance& tol = {});
SequenceClass classify_parameters(const MomentSequence& s, const HankelParameters& h,
                                  const Tolerance& tol = {});

MomentSequence natural_extension(const MomentSequence& s, const Tolerance& tol = {});

std::vector<CMatrix> reciprocal_sequence(const MomentSequence& s, const Tolerance& tol = {},
                                         double ref_scale = 0.0);

struct SchurTable {
  std::vector<CMatrix> sharp;                // reciprocal sequence of the base
  std::vector<std::vector<CMatrix>> levels;  // levels[k] = s^(k), length kappa-2k+1
};

SchurTable schur_table(const MomentSequence& s, const Tolerance& tol = {});
MomentSequence schur_transform(const MomentSequence& s, int k, const Tolerance& tol = {});

}  // namespace wb
