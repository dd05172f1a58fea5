#include "weylball/hankel.hpp"

#include <algorithm>
#include <string>

namespace wb {

namespace {

void require_index(bool ok, const std::string& what) {
  if (!ok) throw BoundsError(what);
}

}  // namespace

MomentSequence MomentSequence::make(Eigen::Index q, std::vector<CMatrix> s, const Tolerance& tol) {
  if (q < 1) throw InvalidArgument("moment sequence: q must be positive");
  if (s.empty()) throw InvalidArgument("moment sequence: at least one moment required");
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto& m = s[j];
    if (m.rows() != q || m.cols() != q) {
      throw InvalidArgument("moment sequence: s_" + std::to_string(j) + " is not q x q");
    }
    if (!m.allFinite()) {
      throw InvalidArgument("moment sequence: s_" + std::to_string(j) + " has non-finite entries");
    }
    if (!is_hermitian(m, tol)) {
      throw InvalidArgument("moment sequence: s_" + std::to_string(j) + " is not Hermitian");
    }
  }
  MomentSequence out;
  out.q = q;
  out.s = std::move(s);
  return out;
}

MomentSequence MomentSequence::truncated(int top) const {
  require_index(top >= 0 && top <= kappa(), "truncation index out of range");
  MomentSequence out;
  out.q = q;
  out.s.assign(s.begin(), s.begin() + top + 1);
  return out;
}

MomentSequence MomentSequence::adjoint() const {
  MomentSequence out;
  out.q = q;
  for (const auto& m : s) out.s.push_back(m.adjoint());
  return out;
}

CMatrix y_block(const MomentSequence& s, int l, int m) {
  require_index(l >= 0 && m <= s.kappa() && l <= m, "y block index out of range");
  const auto q = s.q;
  CMatrix out(q * (m - l + 1), q);
  for (int j = l; j <= m; ++j) out.middleRows(q * (j - l), q) = s[j];
  return out;
}

CMatrix z_block(const MomentSequence& s, int l, int m) {
  require_index(l >= 0 && m <= s.kappa() && l <= m, "z block index out of range");
  const auto q = s.q;
  CMatrix out(q, q * (m - l + 1));
  for (int j = l; j <= m; ++j) out.middleCols(q * (j - l), q) = s[j];
  return out;
}

CMatrix block_hankel(const MomentSequence& s, int n, int shift) {
  require_index(n >= 0 && 2 * n + shift <= s.kappa(), "Hankel block index out of range");
  const auto q = s.q;
  CMatrix out(q * (n + 1), q * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) out.block(q * j, q * k, q, q) = s[j + k + shift];
  }
  return out;
}

HankelSystem hankel_system(const MomentSequence& s, int n, const Tolerance& tol) {
  const int kappa = s.kappa();
  require_index(n >= 0 && 2 * n - 1 <= kappa, "hankel_system: index out of range");
  HankelSystem sys;
  sys.n = n;
  const auto q = s.q;
  if (2 * n <= kappa) sys.H = block_hankel(s, n);
  if (2 * n + 1 <= kappa) sys.K = block_hankel(s, n, 1);
  if (n == 0) {
    sys.Theta = zeros(q, q);
    if (kappa >= 0) {
      sys.Sigma = zeros(q, q);
      sys.M = zeros(q, q);
      sys.N = zeros(q, q);
      sys.Lambda = zeros(q, q);
    }
    return sys;
  }
  const CMatrix hp = pinv(block_hankel(s, n - 1), tol);
  const CMatrix zl = z_block(s, n, 2 * n - 1);
  const CMatrix yl = y_block(s, n, 2 * n - 1);
  sys.Theta = zl * hp * yl;
  if (2 * n <= kappa) {
    const CMatrix kk = block_hankel(s, n - 1, 1);
    sys.Sigma = zl * hp * kk * hp * yl;
    sys.M = zl * hp * y_block(s, n + 1, 2 * n);
    sys.N = z_block(s, n + 1, 2 * n) * hp * yl;
    sys.Lambda = *sys.M + *sys.N - *sys.Sigma;
  }
  return sys;
}

HankelParameters hankel_parameters(const MomentSequence& s, const Tolerance& tol) {
  HankelParameters out;
  const int kappa = s.kappa();
  for (int j = 0; j <= kappa; ++j) {
    const int k = j / 2;
    const HankelSystem sys = hankel_system(s, k, tol);
    const CMatrix& sub = (j % 2 == 0) ? sys.Theta : *sys.Lambda;
    out.h.push_back(s[j] - sub);
    out.ref.push_back(std::max(op_norm(s[j]), op_norm(sub)));
  }
  return out;
}

HankelParameters regularize(const HankelParameters& h, const Tolerance& tol) {
  HankelParameters out = h;
  const int kappa = h.kappa();
  const auto q = h.h.front().rows();
  CMatrix prev_proj = identity(q);
  for (int j = 0; j <= kappa; j += 2) {
    CMatrix even = prev_proj * hermitian_part(h[j]) * prev_proj;
    even = spectral_clean(even, tol, h.ref[j]);
    const CMatrix proj = hermitian_part(even * pinv(even, tol));
    out.h[j] = even;
    if (j + 1 <= kappa) out.h[j + 1] = hermitian_part(proj * h[j + 1] * proj);
    prev_proj = proj;
  }
  return out;
}

SequenceClass classify_parameters(const MomentSequence& s, const HankelParameters& h,
                                  const Tolerance& tol) {
  SequenceClass c;
  const int kappa = s.kappa();

  c.hankel_nnd = true;
  c.hankel_pd = true;
  for (int m = 0; 2 * m <= kappa; ++m) {
    const auto hc = classify_hermitian(block_hankel(s, m), tol);
    c.hankel_nnd = c.hankel_nnd && hc.psd;
    c.hankel_pd = c.hankel_pd && hc.pd;
  }

  bool nnd = true;
  bool pd = true;
  for (int j = 0; j <= kappa; ++j) {
    if (j % 2 == 0) {
      const auto hc = classify_hermitian(h[j], tol, h.ref[j]);
      nnd = nnd && hc.psd;
      pd = pd && hc.pd;
      if (j >= 2) nnd = nnd && range_included(h[j], h[j - 2], tol, h.ref[j - 2]);
    } else {
      const bool herm = is_hermitian(h[j], tol);
      nnd = nnd && herm && range_included(h[j], h[j - 1], tol, h.ref[j - 1]);
      pd = pd && herm;
    }
  }
  c.nnd_extendable = nnd;
  c.pd_extendable = pd;
  return c;
}

SequenceClass classify_sequence(const MomentSequence& s, const Tolerance& tol) {
  return classify_parameters(s, hankel_parameters(s, tol), tol);
}

MomentSequence natural_extension(const MomentSequence& s, const Tolerance& tol) {
  if (s.kappa() % 2 != 0) throw InvalidArgument("natural_extension: kappa must be even");
  const int n = s.kappa() / 2;
  const HankelSystem sys = hankel_system(s, n, tol);
  MomentSequence out = s;
  out.s.push_back(*sys.Lambda);
  return out;
}

std::vector<CMatrix> reciprocal_sequence(const MomentSequence& s, const Tolerance& tol,
                                         double ref_scale) {
  std::vector<CMatrix> sharp;
  const CMatrix s0p = pinv(s[0], tol, ref_scale);
  sharp.push_back(s0p);
  for (int k = 1; k <= s.kappa(); ++k) {
    CMatrix acc = zeros(s.q, s.q);
    for (int j = 0; j < k; ++j) acc += s[k - j] * sharp[static_cast<std::size_t>(j)];
    sharp.push_back(-s0p * acc);
  }
  return sharp;
}

namespace {

MomentSequence first_transform(const MomentSequence& t, const Tolerance& tol, double ref) {
  const auto sharp = reciprocal_sequence(t, tol, ref);
  MomentSequence out;
  out.q = t.q;
  for (int j = 0; j + 2 <= t.kappa(); ++j) {
    out.s.push_back(-t[0] * sharp[static_cast<std::size_t>(j + 2)] * t[0]);
  }
  return out;
}

}  // namespace

SchurTable schur_table(const MomentSequence& s, const Tolerance& tol) {
  SchurTable table;
  table.sharp = reciprocal_sequence(s, tol);
  MomentSequence cur = s;
  table.levels.push_back(cur.s);
  for (int k = 1; 2 * k <= s.kappa(); ++k) {
    // The level-(k-1) head equals h_{2k-2}; its round-off is judged
    // against the original moment it was carved out of.
    cur = first_transform(cur, tol, op_norm(s[2 * k - 2]));
    table.levels.push_back(cur.s);
  }
  return table;
}

MomentSequence schur_transform(const MomentSequence& s, int k, const Tolerance& tol) {
  if (k < 0 || 2 * k > s.kappa()) throw BoundsError("schur_transform: level out of range");
  MomentSequence cur = s;
  for (int l = 1; l <= k; ++l) cur = first_transform(cur, tol, op_norm(s[2 * l - 2]));
  return cur;
}

}  // namespace wb
