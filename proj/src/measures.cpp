#include "weylball/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wb {

namespace {

double unif(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int unif_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

CMatrix random_pd(Rng& rng, Eigen::Index q) {
  const CMatrix g = random_matrix(rng, q, q);
  CMatrix m = g * g.adjoint() / static_cast<double>(q) + 0.25 * identity(q);
  return hermitian_part(m / op_norm(m));
}

// Stratified atoms in [-1.5, 1.5] so neighbours never crowd together.
std::vector<double> spread_atoms(Rng& rng, int r) {
  std::vector<double> t;
  for (int j = 0; j < r; ++j) t.push_back(-1.5 + 3.0 * (j + unif(rng, 0.2, 0.8)) / r);
  return t;
}

// Weights of the divided-difference functional on sorted nodes. Its
// moments vanish below order (nodes-1) and equal 1 at that order.
std::vector<double> divided_difference_weights(const std::vector<double>& p) {
  std::vector<double> c;
  for (std::size_t j = 0; j < p.size(); ++j) {
    double prod = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i != j) prod *= p[j] - p[i];
    }
    c.push_back(1.0 / prod);
  }
  return c;
}

Eigen::VectorXd eigenvalues(const CMatrix& a) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(hermitian_part(a), Eigen::EigenvaluesOnly)
      .eigenvalues();
}

bool definite(const CMatrix& w) {
  const auto lam = eigenvalues(w);
  return lam(0) > 1e-6 * std::max(lam(lam.size() - 1), 0.0) && lam(0) > 0.0;
}

// Largest eps with W - eps*M PSD, for PD W.
double room(const CMatrix& w, const CMatrix& m) {
  Eigen::LLT<CMatrix> llt(hermitian_part(w));
  const CMatrix li = llt.matrixL().solve(identity(w.rows()));
  const double top = eigenvalues(li * m * li.adjoint()).maxCoeff();
  return top > 0.0 ? 1.0 / top : 1e300;
}

std::vector<std::size_t> pick_sorted(Rng& rng, std::vector<std::size_t> pool, std::size_t k,
                                     const DiscreteMeasure& mu) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(k);
  std::sort(pool.begin(), pool.end(),
            [&](std::size_t a, std::size_t b) { return mu.atoms[a] < mu.atoms[b]; });
  return pool;
}

// One signed perturbation; returns false if the configuration does not allow it.
bool perturb_once(Rng& rng, DiscreteMeasure& mu, const MomentSequence& s, int n, bool add_mass) {
  const auto q = mu.q;
  std::vector<std::size_t> pool;
  for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
    if (definite(mu.weights[j])) pool.push_back(j);
  }
  CMatrix m;
  double eps_cap = 1e300;
  if (add_mass) {
    // Positive mass at the outer nodes raises the top moment; it must fit
    // inside the remaining slack s_{2n} - mu_{2n}.
    const CMatrix slack = hermitian_part(s[2 * n] - moments_of(mu, 2 * n)[2 * n]);
    const auto lam = eigenvalues(slack);
    if (lam(lam.size() - 1) <= 1e-8 * (1.0 + op_norm(s[2 * n]))) return false;
    const CMatrix root = psd_sqrt(spectral_clean(slack, {}, 0.0));
    m = hermitian_part(root * random_pd(rng, q) * root);
    eps_cap = 1.0;
    if (pool.size() < static_cast<std::size_t>(n)) return false;
  } else {
    m = random_pd(rng, q);
    if (pool.size() < static_cast<std::size_t>(n + 1)) return false;
  }

  const std::size_t existing = add_mass ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n + 1);
  const auto chosen = pick_sorted(rng, pool, existing, mu);
  std::vector<double> nodes;
  std::vector<int> owner;  // index into chosen, or -1 for a fresh node
  auto fresh_between = [&](double lo, double hi) { return lo + unif(rng, 0.25, 0.75) * (hi - lo); };
  if (add_mass) {
    if (n == 0) {
      nodes.push_back(unif(rng, -1.5, 1.5));
      owner.push_back(-1);
    } else {
      nodes.push_back(mu.atoms[chosen.front()] - unif(rng, 0.1, 0.6));
      owner.push_back(-1);
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        nodes.push_back(mu.atoms[chosen[i]]);
        owner.push_back(static_cast<int>(i));
        const double hi = (i + 1 < chosen.size()) ? mu.atoms[chosen[i + 1]]
                                                  : mu.atoms[chosen[i]] + 0.8;
        nodes.push_back(fresh_between(mu.atoms[chosen[i]], hi));
        owner.push_back(-1);
      }
    }
  } else {
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      if (i > 0) {
        nodes.push_back(fresh_between(mu.atoms[chosen[i - 1]], mu.atoms[chosen[i]]));
        owner.push_back(-1);
      }
      nodes.push_back(mu.atoms[chosen[i]]);
      owner.push_back(static_cast<int>(i));
    }
  }

  const double sign = add_mass ? 1.0 : -1.0;
  const auto c = divided_difference_weights(nodes);
  double eps_max = eps_cap;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double coef = sign * c[j];
    if (coef >= 0.0) continue;
    if (owner[j] < 0) return false;  // would create a negative atom
    eps_max = std::min(eps_max, room(mu.weights[chosen[static_cast<std::size_t>(owner[j])]], m) / -coef);
  }
  const double eps = unif(rng, 0.2, 0.9) * eps_max;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const CMatrix delta = (sign * eps * c[j]) * m;
    if (owner[j] >= 0) {
      auto& w = mu.weights[chosen[static_cast<std::size_t>(owner[j])]];
      w = hermitian_part(w + delta);
    } else {
      mu.add(nodes[j], hermitian_part(delta));
    }
  }
  return true;
}

}  // namespace

void DiscreteMeasure::validate(const Tolerance& tol) const {
  if (atoms.size() != weights.size()) throw InvalidArgument("measure: atom/weight count mismatch");
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (!std::isfinite(atoms[j])) throw InvalidArgument("measure: non-finite atom");
    for (std::size_t i = 0; i < j; ++i) {
      if (atoms[i] == atoms[j]) throw InvalidArgument("measure: repeated atom");
    }
    const auto& w = weights[j];
    if (w.rows() != q || w.cols() != q) throw InvalidArgument("measure: weight is not q x q");
    if (!classify_hermitian(w, tol).psd) throw InvalidArgument("measure: weight is not Hermitian PSD");
  }
}

void DiscreteMeasure::add(double t, const CMatrix& w) {
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (atoms[j] == t) {
      weights[j] += w;
      return;
    }
  }
  atoms.push_back(t);
  weights.push_back(w);
}

MomentSequence moments_of(const DiscreteMeasure& mu, int m) {
  MomentSequence out;
  out.q = mu.q;
  out.s.assign(static_cast<std::size_t>(m + 1), zeros(mu.q, mu.q));
  for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
    double p = 1.0;
    for (int k = 0; k <= m; ++k) {
      out.s[static_cast<std::size_t>(k)] += p * mu.weights[j];
      p *= mu.atoms[j];
    }
  }
  return out;
}

CMatrix stieltjes(const DiscreteMeasure& mu, cplx z) {
  CMatrix f = zeros(mu.q, mu.q);
  for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
    const cplx gap = mu.atoms[j] - z;
    if (gap == cplx(0.0, 0.0)) throw DomainError("stieltjes: evaluation point is an atom");
    f += mu.weights[j] / gap;
  }
  return f;
}

CMatrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(nd(rng), nd(rng)) / std::sqrt(2.0);
  }
  return m;
}

CMatrix random_hermitian(Rng& rng, Eigen::Index q) { return hermitian_part(random_matrix(rng, q, q)); }

CMatrix random_rank(Rng& rng, Eigen::Index r, Eigen::Index c, Eigen::Index rk) {
  if (rk == 0) return zeros(r, c);
  return random_matrix(rng, r, rk) * random_matrix(rng, rk, c);
}

CMatrix random_contraction(Rng& rng, Eigen::Index q, bool unit_norm) {
  const CMatrix g = random_matrix(rng, q, q);
  const double nrm = op_norm(g);
  if (nrm == 0.0) return zeros(q, q);
  return g * ((unit_norm ? 1.0 : unif(rng, 0.0, 1.0)) / nrm);
}

cplx random_upper_point(Rng& rng) { return {unif(rng, -2.0, 2.0), unif(rng, 0.3, 2.0)}; }

ProblemFixture sample_fixture(std::uint64_t seed, Eigen::Index q, int n, bool degenerate,
                              bool relaxed) {
  Rng rng(seed);
  ProblemFixture fx;
  fx.seed = seed;
  fx.n = n;
  fx.degenerate = degenerate;
  fx.relaxed = relaxed;
  fx.witness.q = q;
  const int r = degenerate ? unif_int(rng, 0, n) : n + 2;
  const auto atoms = spread_atoms(rng, r);
  for (int j = 0; j < r; ++j) {
    CMatrix w;
    if (degenerate && q > 1) {
      // Rank-deficient weights keep the singularity structural.
      const auto rk = static_cast<Eigen::Index>(unif_int(rng, 1, static_cast<int>(q) - 1));
      const CMatrix u = random_matrix(rng, q, rk);
      w = u * u.adjoint() / static_cast<double>(q);
    } else {
      w = random_pd(rng, q);
    }
    fx.witness.add(atoms[static_cast<std::size_t>(j)], hermitian_part(w / std::max(r, 1)));
  }
  fx.s = moments_of(fx.witness, 2 * n);
  if (relaxed) {
    const HankelParameters h = regularize(hankel_parameters(fx.s));
    // The increment must stay inside ran h_{2n-2} to keep extendability.
    const CMatrix base = n >= 1 ? h[2 * n - 2] : identity(q);
    const CMatrix proj = hermitian_part(base * pinv(base));
    const CMatrix g = random_matrix(rng, q, q);
    CMatrix inc = hermitian_part(proj * g * g.adjoint() * proj);
    const double nrm = op_norm(inc);
    if (nrm > 0.0) {
      const double scale = std::max(op_norm(h[2 * n]), 0.05 * op_norm(fx.s[2 * n]));
      const double mag = scale > 0.0 ? scale : 0.5;
      inc *= unif(rng, 0.3, 1.0) * mag / nrm;
      fx.s.s[static_cast<std::size_t>(2 * n)] += inc;
    }
  }
  return fx;
}

ConstantPair sample_pair(std::uint64_t seed, const MomentSequence& s, bool canonical,
                         const Tolerance& tol) {
  const auto q = s.q;
  if (canonical) return {zeros(q, q), identity(q)};
  Rng rng(seed);
  const HankelParameters h = regularize(hankel_parameters(s, tol), tol);
  const CMatrix& top = h[s.kappa() - s.kappa() % 2];
  const CMatrix p = hermitian_part(top * pinv(top, tol));
  const CMatrix g = random_hermitian(rng, q);
  const CMatrix hh = random_matrix(rng, q, q);
  return {p * g * p + I_UNIT * (p * hh * hh.adjoint() * p), identity(q)};
}

std::optional<DiscreteMeasure> perturbed_solution(std::uint64_t seed, const ProblemFixture& fx) {
  Rng rng(seed);
  DiscreteMeasure mu = fx.witness;
  const int steps = unif_int(rng, 1, 2);
  int done = 0;
  for (int k = 0; k < 4 * steps && done < steps; ++k) {
    const bool add_mass = unif(rng, 0.0, 1.0) < 0.5;
    // Without slack only mass removal is possible, so fall back to it.
    if (perturb_once(rng, mu, fx.s, fx.n, add_mass) || perturb_once(rng, mu, fx.s, fx.n, !add_mass)) ++done;
  }
  if (done == 0) return std::nullopt;
  return mu;
}

SolutionCheck check_solution(const DiscreteMeasure& mu, const MomentSequence& s) {
  SolutionCheck out;
  const int top = s.kappa();
  const MomentSequence ms = moments_of(mu, top);
  double scale = 1.0;
  for (int j = 0; j <= top; ++j) scale = std::max(scale, op_norm(s[j]));
  for (int j = 0; j < top; ++j) out.moment_dev = std::max(out.moment_dev, op_norm(ms[j] - s[j]) / scale);
  out.slack_min_eig = eigenvalues(s[top] - ms[top]).minCoeff() / scale;
  return out;
}

}  // namespace wb
