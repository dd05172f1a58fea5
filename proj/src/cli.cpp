#include "weylball/cli.hpp"

#include "weylball/measures.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace wb {

namespace {

using nlohmann::json;

struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- serialization -------------------------------------------------------

void write_number(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
  os << buf;
}

// Compact JSON with sorted keys and 17 significant digits for every float.
void write_json(std::ostream& os, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        os << json(it.key()).dump() << ':';
        write_json(os, it.value());
      }
      os << '}';
      break;
    }
    case json::value_t::array: {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',';
        write_json(os, j[i]);
      }
      os << ']';
      break;
    }
    case json::value_t::number_float:
      write_number(os, j.get<double>());
      break;
    default:
      os << j.dump();
  }
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const std::vector<CMatrix>& ms) {
  json arr = json::array();
  for (const auto& m : ms) arr.push_back(to_json(m));
  return arr;
}

// ---- parsing -------------------------------------------------------------

cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw MalformedInput("complex entries must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix parse_matrix(const json& j, Eigen::Index q) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != q) {
    throw MalformedInput("matrix must have q rows");
  }
  CMatrix m(q, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != q) {
      throw MalformedInput("matrix rows must have q entries");
    }
    for (Eigen::Index k = 0; k < q; ++k) m(i, k) = parse_complex(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open input file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

Eigen::Index parse_q(const json& doc) {
  if (!doc.is_object() || !doc.contains("q") || !doc["q"].is_number_integer() || doc["q"].get<long>() < 1) {
    throw MalformedInput("missing or invalid \"q\"");
  }
  return doc["q"].get<long>();
}

MomentSequence read_moments(const std::string& path, const Tolerance& tol) {
  const json doc = read_json(path);
  const auto q = parse_q(doc);
  if (!doc.contains("moments") || !doc["moments"].is_array() || doc["moments"].empty()) {
    throw MalformedInput("missing or empty \"moments\"");
  }
  std::vector<CMatrix> s;
  for (const auto& m : doc["moments"]) s.push_back(parse_matrix(m, q));
  try {
    return MomentSequence::make(q, std::move(s), tol);
  } catch (const InvalidArgument& e) {
    throw MalformedInput(e.what());
  }
}

DiscreteMeasure read_measure(const std::string& path, const Tolerance& tol) {
  const json doc = read_json(path);
  DiscreteMeasure mu;
  mu.q = parse_q(doc);
  if (!doc.contains("atoms") || !doc["atoms"].is_array() || !doc.contains("weights") ||
      !doc["weights"].is_array()) {
    throw MalformedInput("measure file needs \"atoms\" and \"weights\"");
  }
  for (const auto& t : doc["atoms"]) {
    if (!t.is_number()) throw MalformedInput("atoms must be real numbers");
    mu.atoms.push_back(t.get<double>());
  }
  for (const auto& w : doc["weights"]) mu.weights.push_back(parse_matrix(w, mu.q));
  try {
    mu.validate(tol);
  } catch (const InvalidArgument& e) {
    throw MalformedInput(e.what());
  }
  return mu;
}

cplx parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw MalformedInput("point must be RE,IM");
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    const std::string im_text = text.substr(comma + 1);
    std::size_t used2 = 0;
    const double im = std::stod(im_text, &used2);
    if (used2 != im_text.size()) throw MalformedInput("point must be RE,IM");
    return {re, im};
  } catch (const std::logic_error&) {
    throw MalformedInput("point must be RE,IM");
  }
}

// ---- commands ------------------------------------------------------------

struct Job {
  std::string command;
  std::string input;
  std::string point;
  std::string output;
  double tol = -1.0;
  double rank_cut = -1.0;
  double psd_slack = -1.0;
  int samples = 64;
  std::uint64_t seed = 0;
  int degree = -1;
};

Tolerance job_tolerance(const Job& job) {
  Tolerance tol;
  if (job.tol > 0) tol.eq_abs = job.tol;
  if (job.rank_cut > 0) tol.rel_rank_cut = job.rank_cut;
  if (job.psd_slack > 0) tol.psd_slack = job.psd_slack;
  return tol;
}

cplx require_upper_point(const Job& job) {
  if (job.point.empty()) throw MalformedInput("--point is required for this command");
  const cplx w = parse_point(job.point);
  if (!(w.imag() > 0.0)) throw PreconditionError("point must have positive imaginary part");
  return w;
}

void require_even_top(const MomentSequence& s) {
  if (s.kappa() % 2 != 0) throw PreconditionError("an even top index 2n is required");
}

json flags_json(const SequenceClass& c) {
  return {{"hankel_nnd", c.hankel_nnd},
          {"hankel_pd", c.hankel_pd},
          {"nnd_extendable", c.nnd_extendable},
          {"pd_extendable", c.pd_extendable}};
}

json ball_json(const WeylBall& b) {
  return {{"w", to_json(b.w)},       {"center", to_json(b.center)}, {"gamma", to_json(b.gamma)},
          {"rho", to_json(b.rho)},   {"L", to_json(b.L)},           {"R", to_json(b.R)},
          {"rank", static_cast<long>(b.rank)}};
}

std::vector<cplx> grid_through(cplx w, int samples) {
  std::vector<cplx> z;
  if (samples <= 1) return {w};
  for (int j = 0; j < samples; ++j) {
    z.emplace_back(w.real() - 2.0 + 4.0 * j / (samples - 1), w.imag());
  }
  return z;
}

json cmd_classify(const Job& job, const Tolerance& tol) {
  const MomentSequence s = read_moments(job.input, tol);
  const HankelParameters h = hankel_parameters(s, tol);
  json ranks = json::array();
  for (int j = 0; j <= h.kappa(); ++j) ranks.push_back(static_cast<long>(rank(h[j], tol, h.ref[static_cast<std::size_t>(j)])));
  return {{"q", static_cast<long>(s.q)},
          {"kappa", s.kappa()},
          {"flags", flags_json(classify_parameters(s, h, tol))},
          {"hankel_parameters", to_json(h.h)},
          {"parameter_ranks", ranks}};
}

json cmd_params(const Job& job, const Tolerance& tol) {
  MomentSequence s = read_moments(job.input, tol);
  if (job.degree >= 0) {
    if (job.degree > s.kappa()) throw PreconditionError("--degree exceeds the available moments");
    s = s.truncated(job.degree);
  }
  const HankelParameters h = hankel_parameters(s, tol);
  const SchurTable t = schur_table(s, tol);
  json levels = json::array();
  for (const auto& lvl : t.levels) levels.push_back(to_json(lvl));
  return {{"kappa", s.kappa()},
          {"hankel_parameters", to_json(h.h)},
          {"reciprocal", to_json(t.sharp)},
          {"schur_levels", levels}};
}

json cmd_ball(const Job& job, const Tolerance& tol) {
  const MomentSequence s = read_moments(job.input, tol);
  const cplx w = require_upper_point(job);
  require_even_top(s);
  return ball_json(ball_parameters(*prepare(s, tol), w, s.kappa()));
}

json cmd_verify(const Job& job, const Tolerance& tol, bool& failed) {
  const MomentSequence s = read_moments(job.input, tol);
  const cplx w = require_upper_point(job);
  require_even_top(s);
  const auto p = prepare(s, tol);
  const WeylBall ball = ball_parameters(*p, w, s.kappa());
  Rng rng(job.seed);
  int members = 0;
  double max_res = 0.0, max_norm = 0.0, max_attain = 0.0;
  for (int i = 0; i < job.samples; ++i) {
    CMatrix v;
    if (i % 2 == 0) {
      const ConstantPair pair = sample_pair(job.seed + static_cast<std::uint64_t>(i), s, i == 0, tol);
      v = lft_value(*p, pair, w);
    } else {
      const CMatrix c = random_contraction(rng, s.q);
      v = point_solution(p, w, c)(w);
      const CMatrix target = ball.center + ball.gamma * c * ball.rho / (w - std::conj(w));
      max_attain = std::max(max_attain, op_norm(v - target));
    }
    const Membership m = ball_membership(ball, v, tol);
    members += m.member ? 1 : 0;
    max_res = std::max(max_res, m.residual);
    max_norm = std::max(max_norm, m.norm);
  }
  failed = members != job.samples;
  return {{"samples", job.samples},   {"members", members},       {"all_members", !failed},
          {"max_residual", max_res}, {"max_K_norm", max_norm},   {"max_attainment_dev", max_attain},
          {"seed", job.seed},        {"w", to_json(w)}};
}

json cmd_crosscheck(const Job& job, const Tolerance& tol, bool& failed) {
  const MomentSequence s = read_moments(job.input, tol);
  const cplx w = require_upper_point(job);
  require_even_top(s);
  const auto p = prepare(s, tol);
  if (!p->cls.hankel_pd) throw PreconditionError("crosscheck requires positive definite Hankel data");
  const WeylBall ball = ball_parameters(*p, w, s.kappa());
  const KovalishinaSystem k = kovalishina_system(s, w, tol);
  const KovalishinaSums sums = kovalishina_sums(*p, w);
  auto rel = [](const CMatrix& a, const CMatrix& b) {
    return op_norm(a - b) / std::max({op_norm(a), op_norm(b), 1e-300});
  };
  const json devs = {{"center_resolvent", rel(ball.center, k.C)},
                     {"center_resolvent_alt", rel(ball.center, k.C_alt)},
                     {"left_resolvent", rel(ball.L, k.g)},
                     {"right_resolvent", rel(ball.R, k.d)},
                     {"center_sums", rel(ball.center, sums.center)},
                     {"center_sums_alt", rel(ball.center, sums.center_alt)},
                     {"left_sums", rel(ball.L, sums.L_inv.inverse())},
                     {"right_sums", rel(ball.R, sums.R_inv.inverse())}};
  double worst = 0.0;
  for (const auto& d : devs) worst = std::max(worst, d.get<double>());
  failed = worst > tol.eq_abs;
  return {{"deviations", devs}, {"max_rel_dev", worst}, {"w", to_json(w)}};
}

json cmd_moments(const Job& job, const Tolerance& tol) {
  const DiscreteMeasure mu = read_measure(job.input, tol);
  const int degree = job.degree >= 0 ? job.degree : 2;
  const MomentSequence s = moments_of(mu, degree);
  return {{"q", static_cast<long>(s.q)}, {"moments", to_json(s.s)}};
}

json grid_json(const std::vector<cplx>& zs, const std::function<CMatrix(cplx)>& f) {
  json grid = json::array();
  for (const cplx z : zs) {
    json entry = {{"z", to_json(z)}};
    try {
      entry["F"] = to_json(f(z));
    } catch (const ExceptionalPointError&) {
      entry["F"] = nullptr;
    }
    grid.push_back(entry);
  }
  return grid;
}

json cmd_solve_center(const Job& job, const Tolerance& tol) {
  const MomentSequence s = read_moments(job.input, tol);
  const cplx w = require_upper_point(job);
  require_even_top(s);
  const auto p = prepare(s, tol);
  const ConstantPair pair = center_pair(*p, w);
  auto f = [&](cplx z) { return lft_value(*p, pair, z); };
  return {{"w", to_json(w)},
          {"value_at_w", to_json(f(w))},
          {"center", to_json(ball_parameters(*p, w, s.kappa()).center)},
          {"grid", grid_json(grid_through(w, job.samples), f)}};
}

json cmd_solve_point(const Job& job, const Tolerance& tol) {
  const MomentSequence s = read_moments(job.input, tol);
  const cplx w = require_upper_point(job);
  require_even_top(s);
  const auto p = prepare(s, tol);
  Rng rng(job.seed);
  const CMatrix c = random_contraction(rng, s.q);
  const PointSolution sol = point_solution(p, w, c);
  const WeylBall ball = ball_parameters(*p, w, s.kappa());
  const CMatrix target = ball.center + ball.gamma * c * ball.rho / (w - std::conj(w));
  auto f = [&](cplx z) { return sol(z); };
  return {{"w", to_json(w)},
          {"C", to_json(c)},
          {"target", to_json(target)},
          {"value_at_w", to_json(f(w))},
          {"grid", grid_json(grid_through(w, job.samples), f)}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weyl matrix balls for truncated matricial Hamburger moment data"};
  app.require_subcommand(1);
  Job job;
  auto add_common = [&](CLI::App* sub, bool needs_point) {
    sub->add_option("--input", job.input, "moment or measure JSON file")->required();
    auto* pt = sub->add_option("--point", job.point, "evaluation point RE,IM");
    if (needs_point) pt->required();
    sub->add_option("--tol", job.tol, "equality tolerance");
    sub->add_option("--rank-cut", job.rank_cut, "relative singular-value cut");
    sub->add_option("--psd-slack", job.psd_slack, "eigenvalue slack for PSD tests");
    sub->add_option("--samples", job.samples, "sample or grid count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", job.seed, "random seed");
    sub->add_option("--output", job.output, "output path (default stdout)");
    sub->add_option("--degree", job.degree, "truncation or moment order")->check(CLI::NonNegativeNumber);
  };
  const struct {
    const char* name;
    const char* help;
    bool point;
  } commands[] = {
      {"classify", "classification flags and Hankel parameters", false},
      {"params", "Hankel parameters and Schur table", false},
      {"ball", "Weyl ball parameters at a point", true},
      {"verify", "membership of sampled solutions", true},
      {"crosscheck", "compare with the resolvent formulas", true},
      {"moments", "moments of a discrete measure", false},
      {"solve-center", "central solution on a grid", true},
      {"solve-point", "solution through a chosen ball point", true},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, c.point);
    sub->callback([&job, name = std::string(c.name)] { job.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Tolerance tol = job_tolerance(job);
    bool failed = false;
    json report;
    if (job.command == "classify") report = cmd_classify(job, tol);
    else if (job.command == "params") report = cmd_params(job, tol);
    else if (job.command == "ball") report = cmd_ball(job, tol);
    else if (job.command == "verify") report = cmd_verify(job, tol, failed);
    else if (job.command == "crosscheck") report = cmd_crosscheck(job, tol, failed);
    else if (job.command == "moments") report = cmd_moments(job, tol);
    else if (job.command == "solve-center") report = cmd_solve_center(job, tol);
    else report = cmd_solve_point(job, tol);
    report["command"] = job.command;

    std::ostringstream buf;
    write_json(buf, report);
    buf << '\n';
    if (job.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(job.output);
      if (!file) {
        err << "error: cannot write " << job.output << '\n';
        return 2;
      }
      file << buf.str();
    }
    if (failed) {
      err << "error: internal consistency check failed\n";
      return 4;
    }
    return 0;
  } catch (const MalformedInput& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: precondition: " << e.what() << '\n';
    return 3;
  } catch (const DegenerateDataError& e) {
    err << "error: precondition: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    err << "error: precondition: " << e.what() << '\n';
    return 3;
  } catch (const BoundsError& e) {
    err << "error: precondition: " << e.what() << '\n';
    return 3;
  } catch (const InvalidArgument& e) {
    err << "error: precondition: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace wb
