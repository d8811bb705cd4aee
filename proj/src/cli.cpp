#include "clonopt/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "clonopt/channels.hpp"
#include "clonopt/cloner.hpp"
#include "clonopt/errors.hpp"
#include "clonopt/json_io.hpp"
#include "clonopt/omega_opt.hpp"
#include "clonopt/random.hpp"
#include "clonopt/rep_theory.hpp"

namespace clonopt::cli {

namespace {

struct Options {
  int d = 2;
  int n = 1;
  int m = 2;
  std::string weight;
  std::string mu;
  std::string alpha;
  std::string beta;
  std::string gamma;
  std::string input;
  std::string channel;
  std::uint64_t seed = 0;
  int samples = 0;  // 0: command default
  std::size_t guard = tol::dense_guard;
  bool guard_set = false;
  std::string format = "json";
  int threads = 1;
  std::vector<CLI::Option*> guard_options;
};

constexpr int max_d = 8;
constexpr int max_sites = 64;

void check_range(const Options& o, bool need_n_ge_1) {
  if (o.d < 2) throw ConstraintError("--d must be at least 2");
  if (o.n < 0) throw ConstraintError("--n must be non-negative");
  if (need_n_ge_1 && o.n < 1) throw ConstraintError("--n must be at least 1 here");
  if (o.m < o.n) throw ConstraintError("--m must be at least --n");
  if (o.guard_set) return;
  if (o.d > max_d) throw GuardError("--d above " + std::to_string(max_d) + " needs --guard");
  if (o.m > max_sites) throw GuardError("--m above " + std::to_string(max_sites) + " needs --guard");
}

ClonerSpec spec_of(const Options& o) {
  check_range(o, true);
  return ClonerSpec{o.d, o.n, o.m};
}

int samples_or(const Options& o, int fallback) {
  if (o.samples < 0) throw ConstraintError("--samples must be non-negative");
  return o.samples > 0 ? o.samples : fallback;
}

// Inline JSON if it looks like JSON, otherwise a file path.
Json read_json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return Json::parse(text);
    std::ifstream in(text);
    if (!in) throw ConstraintError("cannot open '" + text + "'");
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConstraintError(std::string("invalid JSON input: ") + e.what());
  }
}

PureState psi_of(const Options& o) {
  if (o.input.empty()) return haar_state(o.d, o.seed);
  const Json j = read_json_arg(o.input);
  auto psi = PureState::normalized(vector_from_json(j));
  if (psi.d() != o.d) throw ConstraintError("input state has dimension " + std::to_string(psi.d()) + ", expected d");
  return psi;
}

std::vector<std::int64_t> parse_ints(const std::string& text, const char* what) {
  if (text.empty()) throw ConstraintError(std::string("--") + what + " is required");
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      throw ConstraintError(std::string("cannot parse --") + what + " '" + text + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw ConstraintError(std::string("cannot parse --") + what + " '" + text + "'");
  }
  return out;
}

HighestWeight weight_of(const Options& o) {
  if (o.weight.empty()) throw ConstraintError("--weight is required");
  return HighestWeight::parse(o.weight);
}

HalfInt half_of(const std::string& text, const char* what) {
  if (text.empty()) throw ConstraintError(std::string("--") + what + " is required");
  return HalfInt::parse(text);
}

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

// ---- output -------------------------------------------------------------

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    return;
  }
  const bool rational = j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer() &&
                        (prefix.find("omega") != std::string::npos || prefix.find("gamma") != std::string::npos ||
                         prefix.find("delta") != std::string::npos || prefix.find("overlap") != std::string::npos ||
                         prefix.find("closed_form") != std::string::npos || prefix.find("c2_su") != std::string::npos);
  if (rational) {
    rows.emplace_back(prefix, j[0].dump() + "/" + j[1].dump());
  } else if (j.is_array() && !j.empty() && j[0].is_object()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(const Json& report, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << report.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [key, value] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << key << value << '\n';
}

Json report_json(double estimate, int samples, std::uint64_t seed, double stderr_) {
  return Json{{"estimate", estimate}, {"samples", samples}, {"seed", seed}, {"stderr", stderr_}};
}

// ---- commands -----------------------------------------------------------

Json cmd_dims(const Options& o) {
  check_range(o, false);
  Json j{{"d", o.d}, {"n", o.n}, {"sym_dimension", sym_dimension(o.d, o.n)}};
  std::uint64_t full = 1;
  bool fits = true;
  for (int k = 0; k < o.n && fits; ++k) fits = !__builtin_mul_overflow(full, static_cast<std::uint64_t>(o.d), &full);
  j["full_dimension"] = fits ? Json(full) : Json(nullptr);
  if (static_cast<std::size_t>(sym_dimension(o.d, o.n)) <= o.guard) {
    Json basis = Json::array();
    for (const auto& occ : occupation_basis(o.d, o.n)) basis.push_back(to_json(occ));
    j["basis"] = std::move(basis);
  }
  return j;
}

Json cmd_cloner_constants(const Options& o) {
  const auto spec = spec_of(o);
  return Json{{"gamma", to_json(shrinking_factor(spec))},
              {"delta_one", to_json(delta_one_closed_form(spec))},
              {"overlap", to_json(all_clone_overlap_closed_form(spec))}};
}

Json cmd_cloner_apply(const Options& o) {
  const auto spec = spec_of(o);
  if (static_cast<std::size_t>(sym_dimension(o.d, o.m)) > o.guard)
    throw GuardError("output dimension exceeds the guard");
  Matrix rho;
  if (!o.input.empty() && read_json_arg(o.input).is_object()) {
    rho = matrix_from_json(read_json_arg(o.input));
    const DensityOperator checked(rho, BasisTag{BasisKind::symmetric, o.d, o.n});
    rho = checked.matrix();
  } else {
    const Vector v = product_power(psi_of(o), o.n);
    rho = v * v.adjoint();
  }
  const Matrix out = apply_optimal_cloner(spec, rho);
  return Json{{"basis", "symmetric"}, {"d", o.d}, {"sites", o.m}, {"trace", out.trace().real()}, {"output", to_json(out)}};
}

Json cmd_cloner_marginal(const Options& o) {
  const auto spec = spec_of(o);
  const auto psi = psi_of(o);
  const Matrix numeric = single_clone_marginal(spec, psi);
  const Matrix closed = single_clone_marginal_closed_form(spec, psi);
  const double fidelity = (psi.amplitudes().adjoint() * numeric * psi.amplitudes())(0, 0).real();
  return Json{{"psi", vector_to_json(psi.amplitudes())},
              {"gamma", to_json(shrinking_factor(spec))},
              {"fidelity", fidelity},
              {"max_abs_diff", max_abs(numeric - closed)},
              {"marginal", to_json(numeric)},
              {"closed_form", to_json(closed)}};
}

Json cmd_cloner_overlap(const Options& o) {
  const auto spec = spec_of(o);
  const auto psi = psi_of(o);
  const double numeric = all_clone_overlap(spec, psi);
  const Rational closed = all_clone_overlap_closed_form(spec);
  return Json{{"psi", vector_to_json(psi.amplitudes())},
              {"numeric", numeric},
              {"closed_form", to_json(closed)},
              {"abs_diff", std::abs(numeric - to_double(closed))}};
}

Json cmd_cloner_delta_all(const Options& o) {
  const auto spec = spec_of(o);
  const auto r = delta_all_numeric(spec, samples_or(o, 200), o.seed, o.guard);
  return Json{{"estimate", r.estimate}, {"samples", r.samples}, {"seed", r.seed}};
}

Json cmd_omega_max(const Options& o) {
  check_range(o, true);
  if (o.threads < 1) throw ConstraintError("--threads must be at least 1");
  EnumerationGuard guard;
  if (o.guard_set) guard.max_m = guard.max_d = std::numeric_limits<int>::max();
  return to_json(maximize_brute(o.d, o.n, o.m, guard, o.threads));
}

Json cmd_omega_point(const Options& o) {
  const CandidatePoint p{weight_of(o), parse_ints(o.mu, "mu")};
  const auto d = p.m.d();
  std::int64_t n = 0;
  for (auto v : p.mu) n = checked_add(n, v);
  const auto m = p.m.total();
  if (n < 1 || n > max_sites || m > max_sites) throw ConstraintError("point totals must satisfy 1 <= N and N, M <= 64");
  require_feasible(p, static_cast<int>(n), static_cast<int>(m));
  Json j{{"d", d},
         {"n", n},
         {"m_out", m},
         {"m", p.m.components()},
         {"mu", p.mu},
         {"f2", f2(p)},
         {"omega", to_json(omega_of_point(p, d, static_cast<int>(n), static_cast<int>(m)))},
         {"omega_casimir", to_json(omega_from_casimirs(p, d, static_cast<int>(n), static_cast<int>(m)))}};
  return j;
}

Json cmd_omega_su2(const Options& o) {
  const HalfInt a = half_of(o.alpha, "alpha");
  const HalfInt b = half_of(o.beta, "beta");
  const HalfInt g = half_of(o.gamma, "gamma");
  return Json{{"alpha", a.str()}, {"beta", b.str()}, {"gamma", g.str()}, {"omega", to_json(omega_su2(a, b, g))}};
}

Json cmd_omega_greedy(const Options& o) {
  check_range(o, true);
  std::optional<CandidatePoint> start;
  if (!o.weight.empty() || !o.mu.empty()) start = CandidatePoint{weight_of(o), parse_ints(o.mu, "mu")};
  const auto result = maximize_greedy(o.d, o.n, o.m, start);
  Json steps = Json::array();
  for (const auto& s : result.steps)
    steps.push_back(Json{{"move", to_string(s.move)},
                         {"active_d", s.active_d},
                         {"f2_before", s.f2_before},
                         {"f2_after", s.f2_after}});
  return Json{{"point", to_json(result.point)},
              {"f2", f2(result.point)},
              {"omega", to_json(omega_of_point(result.point, o.d, o.n, o.m))},
              {"steps", std::move(steps)}};
}

Json cmd_rep_casimir(const Options& o) {
  const auto w = weight_of(o);
  const auto c = casimirs(w, w.d());
  return Json{{"weight", w.str()},
              {"normalized", w.normalized().str()},
              {"c1", c.c1},
              {"c2", c.c2},
              {"c2_su", to_json(c.c2_su)},
              {"weyl_dimension", weyl_dimension(w, w.d())}};
}

Json cmd_rep_branch(const Options& o) {
  const auto w = weight_of(o);
  if (o.n < 0 || o.n > max_sites) throw ConstraintError("--n must lie in [0, 64]");
  Json branches = Json::array();
  std::int64_t total = 0;
  for (const auto& b : pieri_branch(o.n, w)) {
    branches.push_back(Json{{"raw", b.str()}, {"normalized", b.normalized().str()}});
    total = checked_add(total, weyl_dimension(b, w.d()));
  }
  return Json{{"weight", w.str()},
              {"n", o.n},
              {"branches", std::move(branches)},
              {"dimension_sum", total},
              {"dimension_product", checked_mul(sym_dimension(w.d(), o.n), weyl_dimension(w, w.d()))}};
}

Json cmd_rep_multiplicity(const Options& o) {
  const auto w = weight_of(o);
  const auto total = w.total();
  return Json{{"weight", w.str()}, {"m", total}, {"multiplicity", fund_power_multiplicity(w, static_cast<int>(total))}};
}

Json cmd_rep_adjoint(const Options& o) {
  Options bounds = o;
  bounds.m = o.n;  // M plays no part here
  check_range(bounds, true);
  return Json{{"d", o.d}, {"n", o.n}, {"multiplicity", adjoint_multiplicity(o.d, o.n)}};
}

// Channel for the `channel` commands: --channel JSON, an SU(2) component given
// by --alpha/--beta, or the optimal cloner.
struct ChannelChoice {
  Channel channel;
  std::optional<double> expected_omega;
};

ChannelChoice channel_of(const Options& o) {
  if (!o.channel.empty()) return {channel_from_json(read_json_arg(o.channel)), std::nullopt};
  const auto spec = spec_of(o);
  if (!o.alpha.empty() || !o.beta.empty()) {
    if (o.d != 2) throw ConstraintError("component cloners are defined for d = 2");
    const SU2Labels labels{half_of(o.alpha, "alpha"), half_of(o.beta, "beta"), HalfInt::from_twice(o.n)};
    checked_full_dim(2, o.m, o.guard);
    return {su2_component_cloner(labels, o.n, o.m), to_double(omega_su2(labels.alpha, labels.beta, labels.gamma))};
  }
  return {optimal_cloner(spec, ClonerPath::occupation, o.guard), to_double(Rational(o.m + o.d, o.n + o.d))};
}

Json cmd_channel_twirl(const Options& o) {
  const auto c = channel_of(o);
  const auto r = twirl(c.channel, TwirlConfig{samples_or(o, 200), o.seed});
  return report_json(r.estimate, r.samples, r.seed, r.stderr_);
}

Json cmd_channel_defect(const Options& o) {
  const auto c = channel_of(o);
  const auto r = covariance_defect(c.channel, samples_or(o, 50), o.seed);
  return report_json(r.estimate, r.samples, r.seed, r.stderr_);
}

Json cmd_channel_omega(const Options& o) {
  const auto c = channel_of(o);
  Json j{{"omega", omega_measure(c.channel)}};
  if (c.expected_omega) j["expected"] = *c.expected_omega;
  return j;
}

Json cmd_channel_delta_one(const Options& o) {
  const auto c = channel_of(o);
  const auto r = delta_one_numeric(c.channel, samples_or(o, 200), o.seed);
  return report_json(r.estimate, r.samples, r.seed, r.stderr_);
}

Json cmd_verify_all(const Options& o, bool& failed) {
  check_range(o, true);
  const auto checks = verify_all(o.d, o.n, o.m, o.seed, samples_or(o, 200), o.guard);
  Json list = Json::array();
  Json failures = Json::array();
  for (const auto& c : checks) {
    list.push_back(Json{{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
    if (c.status == "fail") failures.push_back(c.name);
  }
  failed = !failures.empty();
  return Json{{"d", o.d}, {"n", o.n}, {"m", o.m}, {"seed", o.seed}, {"checks", std::move(list)}, {"failures", failures}};
}

// ---- argument wiring ----------------------------------------------------

enum Flag : unsigned {
  f_d = 1u << 0,
  f_n = 1u << 1,
  f_m = 1u << 2,
  f_weight = 1u << 3,
  f_mu = 1u << 4,
  f_alpha = 1u << 5,
  f_beta = 1u << 6,
  f_gamma = 1u << 7,
  f_seed = 1u << 8,
  f_samples = 1u << 9,
  f_input = 1u << 10,
  f_channel = 1u << 11,
  f_threads = 1u << 12,
  f_dnm = f_d | f_n | f_m,
};

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& description, Options& o, unsigned flags) {
  auto* sub = parent->add_subcommand(name, description);
  if (flags & f_d) sub->add_option("--d", o.d, "single-site dimension");
  if (flags & f_n) sub->add_option("--n", o.n, "number of input copies N");
  if (flags & f_m) sub->add_option("--m", o.m, "number of output copies M");
  if (flags & f_weight) sub->add_option("--weight", o.weight, "highest weight, e.g. 2,1,0");
  if (flags & f_mu) sub->add_option("--mu", o.mu, "increment, e.g. 1,0");
  if (flags & f_alpha) sub->add_option("--alpha", o.alpha, "output spin (3/2, 1.5, ...)");
  if (flags & f_beta) sub->add_option("--beta", o.beta, "ancilla spin");
  if (flags & f_gamma) sub->add_option("--gamma", o.gamma, "input spin");
  if (flags & f_seed) sub->add_option("--seed", o.seed, "random seed (default 0)");
  if (flags & f_samples) sub->add_option("--samples", o.samples, "sample count");
  if (flags & f_input) sub->add_option("--input", o.input, "state: JSON vector or density matrix, inline or file");
  if (flags & f_channel) sub->add_option("--channel", o.channel, "channel JSON, inline or file");
  if (flags & f_threads) sub->add_option("--threads", o.threads, "worker cap");
  o.guard_options.push_back(sub->add_option("--guard", o.guard, "dense size guard; also lifts the d <= 8, M <= 64 limits"));
  sub->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  return sub;
}

} // namespace

std::vector<CheckResult> verify_all(int d, int n, int m, std::uint64_t seed, int samples, std::size_t guard) {
  std::vector<CheckResult> out;
  const ClonerSpec spec{d, n, m};
  spec.validate();
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    out.push_back({name, ok ? "pass" : "fail", detail});
  };
  auto skip = [&](const std::string& name, const std::string& why) { out.push_back({name, "skipped", why}); };
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const GuardError& e) {
      skip(name, e.what());
    } catch (const std::exception& e) {
      record(name, false, e.what());
    }
  };

  guarded("marginal_shrinking", [&] {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const auto psi = haar_state(d, derive_seed(seed, static_cast<std::uint64_t>(i)));
      worst = std::max(worst, max_abs(single_clone_marginal(spec, psi) - single_clone_marginal_closed_form(spec, psi)));
    }
    record("marginal_shrinking", worst <= 1e-10, "max entry deviation " + fmt(worst));
  });

  guarded("all_clone_overlap", [&] {
    double worst = 0.0;
    const double expected = to_double(all_clone_overlap_closed_form(spec));
    for (int i = 0; i < 5; ++i)
      worst = std::max(worst, std::abs(all_clone_overlap(spec, haar_state(d, derive_seed(seed, 100u + i))) - expected));
    record("all_clone_overlap", worst <= 1e-10, "max deviation " + fmt(worst));
  });

  std::optional<Channel> t;
  guarded("completely_positive", [&] {
    t = optimal_cloner(spec, ClonerPath::occupation, guard);
    if (static_cast<std::size_t>(t->input().dim() * t->output().dim()) > guard)
      throw GuardError("Choi matrix exceeds the guard");
    const double e = min_choi_eigenvalue(*t);
    record("completely_positive", e >= tol::psd_floor, "min Choi eigenvalue " + fmt(e));
  });
  if (t) {
    guarded("trace_preserving", [&] {
      const double e = t->trace_preservation_defect();
      record("trace_preserving", e <= tol::structural, "defect " + fmt(e));
    });
    guarded("covariance", [&] {
      const auto r = covariance_defect(*t, 10, seed);
      record("covariance", r.estimate <= tol::structural, "defect " + fmt(r.estimate));
    });
    guarded("delta_one", [&] {
      const auto r = delta_one_numeric(*t, samples, seed);
      const double cf = to_double(delta_one_closed_form(spec));
      record("delta_one", r.estimate >= cf - 1e-9 && r.estimate <= cf + 2e-3,
             "estimate " + fmt(r.estimate) + " vs " + fmt(cf));
    });
    guarded("omega_measure", [&] {
      const double w = omega_measure(*t);
      const double expected = to_double(Rational(m + d, n + d));
      record("omega_measure", std::abs(w - expected) <= tol::omega_residual, "omega " + fmt(w));
    });
  } else {
    for (const char* name : {"trace_preserving", "covariance", "delta_one", "omega_measure"})
      skip(name, "cloner not materialized");
  }

  guarded("dense_path", [&] {
    const Channel dense = optimal_cloner(spec, ClonerPath::dense, guard);
    if (dense.input().dim() * dense.output().dim() > guard) throw GuardError("Choi matrix exceeds the guard");
    const Channel full = optimal_cloner(spec, ClonerPath::occupation, guard).with_full_output(guard);
    const double diff = max_abs(choi(dense) - choi(full));
    record("dense_path", diff <= tol::structural, "Choi deviation " + fmt(diff));

    const auto psi = haar_state(d, derive_seed(seed, 200));
    const Vector v = product_power(psi, n);
    const Matrix rho = dense.apply(v * v.adjoint());
    const BasisTag tag = dense.output();
    const Matrix first = single_site_marginal(rho, tag, 0);
    double worst = 0.0;
    for (int k = 1; k < m; ++k) worst = std::max(worst, max_abs(single_site_marginal(rho, tag, k) - first));
    record("permutation_invariance", worst <= tol::structural, "site spread " + fmt(worst));
  });
  if (out.back().name == "dense_path") skip("permutation_invariance", out.back().detail);

  if (m <= EnumerationGuard{}.max_m) {
    guarded("omega_brute", [&] {
      const auto report = maximize_brute(d, n, m);
      const bool ok = report.omega_max == Rational(m + d, n + d) && report.unique &&
                      report.maximizers.front() == expected_maximizer(d, n, m);
      record("omega_brute", ok, "omega_max " + to_string(report.omega_max) + ", maximizers " +
                                    std::to_string(report.maximizers.size()));
      record("gamma_consistency",
             report.gamma == shrinking_factor(spec) && report.delta_one == delta_one_closed_form(spec),
             "gamma " + to_string(report.gamma));
      const auto greedy = maximize_greedy(d, n, m);
      record("greedy", greedy.point == report.maximizers.front(), "greedy end " + greedy.point.str());
    });
  } else {
    for (const char* name : {"omega_brute", "gamma_consistency", "greedy"}) skip(name, "M above the enumeration guard");
  }

  guarded("adjoint_multiplicity", [&] {
    const auto k = adjoint_multiplicity(d, n);
    record("adjoint_multiplicity", k == 1, "multiplicity " + std::to_string(k));
  });

  if (d == 2) {
    guarded("su2_optimal_component", [&] {
      const std::size_t full_dim = checked_full_dim(2, m, guard);
      if ((n + 1) * full_dim > guard) throw GuardError("Choi matrix exceeds the guard");
      const SU2Labels labels{HalfInt::from_twice(m), HalfInt::from_twice(m - n), HalfInt::from_twice(n)};
      const Channel component = su2_component_cloner(labels, n, m);
      const Channel full = optimal_cloner(spec, ClonerPath::occupation, guard).with_full_output(guard);
      const double diff = operator_norm(choi(component) - choi(full));
      record("su2_optimal_component", diff <= 1e-8, "Choi distance " + fmt(diff));
    });
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Optimal universal cloners: closed forms, optimality search and representation bookkeeping", "clonopt"};
  app.require_subcommand(1);

  auto* dims = leaf(&app, "dims", "symmetric subspace dimension and occupation basis", o, f_d | f_n);

  auto* cloner = app.add_subcommand("cloner", "optimal cloner")->require_subcommand(1);
  auto* constants = leaf(cloner, "constants", "exact gamma, delta_one and all-clone overlap", o, f_dnm);
  auto* apply = leaf(cloner, "apply", "apply the cloner to a state", o, f_dnm | f_seed | f_input);
  auto* marginal = leaf(cloner, "marginal", "single-clone marginal vs closed form", o, f_dnm | f_seed | f_input);
  auto* overlap = leaf(cloner, "overlap", "all-clone overlap vs closed form", o, f_dnm | f_seed | f_input);
  auto* delta_all = leaf(cloner, "delta-all", "sampled supremum of the all-clone error", o, f_dnm | f_seed | f_samples);

  auto* omega = app.add_subcommand("omega", "omega functional")->require_subcommand(1);
  auto* omax = leaf(omega, "max", "brute-force maximum over the feasible domain", o, f_dnm | f_threads);
  auto* opoint = leaf(omega, "point", "omega of a (weight, increment) pair", o, f_weight | f_mu);
  auto* osu2 = leaf(omega, "su2", "omega of spin labels", o, f_alpha | f_beta | f_gamma);
  auto* ogreedy = leaf(omega, "greedy", "case-by-case ascent", o, f_dnm | f_weight | f_mu);

  auto* rep = app.add_subcommand("rep", "U(d) weight bookkeeping")->require_subcommand(1);
  auto* casimir = leaf(rep, "casimir", "Casimir values and Weyl dimension", o, f_weight);
  auto* rbranch = leaf(rep, "branch", "Pieri branching of Sym^N tensor weight", o, f_weight | f_n);
  auto* multiplicity = leaf(rep, "multiplicity", "multiplicity in the M-fold tensor power", o, f_weight);
  auto* adjoint = leaf(rep, "adjoint", "adjoint multiplicity in Sym^N tensor its conjugate", o, f_d | f_n);

  auto* chan = app.add_subcommand("channel", "generic channel diagnostics")->require_subcommand(1);
  const unsigned cflags = f_dnm | f_alpha | f_beta | f_channel | f_seed | f_samples;
  auto* ctwirl = leaf(chan, "twirl", "Haar twirl distance", o, cflags);
  auto* cdefect = leaf(chan, "defect", "covariance defect", o, cflags);
  auto* comega = leaf(chan, "omega", "measured omega", o, cflags);
  auto* cdelta = leaf(chan, "delta-one", "sampled single-clone error", o, cflags);

  auto* verify = app.add_subcommand("verify", "invariant suite")->require_subcommand(1);
  auto* vall = leaf(verify, "all", "run every check for (d, N, M)", o, f_dnm | f_seed | f_samples);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }
  for (const auto* opt : o.guard_options) o.guard_set = o.guard_set || opt->count() > 0;

  try {
    Json report;
    bool failed = false;
    if (dims->parsed()) report = cmd_dims(o);
    else if (constants->parsed()) report = cmd_cloner_constants(o);
    else if (apply->parsed()) report = cmd_cloner_apply(o);
    else if (marginal->parsed()) report = cmd_cloner_marginal(o);
    else if (overlap->parsed()) report = cmd_cloner_overlap(o);
    else if (delta_all->parsed()) report = cmd_cloner_delta_all(o);
    else if (omax->parsed()) report = cmd_omega_max(o);
    else if (opoint->parsed()) report = cmd_omega_point(o);
    else if (osu2->parsed()) report = cmd_omega_su2(o);
    else if (ogreedy->parsed()) report = cmd_omega_greedy(o);
    else if (casimir->parsed()) report = cmd_rep_casimir(o);
    else if (rbranch->parsed()) report = cmd_rep_branch(o);
    else if (multiplicity->parsed()) report = cmd_rep_multiplicity(o);
    else if (adjoint->parsed()) report = cmd_rep_adjoint(o);
    else if (ctwirl->parsed()) report = cmd_channel_twirl(o);
    else if (cdefect->parsed()) report = cmd_channel_defect(o);
    else if (comega->parsed()) report = cmd_channel_omega(o);
    else if (cdelta->parsed()) report = cmd_channel_delta_one(o);
    else if (vall->parsed()) report = cmd_verify_all(o, failed);
    emit(report, o, out);
    return failed ? exit_numeric : exit_ok;
  } catch (const GuardError& e) {
    err << "guard: " << e.what() << '\n';
    return exit_guard;
  } catch (const ArithmeticOverflow& e) {
    err << "overflow: " << e.what() << '\n';
    return exit_guard;
  } catch (const NumericError& e) {
    err << "numeric: " << e.what() << '\n';
    return exit_numeric;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::out_of_range& e) {
    err << "usage: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_numeric;
  }
}

} // namespace clonopt::cli
