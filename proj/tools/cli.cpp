#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pctlab.hpp"

namespace pctlab::cli {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string param_hash(const ParamMap& params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [k, v] : params) {
    const std::string item = k + "=" + format_number(v) + ";";
    for (unsigned char ch : item) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

namespace {

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::string, double, long long, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<bool>(c) ? "true" : "false";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(row[i]));
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string& key = t.columns[i];
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              if (std::isfinite(v))
                obj[key] = v;
              else
                obj[key] = nullptr;
            } else {
              obj[key] = v;
            }
          },
          row[i]);
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Configuration

enum class FlagChoice { AsPrinted, ReDerived, Both };

struct Options {
  std::string command;
  std::string case_name;
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::vector<std::string> params;
  int d = 3;
  int ell = 0;
  std::string parity;
  int nr_max = 0;
  int grid_n = 4000;
  std::optional<double> q_min;
  std::optional<double> q_max;
  std::string out;
  std::string format = "csv";
  std::optional<double> tol_energy;
  std::optional<double> tol_norm;
  std::string flag;
  int jobs = 1;
  int samples = 200;
  std::optional<double> r_min;
  std::optional<double> r_max;
};

const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys = {
      "case",  "gamma",  "alpha",      "param",    "d",     "ell",     "parity",
      "nr-max", "grid-n", "q-min",     "q-max",    "out",   "format",  "tol-energy",
      "tol-norm", "flag", "jobs",      "samples",  "r-min", "r-max"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Reads a flat key=value file into option tokens ("--key", "value").
std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(t.substr(eq + 1));
    if (!config_keys().count(key))
      throw ValidationError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || !std::isfinite(v))
    throw ValidationError(what + ": '" + text + "' is not a finite number");
  return v;
}

ParamMap collect_params(const Options& o) {
  ParamMap pm;
  for (const auto& item : o.params) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("--param expects key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    pm[key] = parse_number(item.substr(eq + 1), "--param " + key);
  }
  if (o.gamma) pm["gamma"] = *o.gamma;
  if (o.alpha) pm["alpha"] = *o.alpha;
  return pm;
}

FlagChoice parse_flag(const std::string& s) {
  if (s == "as-printed") return FlagChoice::AsPrinted;
  if (s == "re-derived") return FlagChoice::ReDerived;
  if (s == "both") return FlagChoice::Both;
  throw ValidationError("--flag must be as-printed, re-derived or both");
}

std::optional<Parity> parse_parity(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw ValidationError("--parity must be even or odd");
}

/// The flag settings a command runs. Unflagged cases always use one setting.
std::vector<Flag> flags_for(const CaseSpec& c, FlagChoice choice) {
  if (!is_flagged(c.id)) return {Flag::ReDerived};
  switch (choice) {
    case FlagChoice::AsPrinted: return {Flag::AsPrinted};
    case FlagChoice::ReDerived: return {Flag::ReDerived};
    case FlagChoice::Both: return {Flag::AsPrinted, Flag::ReDerived};
  }
  return {Flag::ReDerived};
}

std::string flag_label(const CaseSpec& c, Flag f) {
  return is_flagged(c.id) ? std::string(flag_name(f)) : "none";
}

struct Context {
  Options opt;
  CaseSpec spec;
  ParamMap params;
  std::string hash;
  FlagChoice flag = FlagChoice::ReDerived;
  std::optional<Parity> parity;
};

Context make_context(const Options& o, FlagChoice default_flag) {
  if (o.case_name.empty()) throw ValidationError("--case is required for " + o.command);
  const auto id = parse_case(o.case_name);
  if (!id) throw ValidationError("unknown case '" + o.case_name + "'; run 'pctlab cases' for the list");
  const ParamMap params = collect_params(o);
  Context ctx{o, make_case(*id, params), params, param_hash(params), default_flag, parse_parity(o.parity)};
  if (!o.flag.empty()) ctx.flag = parse_flag(o.flag);
  if (o.nr_max < 0) throw ValidationError("--nr-max must be >= 0");
  ell_d(o.ell, o.d, ctx.parity);
  return ctx;
}

QuantumNumbers state(const Context& ctx, int n_r) { return {n_r, ctx.opt.ell, ctx.opt.d, ctx.parity}; }

/// Radial quantum numbers covered by --nr-max; the Hulthen index starts at 1.
std::vector<int> radial_indices(const Context& ctx) {
  const int first = ground_index(ctx.spec.id);
  std::vector<int> out;
  for (int n = first; n <= std::max(first, ctx.opt.nr_max); ++n) out.push_back(n);
  return out;
}

void report_pt_eta(const Context& ctx, std::ostream& err) {
  if (ctx.spec.id != CaseId::PoschlTeller) return;
  const PtEta printed = pt_eta_printed(ctx.spec.p.alpha, ctx.opt.d);
  const PtEta derived = pt_eta_rederived(ctx.spec.p.alpha, ctx.opt.d);
  const double dev = std::max({std::abs(printed.eta1 - derived.eta1), std::abs(printed.eta2 - derived.eta2),
                               std::abs(printed.eta3 - derived.eta3)});
  err << "pt eta printed (" << format_number(printed.eta1) << ", " << format_number(printed.eta2) << ", "
      << format_number(printed.eta3) << ") re-derived (" << format_number(derived.eta1) << ", "
      << format_number(derived.eta2) << ", " << format_number(derived.eta3) << ") max deviation "
      << format_number(dev) << '\n';
}

/// Log-spaced sample points in r, offset from the inner end of the case domain.
std::vector<double> r_samples(const Context& ctx) {
  const double base = case_r_domain(ctx.spec).lo;
  const double lo = ctx.opt.r_min.value_or(1e-3);
  const double hi = ctx.opt.r_max.value_or(1e2);
  const int n = ctx.opt.samples;
  if (!(lo > 0.0) || !(hi > lo)) throw ValidationError("need 0 < --r-min < --r-max (offsets from the domain start)");
  if (n < 2) throw ValidationError("--samples must be >= 2");
  std::vector<double> rs;
  rs.reserve(static_cast<std::size_t>(n));
  const double ratio = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) rs.push_back(base + lo * std::exp(ratio * i));
  return rs;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_cases(Table& t) {
  t.columns = {"case", "reference", "mass", "flagged", "params"};
  for (const auto& info : case_catalog()) {
    std::string schema;
    for (const auto& slot : info.slots) {
      if (!schema.empty()) schema += ";";
      for (std::size_t i = 0; i < slot.keys.size(); ++i) schema += (i ? "|" : "") + slot.keys[i];
      if (!slot.required) schema += "?";
    }
    t.rows.push_back({std::string(info.name), std::string(info.reference), std::string(info.mass),
                      is_flagged(info.id), schema});
  }
  return kOk;
}

int cmd_spectrum(const Context& ctx, Table& t, std::ostream& err) {
  report_pt_eta(ctx, err);
  t.columns = {"case", "n_r", "ell", "d", "param_hash", "E_reference", "E_closed", "flag"};
  for (Flag f : flags_for(ctx.spec, ctx.flag)) {
    const CaseSpec c = ctx.spec.with_flag(f);
    for (int n : radial_indices(ctx)) {
      const QuantumNumbers qn = state(ctx, n);
      t.rows.push_back({ctx.opt.case_name, static_cast<long long>(n), static_cast<long long>(qn.ell),
                        static_cast<long long>(qn.d), ctx.hash, reference_energy(c, qn), closed_form_energy(c, qn),
                        flag_label(c, f)});
    }
  }
  return kOk;
}

int cmd_wavefunction(const Context& ctx, Table& t) {
  t.columns = {"case", "n_r", "ell", "d", "param_hash", "flag", "r", "q", "R", "phi"};
  const auto rs = r_samples(ctx);
  for (Flag f : flags_for(ctx.spec, ctx.flag)) {
    const CaseSpec c = ctx.spec.with_flag(f);
    for (int n : radial_indices(ctx)) {
      const QuantumNumbers qn = state(ctx, n);
      const ClosedFormSolution sol = solve_closed_form(c, qn);
      for (double r : rs) {
        const double q = z_of_r(c.mass, r);
        t.rows.push_back({ctx.opt.case_name, static_cast<long long>(n), static_cast<long long>(qn.ell),
                          static_cast<long long>(qn.d), ctx.hash, flag_label(c, f), r, q, sol.R(r), sol.phi(q)});
      }
    }
  }
  return kOk;
}

int cmd_potential(const Context& ctx, Table& t) {
  t.columns = {"case", "ell", "d", "param_hash", "flag", "r", "q", "V", "W"};
  const auto rs = r_samples(ctx);
  for (Flag f : flags_for(ctx.spec, ctx.flag)) {
    const CaseSpec c = ctx.spec.with_flag(f);
    const QuantumNumbers qn = state(ctx, ground_index(c.id));
    for (double r : rs) {
      const double q = z_of_r(c.mass, r);
      t.rows.push_back({ctx.opt.case_name, static_cast<long long>(qn.ell), static_cast<long long>(qn.d), ctx.hash,
                        flag_label(c, f), r, q, target_potential(c, qn, r), effective_potential_q(c, qn, q)});
    }
  }
  return kOk;
}

struct Job {
  Flag flag;
  int n_r;
  VerificationReport report;
};

/// Runs the jobs on `workers` threads. Exceptions are rethrown in job order.
void run_jobs(const Context& ctx, const GridSettings& gs, std::vector<Job>& jobs, int workers) {
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        jobs[i].report = verify_energy(ctx.spec.with_flag(jobs[i].flag), state(ctx, jobs[i].n_r), gs);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int cmd_verify(const Context& ctx, Table& t, std::ostream& err) {
  report_pt_eta(ctx, err);
  GridSettings gs;
  gs.n = ctx.opt.grid_n;
  gs.q_min = ctx.opt.q_min;
  gs.q_max = ctx.opt.q_max;
  gs.tol = Tolerances::from_env();
  if (ctx.opt.tol_energy) gs.tol.energy = *ctx.opt.tol_energy;
  if (ctx.opt.tol_norm) gs.tol.norm = *ctx.opt.tol_norm;
  if (!(gs.tol.energy > 0.0) || !(gs.tol.norm > 0.0)) throw ValidationError("tolerances must be > 0");
  if (gs.n < 50) throw ValidationError("--grid-n must be >= 50");
  if (ctx.opt.jobs < 1) throw ValidationError("--jobs must be >= 1");

  const auto flags = flags_for(ctx.spec, ctx.flag);
  std::vector<Job> jobs;
  for (int n : radial_indices(ctx))
    for (Flag f : flags) {
      closed_form_energy(ctx.spec.with_flag(f), state(ctx, n));
      jobs.push_back({f, n, {}});
    }
  run_jobs(ctx, gs, jobs, ctx.opt.jobs);

  t.columns = {"case", "n_r", "ell", "d", "param_hash", "E_closed", "E_numeric", "abs_err", "rel_err",
               "residual_l2", "norm_defect", "flag", "passed"};
  bool numerical = false;
  bool failed = false;
  for (const auto& j : jobs) {
    const auto& r = j.report;
    t.rows.push_back({ctx.opt.case_name, static_cast<long long>(j.n_r), static_cast<long long>(ctx.opt.ell),
                      static_cast<long long>(ctx.opt.d), ctx.hash, r.e_closed, r.e_numeric, r.abs_err, r.rel_err,
                      r.residual_l2, r.norm_defect, flag_label(ctx.spec, j.flag), r.passed});
    if (!r.failure.empty()) {
      numerical = true;
      err << "n_r=" << j.n_r << " " << flag_label(ctx.spec, j.flag) << ": " << r.failure << '\n';
    }
    if (!convention_passes(r, gs.tol)) failed = true;
  }

  if (flags.size() == 2) {
    bool definite = true;
    for (std::size_t i = 0; i + 1 < jobs.size(); i += 2) {
      const bool p = convention_passes(jobs[i].report, gs.tol);
      const bool d = convention_passes(jobs[i + 1].report, gs.tol);
      std::string verdict = p == d ? (p ? "both conventions pass" : "neither convention passes")
                                   : std::string(flag_name(p ? Flag::AsPrinted : Flag::ReDerived)) + " passes";
      err << ctx.opt.case_name << " n_r=" << jobs[i].n_r << " ell=" << ctx.opt.ell << " d=" << ctx.opt.d << ": "
          << verdict << '\n';
      definite = definite && p != d;
    }
    if (definite) return kOk;
    return numerical ? kNumericalFailure : kVerificationFailed;
  }
  if (numerical) return kNumericalFailure;
  return failed ? kVerificationFailed : kOk;
}

int cmd_degeneracy(const Context& ctx, Table& t) {
  t.columns = {"case", "n_r", "ell", "d", "param_hash", "rung_ell", "rung_d", "E_closed", "max_deviation", "holds"};
  for (int n = 0; n <= ctx.opt.nr_max; ++n) {
    const DegeneracyCheck chk = check_degeneracy_detailed(ctx.spec, n, ctx.opt.ell, ctx.opt.d);
    for (std::size_t k = 0; k < chk.rungs.size(); ++k)
      t.rows.push_back({ctx.opt.case_name, static_cast<long long>(n), static_cast<long long>(ctx.opt.ell),
                        static_cast<long long>(ctx.opt.d), ctx.hash, static_cast<long long>(chk.rungs[k].ell),
                        static_cast<long long>(chk.rungs[k].d), chk.energies[k], chk.max_deviation, chk.holds});
  }
  return kOk;
}

/// Splits off --config and returns argv with the file's tokens placed right
/// after the program name, so later command-line flags take precedence.
std::vector<std::string> expand_config(int argc, const char* const* argv) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config") {
      if (i + 1 >= argc) throw ValidationError("--config needs a file path");
      path = argv[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    } else {
      rest.push_back(a);
    }
  }
  std::vector<std::string> args{argc > 0 ? argv[0] : "pctlab"};
  if (path) {
    const auto file = read_config(*path);
    args.insert(args.end(), file.begin(), file.end());
  }
  args.insert(args.end(), rest.begin(), rest.end());
  return args;
}

void add_options(CLI::App& app, Options& o) {
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--case", o.case_name, "case name (see 'cases')");
  app.add_option("--gamma", o.gamma, "mass exponent (power-law cases)");
  app.add_option("--alpha", o.alpha, "mass scale");
  app.add_option("--param", o.params, "case parameter key=value (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--d", o.d, "dimension d >= 1");
  app.add_option("--ell", o.ell, "angular momentum");
  app.add_option("--parity", o.parity, "even|odd, required when d = 1");
  app.add_option("--nr-max", o.nr_max, "largest radial quantum number");
  app.add_option("--grid-n", o.grid_n, "interior grid points for verify");
  app.add_option("--q-min", o.q_min, "override the lower end of the q window");
  app.add_option("--q-max", o.q_max, "override the upper end of the q window");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol-energy", o.tol_energy, "relative energy tolerance");
  app.add_option("--tol-norm", o.tol_norm, "normalization tolerance");
  app.add_option("--flag", o.flag, "as-printed|re-derived|both");
  app.add_option("--jobs", o.jobs, "worker threads for verify");
  app.add_option("--samples", o.samples, "sample count for wavefunction/potential");
  app.add_option("--r-min", o.r_min, "smallest sampled offset r - r_lo");
  app.add_option("--r-max", o.r_max, "largest sampled offset r - r_lo");
  std::string unused;
  app.add_option("--config", unused, "flat key=value file; command-line flags override it");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Point canonical transformation toolkit for position-dependent-mass problems", "pctlab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  add_options(app, o);
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"spectrum", "closed-form energies for n_r = 0..nr-max"},
      {"wavefunction", "normalized R(r) and phi(q) on a log grid"},
      {"potential", "target V(r) and effective W(q)"},
      {"verify", "grid eigenvalues against the closed forms"},
      {"degeneracy", "interdimensional ladder check"},
      {"cases", "list the nine cases and their parameters"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    // CLI11 consumes arguments from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  o.command = app.get_subcommands().front()->get_name();

  Table table;
  int code = kOk;
  try {
    if (o.command == "cases") {
      code = cmd_cases(table);
    } else {
      const Context ctx = make_context(o, o.command == "verify" ? FlagChoice::Both : FlagChoice::ReDerived);
      if (o.command == "spectrum") code = cmd_spectrum(ctx, table, err);
      else if (o.command == "wavefunction") code = cmd_wavefunction(ctx, table);
      else if (o.command == "potential") code = cmd_potential(ctx, table);
      else if (o.command == "verify") code = cmd_verify(ctx, table, err);
      else code = cmd_degeneracy(ctx, table);
    }
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const PoleError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << o.out << '\n';
      return kValidation;
    }
    os = &file;
  }
  if (o.format == "json")
    write_json(table, *os);
  else
    write_csv(table, *os);
  os->flush();
  return code;
}

}  // namespace pctlab::cli
