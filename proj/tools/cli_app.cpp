#include "cli_app.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainspectra/config.hpp"
#include "chainspectra/error.hpp"
#include "chainspectra/expansion.hpp"
#include "chainspectra/montecarlo.hpp"
#include "chainspectra/orbit_series.hpp"
#include "chainspectra/orbits.hpp"
#include "chainspectra/parallel.hpp"
#include "chainspectra/spectrum.hpp"

namespace chainspectra::cli {
namespace {

using nlohmann::json;

enum class Format { csv, json };

// Shortest representation that round-trips.
std::string num(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

struct Common {
  std::string config;
  std::string output;
  std::string format;
  std::size_t threads = 0;
};

class Csv {
public:
  explicit Csv(std::ostream& os, std::initializer_list<const char*> header) : os_(os) {
    bool first = true;
    for (const char* h : header) {
      os_ << (first ? "" : ",") << h;
      first = false;
    }
    os_ << '\n';
  }
  template <class... T>
  void row(const T&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
    os_ << '\n';
  }

private:
  static std::string cell(double x) { return num(x); }
  static std::string cell(long x) { return std::to_string(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(bool x) { return x ? "true" : "false"; }
  static std::string cell(const std::string& x) { return x; }
  std::ostream& os_;
};

// --output accepts a path, or the bare words csv/json as a format selector.
Format resolve_format(const Common& c, Format fallback, bool csv_allowed) {
  std::string f = c.format;
  if (f.empty() && (c.output == "csv" || c.output == "json")) f = c.output;
  if (f.empty()) return fallback;
  if (f == "json") return Format::json;
  if (f == "csv" && csv_allowed) return Format::csv;
  throw ValidationError("unsupported output format '" + f + "' for this command");
}

std::optional<std::string> output_path(const Common& c) {
  if (c.output.empty() || c.output == "-" || c.output == "csv" || c.output == "json") return std::nullopt;
  return c.output;
}

json chain_json(const Chain& chain) {
  return {{"bonds", chain.bonds()},
          {"vertices", std::vector<double>(chain.vertices().begin(), chain.vertices().end())},
          {"lambdas", std::vector<double>(chain.lambdas().begin(), chain.lambdas().end())},
          {"betas", std::vector<double>(chain.betas().begin(), chain.betas().end())},
          {"bond_actions", std::vector<double>(chain.bond_actions().begin(), chain.bond_actions().end())},
          {"total_action", chain.total_action()}};
}

json terms_json(const std::vector<SpectralTerm>& terms) {
  json arr = json::array();
  for (const auto& t : terms) arr.push_back({{"amplitude", t.amplitude}, {"action", t.action}, {"phase", t.phase}});
  return arr;
}

const char* verdict(double margin) { return margin > 0.0 ? "regular-guaranteed" : "inconclusive"; }

void require_index(long nmin, long nmax) {
  if (nmin < 1 || nmax < nmin || nmax > kMaxRootIndex) {
    throw ValidationError("need 1 <= --nmin <= --nmax <= " + std::to_string(kMaxRootIndex));
  }
}

struct Params {
  long nmin = 1;
  long nmax = 0;
  int max_bonds = 12;
  double amp_threshold = 1e-8;
  int max_code_length = 0;
  double kmin = 0.0;
  double kmax = 20.0;
  long points = 1000;
  std::uint64_t steps = 100000;
  std::uint64_t seed = 42;
  std::size_t walkers = kDefaultWalkers;
};

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (auto path = output_path(c)) {
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file " + *path);
    f << text;
    if (!f) throw ValidationError("failed writing output file " + *path);
  } else {
    out << text;
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string cmd_validate(const Common& c, const Chain& chain) {
  resolve_format(c, Format::json, false);
  return dump(chain_json(chain));
}

std::string cmd_expand(const Common& c, const Chain& chain) {
  resolve_format(c, Format::json, false);
  const SpectralForm form = expand_determinant(chain);
  json j{{"total_action", form.total_action()},
         {"gamma0", form.gamma0()},
         {"margin", form.margin()},
         {"pairs", terms_json(form.pairs())},
         {"terms", terms_json(form.terms())}};
  return dump(j);
}

std::string cmd_regularity(const Common& c, const Chain& chain) {
  resolve_format(c, Format::json, false);
  const SpectralForm form = expand_determinant(chain);
  double sum = 0.0;
  for (const auto& p : form.pairs()) sum += p.amplitude;
  return dump({{"margin", form.margin()}, {"amplitude_sum", sum}, {"pairs", form.pairs().size()},
               {"verdict", verdict(form.margin())}});
}

std::string cmd_roots(const Common& c, const Params& p, const Chain& chain) {
  const Format fmt = resolve_format(c, Format::csv, true);
  require_index(p.nmin, p.nmax);
  const SpectralForm form = expand_determinant(chain);
  const auto roots = find_roots(form, p.nmin, p.nmax, resolve_threads(c.threads));
  std::ostringstream os;
  if (fmt == Format::csv) {
    Csv csv(os, {"n", "separator_lo", "separator_hi", "k_n", "residual"});
    for (const auto& r : roots) csv.row(r.n, r.lo, r.hi, r.root, r.residual);
    return os.str();
  }
  json arr = json::array();
  for (const auto& r : roots) {
    arr.push_back({{"n", r.n}, {"separator_lo", r.lo}, {"separator_hi", r.hi}, {"k_n", r.root},
                   {"residual", r.residual}, {"iterations", r.iterations}, {"multiplicity", r.multiplicity}});
  }
  return dump({{"margin", form.margin()}, {"roots", arr}});
}

std::string cmd_intervals(const Common& c, const Params& p, const Chain& chain) {
  const Format fmt = resolve_format(c, Format::json, true);
  require_index(p.nmin, p.nmax);
  const SpectralForm form = expand_determinant(chain);
  const auto cls = classify_intervals(form, p.nmin, p.nmax, resolve_threads(c.threads));
  if (fmt == Format::csv) {
    std::ostringstream os;
    Csv csv(os, {"roots_per_interval", "intervals"});
    for (const auto& [k, v] : cls.histogram) csv.row(k, v);
    return os.str();
  }
  json hist = json::array();
  for (const auto& [k, v] : cls.histogram) hist.push_back({{"roots", k}, {"intervals", v}});
  return dump({{"first", cls.first}, {"last", cls.last}, {"margin", form.margin()},
               {"verdict", verdict(form.margin())}, {"total_roots", cls.total_roots},
               {"weyl_count", cls.weyl_count}, {"all_single", cls.all_single()}, {"histogram", hist}});
}

std::string cmd_orbits(const Common& c, const Params& p, const Chain& chain) {
  const Format fmt = resolve_format(c, Format::csv, true);
  const auto orbits = enumerate_orbits(chain, p.max_bonds);
  std::ostringstream os;
  if (fmt == Format::csv) {
    Csv csv(os, {"code", "length", "action", "amplitude", "primitive"});
    for (const auto& o : orbits) csv.row(format_code(o.code), o.length(), o.action, o.amplitude, o.primitive);
    return os.str();
  }
  json arr = json::array();
  for (const auto& o : orbits) {
    arr.push_back({{"code", format_code(o.code)}, {"length", o.length()}, {"action", o.action},
                   {"amplitude", o.amplitude}, {"primitive", o.primitive}});
  }
  return dump({{"max_bonds", p.max_bonds}, {"orbits", arr}});
}

json series_meta(const OrbitSeries& s) {
  return {{"classes", s.size()}, {"amp_threshold", s.amp_threshold}, {"max_code_length", s.max_code_length},
          {"converged", s.converged}, {"dropped_classes", s.dropped}, {"dropped_weight", s.dropped_weight}};
}

std::string cmd_eigen(const Common& c, const Params& p, const Chain& chain) {
  const Format fmt = resolve_format(c, Format::csv, true);
  require_index(p.nmin, p.nmax);
  const SpectralForm form = expand_determinant(chain);
  if (!(form.margin() > 0.0)) {
    throw RefusalError("eigenvalue series refused: regularity margin " + num(form.margin()) +
                       " is not positive, so the expansion is not known to converge");
  }
  const std::size_t threads = resolve_threads(c.threads);
  const OrbitSeries series = build_orbit_series(chain, {p.amp_threshold, p.max_code_length});
  const auto ks = eigenvalue_series(form, series, p.nmin, p.nmax, threads);
  const auto roots = find_roots(form, p.nmin, p.nmax, threads);
  std::ostringstream os;
  std::optional<Csv> csv;
  json arr = json::array();
  if (fmt == Format::csv) csv.emplace(os, std::initializer_list<const char*>{"n", "k_series", "k_root", "abs_error"});
  for (std::size_t i = 0; i < ks.size(); ++i) {
    // Regular chains have exactly one root per interval.
    const RootRecord& r = roots.at(i);
    const double err = std::abs(ks[i] - r.root);
    if (csv) {
      csv->row(r.n, ks[i], r.root, err);
    } else {
      arr.push_back({{"n", r.n}, {"k_series", ks[i]}, {"k_root", r.root}, {"abs_error", err}});
    }
  }
  if (csv) return os.str();
  return dump({{"margin", form.margin()}, {"spacing", std::numbers::pi / form.total_action()},
               {"series", series_meta(series)}, {"eigenvalues", arr}});
}

std::string cmd_dos(const Common& c, const Params& p, const Chain& chain) {
  const Format fmt = resolve_format(c, Format::csv, true);
  if (!(p.kmin >= 0.0) || !(p.kmax > p.kmin) || p.points < 2 || p.points > 1'000'000) {
    throw ValidationError("need 0 <= --kmin < --kmax and 2 <= --points <= 1000000");
  }
  const OrbitSeries series = build_orbit_series(chain, {p.amp_threshold, p.max_code_length});
  std::vector<double> ks(static_cast<std::size_t>(p.points));
  std::vector<double> rho(ks.size());
  parallel_for(ks.size(), resolve_threads(c.threads), [&](std::size_t i) {
    ks[i] = p.kmin + (p.kmax - p.kmin) * static_cast<double>(i) / static_cast<double>(p.points - 1);
    rho[i] = density_of_states(series, ks[i]);
  });
  std::ostringstream os;
  if (fmt == Format::csv) {
    Csv csv(os, {"k", "rho"});
    for (std::size_t i = 0; i < ks.size(); ++i) csv.row(ks[i], rho[i]);
    return os.str();
  }
  json arr = json::array();
  for (std::size_t i = 0; i < ks.size(); ++i) arr.push_back({{"k", ks[i]}, {"rho", rho[i]}});
  return dump({{"total_action", series.total_action}, {"series", series_meta(series)}, {"samples", arr}});
}

std::string cmd_simulate(const Common& c, const Params& p, const Chain& chain) {
  resolve_format(c, Format::json, false);
  const SimulationStats s = simulate(chain, p.steps, p.seed, resolve_threads(c.threads), p.walkers);
  json vertices = json::array();
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    const auto& vs = s.vertices[v];
    const auto& m = s.memory[v].counts;
    vertices.push_back({{"vertex", v + 1},
                        {"encounters", vs.encounters},
                        {"reflections", vs.reflections},
                        {"frequency", vs.frequency()},
                        {"expected", vs.reflection_probability},
                        {"sigma", vs.sigma()},
                        {"memory", {{"after_transmit", {m[0][0], m[0][1]}}, {"after_reflect", {m[1][0], m[1][1]}}}},
                        {"chi_square", s.memory[v].chi_square()}});
  }
  json occupation = json::array();
  for (std::size_t id = 0; id < s.occupation.size(); ++id) {
    const DirectedBond d = DirectedBond::from_id(static_cast<std::uint32_t>(id));
    occupation.push_back({{"bond", format_code(std::span(&d, 1))}, {"count", s.occupation[id]}});
  }
  return dump({{"steps", s.steps}, {"seed", s.seed}, {"walkers", s.walkers}, {"wall_hits", s.wall_hits},
               {"vertices", vertices}, {"occupation", occupation}, {"return_lengths", s.return_lengths}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum spectra of dressed linear chain graphs", "chain_spectra"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  Common common;
  Params p;

  auto add_common = [&](CLI::App* sub, bool tabular) {
    sub->add_option("--config", common.config, "chain JSON file with \"vertices\" and \"lambdas\"")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--output", common.output, "output path, or csv/json to choose the format");
    if (tabular) sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", common.threads, "worker threads (default: CHAIN_SPECTRA_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
  };
  auto add_range = [&](CLI::App* sub, long& nmax) {
    sub->add_option("--nmin", p.nmin, "first separator interval")->capture_default_str();
    sub->add_option("--nmax", nmax, "last separator interval")->capture_default_str();
  };
  auto add_series = [&](CLI::App* sub) {
    sub->add_option("--amp-threshold", p.amp_threshold, "drop orbit classes with |weight| below this")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--max-code-length", p.max_code_length, "longest orbit code; 0 picks a memory-bounded default")
        ->capture_default_str()
        ->check(CLI::Range(0, 4096));
  };

  auto* validate = app.add_subcommand("validate", "check a chain config and print beta, bond actions, S0");
  add_common(validate, false);
  auto* expand = app.add_subcommand("expand", "spectral determinant coefficients as JSON");
  add_common(expand, false);
  auto* regularity = app.add_subcommand("regularity", "regularity margin and verdict");
  add_common(regularity, false);
  auto* roots = app.add_subcommand("roots", "eigenvalues bracketed by separators");
  add_common(roots, true);
  auto* intervals = app.add_subcommand("intervals", "roots-per-interval histogram");
  add_common(intervals, true);
  auto* orbits = app.add_subcommand("orbits", "primitive periodic orbits");
  add_common(orbits, true);
  orbits->add_option("--max-bonds", p.max_bonds, "longest orbit code")->capture_default_str()->check(CLI::Range(1, kMaxOrbitBonds));
  auto* eigen = app.add_subcommand("eigen", "periodic-orbit eigenvalue series against the root finder");
  add_common(eigen, true);
  add_series(eigen);
  auto* dos = app.add_subcommand("dos", "truncated periodic-orbit density of states");
  add_common(dos, true);
  add_series(dos);
  dos->add_option("--kmin", p.kmin)->capture_default_str();
  dos->add_option("--kmax", p.kmax)->capture_default_str();
  dos->add_option("--points", p.points)->capture_default_str();
  auto* sim = app.add_subcommand("simulate", "classical scattering walk statistics");
  add_common(sim, false);
  sim->add_option("--steps", p.steps, "total vertex hops")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--seed", p.seed)->capture_default_str();
  sim->add_option("--walkers", p.walkers, "independent walkers")->capture_default_str()->check(CLI::Range(1, 4096));

  long nmax_roots = 100, nmax_intervals = 500, nmax_eigen = 50;
  add_range(roots, nmax_roots);
  add_range(intervals, nmax_intervals);
  add_range(eigen, nmax_eigen);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    const Chain chain = load_chain_config(common.config);
    std::string text;
    if (*validate) text = cmd_validate(common, chain);
    else if (*expand) text = cmd_expand(common, chain);
    else if (*regularity) text = cmd_regularity(common, chain);
    else if (*roots) p.nmax = nmax_roots, text = cmd_roots(common, p, chain);
    else if (*intervals) p.nmax = nmax_intervals, text = cmd_intervals(common, p, chain);
    else if (*orbits) text = cmd_orbits(common, p, chain);
    else if (*eigen) p.nmax = nmax_eigen, text = cmd_eigen(common, p, chain);
    else if (*dos) text = cmd_dos(common, p, chain);
    else text = cmd_simulate(common, p, chain);
    emit(common, text, out);
    return kOk;
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace chainspectra::cli
