// Command-line front end: loads states and channels from JSON files or
// factory specs, runs the fidelity reports and property suites, and emits
// deterministic CSV or JSON. Exit codes: 0 success, 1 a checked property
// failed, 2 invalid input.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <entfid/entfid.hpp>

namespace {

using entfid::DensityOperator;
using entfid::Json;
using entfid::Matrix;
using entfid::QuantumChannel;
using entfid::SearchBudget;
using entfid::ValidationError;
using entfid::Vector;
using entfid::num12;

// Factory specs look like "kind:key=value,key=value". A spec argument is
// first tried as a path; only existing files are loaded from disk.
struct FactorySpec {
  std::string kind;
  std::map<std::string, std::string> params;
};

FactorySpec parse_spec(const std::string& text, const char* field) {
  FactorySpec spec;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (spec.kind.empty())
    throw ValidationError(field, "empty factory kind in '" + text + "'");
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError(field, "expected key=value, got '" + item + "' in '" + text + "'");
    spec.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return spec;
}

const std::string& require_param(const FactorySpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end())
    throw ValidationError(key, "factory '" + spec.kind + "' needs " + key + "=...");
  return it->second;
}

double param_double(const FactorySpec& spec, const std::string& key) {
  const std::string& raw = require_param(spec, key);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size())
    throw ValidationError(key, "cannot parse " + key + "='" + raw + "' as a number");
  return value;
}

int param_int(const FactorySpec& spec, const std::string& key) {
  const double value = param_double(spec, key);
  const int as_int = static_cast<int>(value);
  if (static_cast<double>(as_int) != value)
    throw ValidationError(key, key + " must be an integer, got '" +
                                   require_param(spec, key) + "'");
  return as_int;
}

std::uint64_t param_seed(const FactorySpec& spec, const std::string& key) {
  const std::string& raw = require_param(spec, key);
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size())
    throw ValidationError(key, "cannot parse " + key + "='" + raw + "' as a seed");
  return value;
}

DensityOperator make_state(const std::string& arg) {
  if (std::filesystem::exists(arg)) return entfid::load_density(arg);
  const FactorySpec spec = parse_spec(arg, "state");
  if (spec.kind == "epr") return entfid::density_from_pure(entfid::epr_singlet());
  if (spec.kind == "mixed") {
    const int dim = param_int(spec, "dim");
    if (dim < 1) throw ValidationError("dim", "dimension must be positive");
    return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
  }
  if (spec.kind == "basis") {
    const int dim = param_int(spec, "dim");
    const int k = param_int(spec, "k");
    if (dim < 1) throw ValidationError("dim", "dimension must be positive");
    if (k < 0 || k >= dim)
      throw ValidationError("k", "basis index " + std::to_string(k) + " out of range");
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return entfid::density_from_pure(entfid::PureState(std::move(v)));
  }
  if (spec.kind == "random-pure")
    return entfid::density_from_pure(
        entfid::random_pure(param_int(spec, "dim"), param_seed(spec, "seed")));
  if (spec.kind == "random-mixed")
    return entfid::random_density(param_int(spec, "dim"), param_int(spec, "rank"),
                                  param_seed(spec, "seed"));
  throw ValidationError("state", "'" + arg + "' is neither an existing file nor one of " +
                                     "epr | mixed | basis | random-pure | random-mixed");
}

QuantumChannel make_channel(const std::string& arg) {
  if (std::filesystem::exists(arg)) return entfid::load_channel(arg);
  const FactorySpec spec = parse_spec(arg, "channel");
  const auto dim_or = [&](int fallback) {
    return spec.params.count("dim") ? param_int(spec, "dim") : fallback;
  };
  if (spec.kind == "identity") return entfid::identity_channel(param_int(spec, "dim"));
  if (spec.kind == "depolarizing")
    return entfid::depolarizing_channel(dim_or(2), param_double(spec, "p"));
  if (spec.kind == "dephasing")
    return entfid::dephasing_channel(dim_or(2), param_double(spec, "p"));
  if (spec.kind == "amplitude-damping")
    return entfid::amplitude_damping_channel(param_double(spec, "gamma"));
  if (spec.kind == "replace") {
    const int dim = param_int(spec, "dim");
    if (dim < 1) throw ValidationError("dim", "dimension must be positive");
    return entfid::replace_with_channel(
        dim, DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
  }
  if (spec.kind == "random")
    return entfid::random_channel(param_int(spec, "dim"), param_int(spec, "kraus"),
                                  param_seed(spec, "seed"));
  throw ValidationError("channel", "'" + arg + "' is neither an existing file nor one of " +
                                       "identity | depolarizing | dephasing | " +
                                       "amplitude-damping | replace | random");
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ValidationError("out", "cannot open '" + out_path + "' for writing");
  out << content;
}

std::map<std::string, double> parse_overrides(const std::vector<std::string>& args) {
  std::map<std::string, double> overrides;
  for (const std::string& item : args) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("tol", "expected name=value, got '" + item + "'");
    const std::string raw = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(raw, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != raw.size() || value < 0.0)
      throw ValidationError("tol", "cannot parse tolerance '" + item + "'");
    overrides[item.substr(0, eq)] = value;
  }
  return overrides;
}

struct CommonOptions {
  std::string state;
  std::string channel;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int samples = 200;
  int restarts = 6;
  int aux_dim = 0;  // 0 means library default
  bool search = false;
  bool inject_fault = false;
  std::vector<std::string> tol;
};

SearchBudget budget_from(const CommonOptions& opt) {
  SearchBudget budget;
  budget.restarts = opt.restarts;
  budget.seed = opt.seed;
  if (opt.aux_dim > 0) budget.aux_dim = opt.aux_dim;
  return budget;
}

int cmd_report(const CommonOptions& opt) {
  const DensityOperator rho = make_state(opt.state);
  const QuantumChannel e = make_channel(opt.channel);
  const entfid::FidelityReport report = entfid::fidelity_report(rho, e);
  bool ok = report.all_pass();

  Json j = entfid::report_to_json(report);
  if (opt.search) {
    const SearchBudget budget = budget_from(opt);
    const entfid::SearchResult ext = entfid::min_extension_fidelity(rho, e, budget);
    const entfid::SearchResult dyn = entfid::min_extension_dynamics_fidelity(rho, e, budget);
    j["extension_search"] = entfid::search_result_to_json(ext);
    j["dynamics_search"] = entfid::search_result_to_json(dyn);

    const auto add_row = [&](const char* name, double lhs, double rhs, bool pass) {
      Json row;
      row["name"] = name;
      row["lhs"] = lhs;
      row["rhs"] = rhs;
      row["pass"] = pass;
      j["inequalities"].push_back(std::move(row));
      ok = ok && pass;
    };
    const double fe = report.fe_kraus;
    add_row("extension_search_matches_formula", std::abs(ext.min_value - fe), 1e-3,
            std::abs(ext.min_value - fe) <= 1e-3);
    add_row("dynamics_search_matches_formula", std::abs(dyn.min_value - fe), 1e-3,
            std::abs(dyn.min_value - fe) <= 1e-3);
    add_row("search_never_below_formula", fe - 1e-9, ext.min_value,
            ext.min_value >= fe - 1e-9);
  }

  write_output(opt.out, j.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_verify(const CommonOptions& opt) {
  if (opt.samples < 1) throw ValidationError("samples", "need at least one sample");
  const auto rows = entfid::run_property_suites(opt.seed, opt.samples, opt.inject_fault,
                                                parse_overrides(opt.tol));
  bool ok = true;
  std::string content;
  if (opt.format == "csv") {
    content += "property,samples,max_violation,pass\n";
    for (const auto& row : rows) {
      content += row.name + "," + std::to_string(row.samples) + "," +
                 num12(row.max_violation) + "," + (row.pass ? "1" : "0") + "\n";
      ok = ok && row.pass;
    }
  } else {
    Json j = Json::array();
    for (const auto& row : rows) {
      Json r;
      r["property"] = row.name;
      r["samples"] = row.samples;
      r["max_violation"] = row.max_violation;
      r["tolerance"] = row.tolerance;
      r["pass"] = row.pass;
      j.push_back(std::move(r));
      ok = ok && row.pass;
    }
    content = j.dump(2) + "\n";
  }
  write_output(opt.out, content);
  return ok ? 0 : 1;
}

std::string pad(const std::string& text, std::size_t width) {
  return text.size() >= width ? text + " " : text + std::string(width - text.size(), ' ');
}

int cmd_epr_demo(const CommonOptions& opt) {
  const entfid::PureState pair = entfid::epr_singlet();
  const Matrix joint = pair.amplitudes() * pair.amplitudes().adjoint();
  const DensityOperator rho_a =
      DensityOperator(entfid::partial_trace(joint, entfid::SubsystemShape{{2, 2}}, {0}));

  const QuantumChannel keep = entfid::identity_channel(2);
  const QuantumChannel scramble = entfid::replace_with_channel(
      2, DensityOperator(Matrix::Identity(2, 2) * 0.5));

  struct Row {
    const char* name;
    double f;
    double fe;
    double expected_fe;
  };
  const Row rows[] = {
      {"identity", entfid::uhlmann_fidelity(rho_a, apply(keep, rho_a)).value,
       entfid::entanglement_fidelity_kraus(rho_a, keep).value, 1.0},
      {"swap-replace", entfid::uhlmann_fidelity(rho_a, apply(scramble, rho_a)).value,
       entfid::entanglement_fidelity_kraus(rho_a, scramble).value, 0.25},
  };

  double worst = 0.0;
  std::ostringstream text;
  text << "storage of one half of a maximally entangled qubit pair\n";
  text << "reduced state: I/2\n\n";
  text << "dynamics      fidelity        entanglement_fidelity\n";
  for (const Row& row : rows) {
    worst = std::max(worst, std::abs(row.f - 1.0));
    worst = std::max(worst, std::abs(row.fe - row.expected_fe));
    text << pad(row.name, 14) << pad(num12(row.f), 16) << num12(row.fe) << "\n";
  }

  SearchBudget budget = budget_from(opt);
  if (!budget.aux_dim) budget.aux_dim = 2;
  double worst_search = 0.0;
  text << "\nminimization cross-check (seed " << budget.seed << ", restarts "
       << budget.restarts << ", aux dim " << *budget.aux_dim << ")\n";
  const QuantumChannel* channels[] = {&keep, &scramble};
  for (int i = 0; i < 2; ++i) {
    const entfid::SearchResult r =
        entfid::min_extension_fidelity(rho_a, *channels[i], budget);
    worst_search = std::max(worst_search, std::abs(r.min_value - rows[i].expected_fe));
    text << pad(rows[i].name, 14) << "min " << num12(r.min_value) << "\n";
  }

  const bool ok = worst <= 1e-6 && worst_search <= 1e-4;
  text << "\nlargest closed-form deviation: " << num12(worst) << "\n";
  text << "largest search deviation: " << num12(worst_search) << "\n";
  text << "verdict: " << (ok ? "pass" : "FAIL") << "\n";
  write_output(opt.out, text.str());
  return ok ? 0 : 1;
}

int cmd_kl_check(const CommonOptions& opt) {
  if (opt.samples < 1) throw ValidationError("samples", "need at least one state");
  const QuantumChannel e = make_channel(opt.channel);
  const entfid::KnillLaflammeReport report =
      entfid::knill_laflamme_check(e, opt.samples, budget_from(opt));
  write_output(opt.out, entfid::kl_report_to_json(report).dump(2) + "\n");
  return report.pass ? 0 : 1;
}

int cmd_sweep(const CommonOptions& opt, const std::string& grid_arg) {
  if (grid_arg.empty()) throw ValidationError("grid", "sweep needs --grid v1,v2,...");
  std::vector<double> grid;
  std::stringstream items(grid_arg);
  std::string item;
  while (std::getline(items, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size())
      throw ValidationError("grid", "cannot parse grid value '" + item + "'");
    grid.push_back(value);
  }
  if (grid.empty()) throw ValidationError("grid", "sweep needs a nonempty grid");

  const DensityOperator rho = make_state(opt.state);
  const int dim = rho.dim();
  const auto family = [&](double value) -> QuantumChannel {
    if (opt.channel == "identity") return entfid::identity_channel(dim);
    if (opt.channel == "depolarizing") return entfid::depolarizing_channel(dim, value);
    if (opt.channel == "dephasing") return entfid::dephasing_channel(dim, value);
    if (opt.channel == "amplitude-damping") {
      if (dim != 2)
        throw ValidationError("dim", "amplitude damping acts on qubits, state has dim " +
                                         std::to_string(dim));
      return entfid::amplitude_damping_channel(value);
    }
    if (opt.channel == "replace")
      return entfid::replace_with_channel(
          dim, DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
    throw ValidationError("channel", "'" + opt.channel + "' is not one of identity | " +
                                         "depolarizing | dephasing | amplitude-damping | " +
                                         "replace");
  };

  std::string csv = "parameter,fidelity,entanglement_fidelity\n";
  Json rows = Json::array();
  for (double value : grid) {
    const QuantumChannel e = family(value);
    const double f = entfid::uhlmann_fidelity(rho, apply(e, rho)).value;
    const double fe = entfid::entanglement_fidelity_kraus(rho, e).value;
    if (opt.format == "csv") {
      csv += num12(value) + "," + num12(f) + "," + num12(fe) + "\n";
    } else {
      Json r;
      r["parameter"] = value;
      r["fidelity"] = f;
      r["entanglement_fidelity"] = fe;
      rows.push_back(std::move(r));
    }
  }
  write_output(opt.out, opt.format == "csv" ? csv : rows.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "entfid: state fidelity and entanglement fidelity for finite-dimensional\n"
      "quantum states and channels.\n\n"
      "Conventions: fidelity uses the squared convention (1 for identical\n"
      "states). States and channels are JSON files or factory specs like\n"
      "'mixed:dim=2' and 'depolarizing:p=0.25'. CSV floats carry 12\n"
      "significant digits; pass columns are 1/0. Identical command, options\n"
      "and seed give byte-identical output. Exit codes: 0 success, 1 a\n"
      "checked property failed, 2 invalid input."};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string grid_arg;

  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "RNG seed (default 0)")->envname("ENTFID_SEED");
  };
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "output file (default stdout)");
  };
  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  const auto add_search_knobs = [&](CLI::App* cmd) {
    cmd->add_option("--restarts", opt.restarts, "search restarts (default 6)");
    cmd->add_option("--dt", opt.aux_dim, "auxiliary dimension (default: state rank)");
  };

  CLI::App* report = app.add_subcommand(
      "report", "fidelity and entanglement fidelity of a (state, channel) pair");
  report->add_option("--state", opt.state, "state JSON file or factory spec")->required();
  report->add_option("--channel", opt.channel, "channel JSON file or factory spec")
      ->required();
  report->add_flag("--search", opt.search,
                   "cross-check the formulas by minimizing over extensions");
  add_seed(report);
  add_out(report);
  add_search_knobs(report);

  CLI::App* verify = app.add_subcommand(
      "verify", "run the property suites; CSV columns property,samples,max_violation,pass");
  verify->add_option("--samples", opt.samples, "instances per suite (default 200)");
  verify->add_option("--tol", opt.tol, "override a suite tolerance, name=value")
      ->take_all();
  verify->add_flag("--inject-fault", opt.inject_fault, "append a failing control row")
      ->group("");
  add_seed(verify);
  add_out(verify);
  add_format(verify);

  CLI::App* epr = app.add_subcommand(
      "epr-demo", "storage comparison for one half of a maximally entangled pair");
  epr->add_flag("--search", opt.search,
                "kept for scripts; the cross-check always runs");
  add_seed(epr);
  add_out(epr);
  add_search_knobs(epr);

  CLI::App* kl = app.add_subcommand(
      "kl-check", "test the worst-case storage bound fe >= 1 - 1.5*eps");
  kl->add_option("--channel", opt.channel, "channel JSON file or factory spec")->required();
  kl->add_option("--samples", opt.samples, "random states to test (default 200)");
  kl->add_option("--format", opt.format, "output format (JSON only)")
      ->check(CLI::IsMember({"json"}));
  add_seed(kl);
  add_out(kl);
  add_search_knobs(kl);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "tabulate parameter,fidelity,entanglement_fidelity for a channel family");
  sweep->add_option("--channel", opt.channel,
                    "family: identity | depolarizing | dephasing | amplitude-damping | replace")
      ->required();
  sweep->add_option("--grid", grid_arg, "comma-separated parameter values")->required();
  sweep->add_option("--state", opt.state, "input state (default mixed:dim=2)");
  add_out(sweep);
  add_format(sweep);

  if (opt.state.empty()) opt.state = "mixed:dim=2";

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (report->parsed()) return cmd_report(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (epr->parsed()) return cmd_epr_demo(opt);
    if (kl->parsed()) return cmd_kl_check(opt);
    if (sweep->parsed()) return cmd_sweep(opt, grid_arg);
  } catch (const ValidationError& e) {
    std::cerr << "error (" << e.field() << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
