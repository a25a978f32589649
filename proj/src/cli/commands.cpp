// Copyright 2026 The qbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "qbm/cli.hpp"
#include "qbm/densmat.hpp"
#include "qbm/validation.hpp"

namespace qbm::cli {

namespace {

std::string tagged(const std::string& column, Prep prep, const char* zero_eq, const char* bath_eq) {
  return column + "_eq" + (prep == Prep::ZeroTemp ? zero_eq : bath_eq);
}

}  // namespace

CsvTable fig1_table(const ScenarioConfig& config) {
  const SimParams& p = config.params;
  const auto ts = config.times(0.0, 3.0 / p.gamma, 200);
  const double d = config.resolved_d();
  const double lam = p.thermal_wavelength();
  const double scale = lam * lam / (d * d);
  const CatInit zero{d, config.resolved_sigma(), Prep::ZeroTemp};
  const CatInit bath{d, config.resolved_sigma(), Prep::BathTemp};
  CsvTable table{{"gamma_t", "A0_scaled_eq4.5", "AT_scaled_eq4.15"}, {}};
  for (double t : ts) {
    table.rows.push_back({p.gamma * t, interference_measure(t, p, zero).a_of_t * scale,
                          interference_measure(t, p, bath).a_of_t * scale});
  }
  return table;
}

CsvTable fig2_table(const ScenarioConfig& config) {
  const SimParams& p = config.params;
  const auto ts = config.times(0.0, 0.5 / p.gamma, 400);
  const StateInit packet = config.packet();
  CsvTable table{{"gamma_t", "purity_eq5.9"}, {}};
  for (double t : ts) table.rows.push_back({p.gamma * t, purity(t, p, packet)});
  return table;
}

const std::vector<std::string>& scan_quantities() {
  static const std::vector<std::string> names = {"moments",     "second-moments", "interference",
                                                 "attenuation", "purity",         "witness"};
  return names;
}

CsvTable scan_table(const ScenarioConfig& config, const std::string& quantity) {
  const auto& known = scan_quantities();
  if (std::find(known.begin(), known.end(), quantity) == known.end()) {
    throw UsageError("unknown scan quantity '" + quantity + "'");
  }
  const SimParams& p = config.params;
  const Prep prep = config.prep;
  const auto ts = config.times(0.0, 3.0 / p.gamma, 200);
  CsvTable table;
  table.header.push_back("gamma_t");

  if (quantity == "moments") {
    table.header.insert(table.header.end(), {"G_eq2.5", "x2_eq2.6", "xxd_eq2.6", "xd2_eq2.6"});
    for (double t : ts) {
      const FluctuationMoments f = fluctuation_moments(t, p);
      table.rows.push_back({p.gamma * t, green_function(t, p).g, f.x2, f.xxd, f.xd2});
    }
  } else if (quantity == "second-moments") {
    for (const char* c : {"A11", "A12", "A22", "detA"}) table.header.push_back(tagged(c, prep, "3.5", "3.16"));
    const bool packet = config.state == StateKind::Gaussian;
    if (packet) table.header.insert(table.header.end(), {"mean_q_eq3.9", "mean_p_eq3.9"});
    for (double t : ts) {
      const SecondMoments a = second_moments(t, p, config.resolved_sigma(), prep);
      std::vector<double> row{p.gamma * t, a.a11, a.a12, a.a22, a.det};
      if (packet) {
        const PhasePoint c = mean_trajectory(t, p, config.x0);
        row.insert(row.end(), {c.q, c.p});
      }
      table.rows.push_back(std::move(row));
    }
  } else if (quantity == "interference") {
    table.header.push_back(tagged("A", prep, "4.5", "4.15"));
    table.header.push_back(tagged("A_short", prep, "4.6", "4.16"));
    table.header.push_back(tagged("phi_q", prep, "4.4", "4.14"));
    table.header.push_back(tagged("phi_p", prep, "4.4", "4.14"));
    const CatInit cat = config.cat();
    for (double t : ts) {
      const InterferenceMeasure m = interference_measure(t, p, cat);
      table.rows.push_back({p.gamma * t, m.a_of_t, interference_shorttime(t, p, cat), m.phi_q, m.phi_p});
    }
  } else if (quantity == "attenuation") {
    table.header.push_back(tagged("a", prep, "4.12", "4.17"));
    table.header.push_back(tagged("a_short", prep, "4.13", "4.18"));
    const CatInit cat = config.cat();
    for (double t : ts) table.rows.push_back({p.gamma * t, attenuation(t, p, cat), attenuation_shorttime(t, p, cat)});
  } else {
    if (config.state == StateKind::Cat) throw UsageError(quantity + " scan is defined for --state gaussian only");
    const StateInit packet = config.packet();
    const double sigma = config.resolved_sigma();
    const double h2 = p.hbar * p.hbar;
    if (quantity == "purity") {
      table.header.insert(table.header.end(), {"purity_eq5.9", "mixedness_eq5.9"});
      if (prep == Prep::ZeroTemp) table.header.push_back("purity_short_eq5.10");
      for (double t : ts) {
        const SecondMoments a = second_moments(t, p, sigma, prep);
        std::vector<double> row{p.gamma * t, purity(t, p, packet), 4.0 * a.det / h2};
        if (prep == Prep::ZeroTemp) row.push_back(purity_shorttime(t, p, sigma));
        table.rows.push_back(std::move(row));
      }
    } else {
      table.header.insert(table.header.end(), {"witness_eq5.13", "purity_eq5.9"});
      for (double t : ts) {
        table.rows.push_back({p.gamma * t, negativity_witness(t, p, sigma, prep), purity(t, p, packet)});
      }
    }
  }
  return table;
}

namespace {

struct FlagSpec {
  const char* key;
  const char* help;
};

constexpr FlagSpec kScenarioFlags[] = {
    {"m", "particle mass"},
    {"gamma", "friction rate"},
    {"kT", "bath temperature (energy)"},
    {"hbar", "Planck constant"},
    {"sigma", "packet width (default: thermal wavelength / 4)"},
    {"d", "cat separation (default: 10 thermal wavelengths)"},
    {"x0", "single packet centre"},
    {"prep", "initial preparation: zero|bath"},
    {"state", "state kind: gaussian|cat"},
    {"t0", "first time"},
    {"t1", "last time"},
    {"n", "number of time points"},
    {"spacing", "time grid: linear|log"},
    {"out", "output path (default: standard output)"},
};

void emit(const ScenarioConfig& config, const CsvTable& table, std::ostream& out) {
  if (config.out.empty()) {
    table.write(out);
    return;
  }
  std::ostringstream buffer;
  table.write(buffer);
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + config.out + "'");
  file << buffer.str();
  if (!file.flush()) throw UsageError("failed writing '" + config.out + "'");
}

int run_validate(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
  const auto& groups = check_groups();
  for (const auto& name : config.skip) {
    const bool known = std::any_of(groups.begin(), groups.end(), [&](const CheckGroup& g) { return g.name == name; });
    if (!known) throw UsageError("unknown check group '" + name + "'");
  }
  if (config.fp_grid < 16) throw UsageError("fp-grid must be at least 16");
  ValidationSettings settings;
  settings.params = config.params;
  settings.sigma = config.resolved_sigma();
  settings.d = config.resolved_d();
  if (config.x0 != 0.0) settings.x0 = config.x0;
  settings.fp_grid = config.fp_grid;

  bool all_passed = true;
  out << "check,error,tolerance,status\n";
  for (const auto& group : groups) {
    if (std::find(config.skip.begin(), config.skip.end(), group.name) != config.skip.end()) continue;
    for (const CheckResult& r : group.run(settings)) {
      out << r.name << ',' << format_double(r.error) << ',' << format_double(r.tolerance) << ','
          << (r.passed ? "PASS" : "FAIL") << '\n';
      if (!r.passed) {
        all_passed = false;
        if (!r.note.empty()) err << r.name << ": " << r.note << '\n';
      }
    }
    out.flush();
  }
  return all_passed ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free Brownian particle in an Ohmic high-temperature bath: figure data, scans and validation", "qbm"};
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::string config_path;
  std::string quantity;
  std::vector<std::string> skip;
  std::string fp_grid;

  const auto add_scenario = [&](CLI::App* sub) {
    for (const auto& f : kScenarioFlags) sub->add_option(std::string("--") + f.key, flags[f.key], f.help);
    sub->add_option("--config", config_path, "key = value file; flags override it");
    return sub;
  };
  CLI::App* fig1 = add_scenario(app.add_subcommand("fig1", "interference exponent curves, scaled by lambda^2/d^2"));
  CLI::App* fig2 = add_scenario(app.add_subcommand("fig2", "single-packet purity at short times"));
  CLI::App* scan = add_scenario(app.add_subcommand("scan", "tabulate one quantity over the time grid"));
  scan->add_option("quantity", quantity, "moments|second-moments|interference|attenuation|purity|witness")
      ->required();
  CLI::App* validate = add_scenario(app.add_subcommand("validate", "run the cross-validation checks"));
  validate->add_option("--skip", skip, "check groups to leave out (comma-separated or repeated)")->delimiter(',');
  validate->add_option("--fp-grid", fp_grid, "points per axis of the Fokker-Planck grid");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("qbm");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    ScenarioConfig config;
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw UsageError("cannot read config file '" + config_path + "'");
      for (const auto& [key, value] : parse_config_text(file)) apply_setting(config, key, value);
    }
    for (const auto& f : kScenarioFlags) {
      if (active->count(std::string("--") + f.key) > 0) apply_setting(config, f.key, flags[f.key]);
    }
    if (active == validate) {
      if (validate->count("--fp-grid") > 0) apply_setting(config, "fp-grid", fp_grid);
      if (validate->count("--skip") > 0) config.skip = skip;
    }
    config.params.validate();

    if (active == fig1) {
      emit(config, fig1_table(config), out);
    } else if (active == fig2) {
      emit(config, fig2_table(config), out);
    } else if (active == scan) {
      emit(config, scan_table(config, quantity), out);
    } else {
      return run_validate(config, out, err);
    }
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qbm::cli
