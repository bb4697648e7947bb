#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gdl/block.hpp"
#include "gdl/errors.hpp"
#include "gdl/fem.hpp"
#include "gdl/rod.hpp"
#include "json.hpp"
#include "verify.hpp"

namespace gdl::cli {

namespace {

using nlohmann::json;

template <class T>
void read_key(const json& obj, const char* key, T& target, std::vector<std::string>& seen) {
  seen.emplace_back(key);
  if (!obj.contains(key)) return;
  try {
    target = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config key '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& obj, const std::vector<std::string>& seen, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      throw UsageError("unknown config key '" + where + key + "'");
    }
  }
}

const json& section(const json& root, const char* name) {
  static const json empty = json::object();
  if (!root.contains(name)) return empty;
  const auto& s = root.at(name);
  if (!s.is_object()) throw UsageError(std::string("config key '") + name + "' must be an object");
  return s;
}

// Station "phase:value" for the block problem.
std::pair<BlockPhase, double> parse_block_station(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("block station '" + text + "' is not of the form phase:value");
  try {
    std::size_t used = 0;
    const std::string number = text.substr(colon + 1);
    const double value = std::stod(number, &used);
    if (used != number.size()) throw std::invalid_argument("trailing characters");
    return {parse_block_phase(text.substr(0, colon)), value};
  } catch (const std::exception& e) {
    throw UsageError("block station '" + text + "': " + e.what());
  }
}

std::string label_of(const std::string& prefix, double value) {
  std::string s = prefix + format_number(value);
  for (char& ch : s) {
    if (ch == '.' || ch == '-' || ch == '+') ch = ch == '.' ? 'p' : 'm';
  }
  return s;
}

Table profile_table(const std::vector<Column>& columns, const std::vector<const FieldProfile*>& fields) {
  Table t;
  t.columns = columns;
  const auto& x = fields.front()->x;
  for (const auto* f : fields) {
    if (f->x != x) throw InconsistencyError("profile fields are not sampled on a shared grid");
  }
  return t;
}

void emit(const Table& table, const RunConfig& config) {
  if (config.out.empty()) {
    write_table(std::cout, table, config.format);
    return;
  }
  std::ofstream os(config.out, std::ios::binary);
  if (!os) throw UsageError("cannot write '" + config.out + "'");
  write_table(os, table, config.format);
}

void emit_stations(const std::vector<Station>& stations, const RunConfig& config) {
  const char* ext = config.format == Format::Csv ? ".csv" : ".json";
  if (config.out.empty()) {
    if (config.format == Format::Json) {
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      for (const auto& s : stations) {
        auto j = to_json(s.table);
        j["station"] = s.label;
        all.push_back(std::move(j));
      }
      std::cout << all.dump(2) << '\n';
      return;
    }
    for (std::size_t k = 0; k < stations.size(); ++k) {
      if (k > 0) std::cout << '\n';
      write_csv(std::cout, stations[k].table);
    }
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  if (ec) throw UsageError("cannot create directory '" + config.out + "': " + ec.message());
  for (std::size_t k = 0; k < stations.size(); ++k) {
    char index[16];
    std::snprintf(index, sizeof index, "%02zu_", k);
    const auto path = std::filesystem::path(config.out) / (index + stations[k].label + ext);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot write '" + path.string() + "'");
    write_table(os, stations[k].table, config.format);
  }
}

}  // namespace

MaterialSpec RodParams::spec() const {
  try {
    return MaterialSpec::rod(E, L, sigma_c, lambda, beta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

MaterialSpec BlockParams::spec() const {
  const auto s = MaterialSpec::block(L, k, G_c, G_0, l_c);
  try {
    s.validate_block();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return s;
}

void RunConfig::validate() const {
  if (samples < 2) throw UsageError("--samples must be at least 2");
  if (fem.elements < 2) throw UsageError("--elements must be at least 2");
  if (fem.steps < 1) throw UsageError("--steps must be at least 1");
  if (fem.u_max < 0.0) throw UsageError("--u-max must be positive");
  try {
    parse_variant(rod.variant);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (rod.variant == "block") throw UsageError("--variant must be i, ii or iii");
  if (!out.empty()) {
    const auto parent = std::filesystem::path(out).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
      throw UsageError("output directory '" + parent.string() + "' does not exist");
    }
  }
}

void apply_json(RunConfig& c, const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw UsageError("config must be a JSON object");
  std::vector<std::string> seen{"rod", "block", "fem"};
  read_key(root, "samples", c.samples, seen);
  read_key(root, "out", c.out, seen);
  std::string format = c.format == Format::Csv ? "csv" : "json";
  read_key(root, "format", format, seen);
  try {
    c.format = parse_format(format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  read_key(root, "phase4_quoted", c.phase4_quoted, seen);
  read_key(root, "skip_fem", c.skip_fem, seen);
  reject_unknown(root, seen, "");

  const auto& rod = section(root, "rod");
  seen.clear();
  read_key(rod, "variant", c.rod.variant, seen);
  read_key(rod, "lambda", c.rod.lambda, seen);
  read_key(rod, "beta", c.rod.beta, seen);
  read_key(rod, "E", c.rod.E, seen);
  read_key(rod, "L", c.rod.L, seen);
  read_key(rod, "sigma_c", c.rod.sigma_c, seen);
  read_key(rod, "stations", c.rod.stations, seen);
  reject_unknown(rod, seen, "rod.");

  const auto& block = section(root, "block");
  seen.clear();
  read_key(block, "L", c.block.L, seen);
  read_key(block, "k", c.block.k, seen);
  read_key(block, "Gc", c.block.G_c, seen);
  read_key(block, "G0", c.block.G_0, seen);
  read_key(block, "lc", c.block.l_c, seen);
  read_key(block, "stations", c.block.stations, seen);
  reject_unknown(block, seen, "block.");

  const auto& fem = section(root, "fem");
  seen.clear();
  read_key(fem, "elements", c.fem.elements, seen);
  read_key(fem, "steps", c.fem.steps, seen);
  read_key(fem, "u_max", c.fem.u_max, seen);
  read_key(fem, "mesh_power", c.fem.mesh_power, seen);
  reject_unknown(fem, seen, "fem.");
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << is.rdbuf();
  RunConfig c;
  apply_json(c, buf.str());
  return c;
}

Table cmd_rod_curve(const RunConfig& config) {
  const auto spec = config.rod.spec();
  const auto variant = parse_variant(config.rod.variant);
  std::vector<RodState> curve;
  try {
    curve = equilibrium_curve(spec, variant, config.samples);
  } catch (const UnsupportedRegime& e) {
    throw UsageError(e.what());
  }
  const double u_ref = spec.sigma_c * spec.L / spec.E;
  Table t;
  t.columns = {{"d_m", "1"}, {"sigma", "sigma_c"}, {"u_star", "sigma_c L/E"}, {"w", "sigma_c L/E"}};
  for (const auto& s : curve) t.add_row({s.d_m, s.sigma / spec.sigma_c, s.u_star / u_ref, s.w / u_ref});
  return t;
}

std::vector<Station> cmd_rod_profile(const RunConfig& config) {
  const auto spec = config.rod.spec();
  const auto variant = parse_variant(config.rod.variant);
  if (spec.l_c > spec.L) throw UsageError("beta > 1: the fully developed band exceeds the half bar");
  const double y_ref = spec.sigma_c * spec.sigma_c / spec.E;
  std::vector<Station> out;
  for (double d_m : config.rod.stations) {
    if (!(d_m >= 0.0 && d_m < 1.0)) throw UsageError("rod station d_m = " + format_number(d_m) + " is outside [0, 1)");
    const auto d = mirror_profile(damage_profile(spec, d_m, config.samples));
    const auto y = mirror_profile(driving_force_profile(spec, variant, d_m, config.samples));
    const auto yc = mirror_profile(threshold_profile(spec, variant, d_m, config.samples));
    const auto g = mirror_profile(gamma2_profile(spec, variant, d_m, config.samples));
    const double sigma = stress_of_dm(spec, variant, d_m);
    Table t = profile_table({{"x", "L"},
                             {"traction", "sigma_c"},
                             {"Y", "sigma_c^2/E"},
                             {"Yc", "sigma_c^2/E"},
                             {"gamma2", "sigma_c^2 L/E"},
                             {"d", "1"}},
                            {&d, &y, &yc, &g});
    for (std::size_t i = 0; i < d.size(); ++i) {
      t.add_row({d.x[i] / spec.L, sigma / spec.sigma_c, y.values[i] / y_ref, yc.values[i] / y_ref,
                 g.values[i] / (y_ref * spec.L), d.values[i]});
    }
    out.push_back({label_of("dm_", d_m), std::move(t)});
  }
  return out;
}

Table cmd_block_curve(const RunConfig& config) {
  const auto spec = config.block.spec();
  BlockCurveOptions opt;
  opt.n_points_per_phase = config.samples;
  const auto curve = equilibrium_curve_block(spec, opt);
  Table t;
  t.columns = {{"phase", "-"}, {"l_m_or_c", "mm"}, {"delta", "mm"}, {"P", "N"}};
  for (const auto& s : curve) {
    const double driving = s.phase == BlockPhase::Propagation ? s.c : s.l_m;
    t.add_row({to_string(s.phase), driving, s.delta, s.P});
  }
  return t;
}

std::vector<Station> cmd_block_profile(const RunConfig& config) {
  const auto spec = config.block.spec();
  std::vector<Station> out;
  for (const auto& text : config.block.stations) {
    const auto [phase, value] = parse_block_station(text);
    BlockState state;
    try {
      state = block_state(spec, phase, value);
    } catch (const std::exception& e) {
      throw UsageError("block station '" + text + "': " + e.what());
    }
    const auto d = block_damage_profile(spec, state, config.samples);
    const auto tr = traction_profile(spec, state, config.samples);
    const auto y = driving_force_profile(spec, state, config.samples);
    const auto yc = threshold_profile(spec, state, config.samples);
    const auto g = gamma2_profile_block(spec, state, config.samples);
    Table t = profile_table(
        {{"x", "mm"}, {"traction", "N/mm^2"}, {"Y", "N/mm"}, {"Yc", "N/mm"}, {"gamma2", "N"}, {"d", "1"}},
        {&d, &tr, &y, &yc, &g});
    for (std::size_t i = 0; i < d.size(); ++i) {
      t.add_row({d.x[i], tr.values[i], y.values[i], yc.values[i], g.values[i], d.values[i]});
    }
    out.push_back({label_of(to_string(phase) + "_", value), std::move(t)});
  }
  return out;
}

Table cmd_fem_run(const RunConfig& config) {
  const auto spec = config.rod.spec();
  fem::FemModel model;
  model.spec = spec;
  model.variant = parse_variant(config.rod.variant);
  model.mesh = fem::Mesh1D::centred(spec.L, config.fem.elements, config.fem.mesh_power, true);
  const double u_ref = spec.sigma_c * spec.L / spec.E;
  const double u_max = config.fem.u_max > 0.0 ? config.fem.u_max : spec.G_c / spec.sigma_c + 0.01 * u_ref;
  const auto path = fem::run_load_path(model, fem::uniform_schedule(u_max, config.fem.steps));
  const double e_ref = spec.sigma_c * spec.sigma_c * spec.L / spec.E;
  Table t;
  t.columns = {{"u_star", "sigma_c L/E"},    {"sigma", "sigma_c"},       {"stored", "sigma_c^2 L/E"},
               {"dissipated", "sigma_c^2 L/E"}, {"work", "sigma_c^2 L/E"}, {"d_max", "1"},
               {"band_half_width", "L"},       {"iterations", "1"}};
  for (const auto& s : path.steps) {
    t.add_row({s.u_star / u_ref, s.sigma / spec.sigma_c, s.stored / e_ref, s.dissipated / e_ref, s.work / e_ref,
               s.d_max, s.band_half_width / spec.L, static_cast<double>(s.staggered_iterations)});
  }
  return t;
}

namespace {

// Flag values given on the command line; they override the config file.
struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> samples;
  std::optional<std::string> variant;
  std::optional<double> lambda, beta, E, L, sigma_c;
  std::optional<double> block_L, k, G_c, G_0, l_c;
  std::optional<int> elements, steps;
  std::optional<double> u_max;
  std::vector<std::string> stations;
  bool phase4_quoted = false;
  bool skip_fem = false;

  RunConfig resolve(bool block_stations) const {
    RunConfig c = config ? load_config(*config) : RunConfig{};
    if (out) c.out = *out;
    if (format) {
      try {
        c.format = parse_format(*format);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    if (samples) c.samples = *samples;
    if (variant) c.rod.variant = *variant;
    if (lambda) c.rod.lambda = *lambda;
    if (beta) c.rod.beta = *beta;
    if (E) c.rod.E = *E;
    if (L) c.rod.L = *L;
    if (sigma_c) c.rod.sigma_c = *sigma_c;
    if (block_L) c.block.L = *block_L;
    if (k) c.block.k = *k;
    if (G_c) c.block.G_c = *G_c;
    if (G_0) c.block.G_0 = *G_0;
    if (l_c) c.block.l_c = *l_c;
    if (elements) c.fem.elements = *elements;
    if (steps) c.fem.steps = *steps;
    if (u_max) c.fem.u_max = *u_max;
    if (!stations.empty()) {
      if (block_stations) {
        c.block.stations = stations;
      } else {
        c.rod.stations.clear();
        for (const auto& s : stations) {
          try {
            c.rod.stations.push_back(std::stod(s));
          } catch (const std::exception&) {
            throw UsageError("rod station '" + s + "' is not a number");
          }
        }
      }
    }
    if (phase4_quoted) c.phase4_quoted = true;
    if (skip_fem) c.skip_fem = true;
    c.validate();
    return c;
  }
};

template <class T>
void optional_flag(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

void common_flags(CLI::App* app, Overrides& o) {
  optional_flag(app, "--config", o.config, "JSON config file; flags override its values");
  optional_flag(app, "--out", o.out, "output file (directory for profiles); stdout if omitted");
  optional_flag(app, "--format", o.format, "csv or json");
  optional_flag(app, "--samples", o.samples, "sampling count (>= 2)");
}

void rod_flags(CLI::App* app, Overrides& o, bool with_variant) {
  if (with_variant) optional_flag(app, "--variant", o.variant, "constitutive case: i, ii or iii");
  optional_flag(app, "--lambda", o.lambda, "l_c / l_coh");
  optional_flag(app, "--beta", o.beta, "l_c / L");
  optional_flag(app, "--E", o.E, "elastic modulus");
  optional_flag(app, "--L", o.L, "half-length of the rod");
  optional_flag(app, "--sigma-c", o.sigma_c, "peak stress");
}

void block_flags(CLI::App* app, Overrides& o) {
  optional_flag(app, "--L", o.block_L, "block width [mm]");
  optional_flag(app, "--k", o.k, "interface stiffness [N/mm^3]");
  optional_flag(app, "--Gc", o.G_c, "fracture energy [N/mm]");
  optional_flag(app, "--G0", o.G_0, "initial energy threshold [N/mm]");
  optional_flag(app, "--lc", o.l_c, "characteristic length [mm]");
}

void fem_flags(CLI::App* app, Overrides& o) {
  optional_flag(app, "--elements", o.elements, "number of elements on the half bar");
  optional_flag(app, "--steps", o.steps, "number of load steps");
  optional_flag(app, "--u-max", o.u_max, "final end displacement");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Localized solutions of gradient damage models with a bounded damage gradient"};
  app.name("gdl");
  app.require_subcommand(1);
  Overrides o;

  auto* rod_curve = app.add_subcommand("rod-curve", "stress and end displacement along the localized rod branch");
  common_flags(rod_curve, o);
  rod_flags(rod_curve, o, true);

  auto* rod_profile = app.add_subcommand("rod-profile", "rod fields on [-L, L] at given maximum damage values");
  common_flags(rod_profile, o);
  rod_flags(rod_profile, o, true);
  rod_profile->add_option("--stations", o.stations, "d_m values")->delimiter(',');

  auto* block_curve = app.add_subcommand("block-curve", "rigid block response through the four phases");
  common_flags(block_curve, o);
  block_flags(block_curve, o);

  auto* block_profile = app.add_subcommand("block-profile", "interface fields at given block states");
  common_flags(block_profile, o);
  block_flags(block_profile, o);
  block_profile->add_option("--stations", o.stations, "phase:value list, e.g. growth:4,propagation:1")
      ->delimiter(',');

  auto* fem_run = app.add_subcommand("fem-run", "finite-element load path of the rod");
  common_flags(fem_run, o);
  rod_flags(fem_run, o, true);
  fem_flags(fem_run, o);

  auto* verify = app.add_subcommand("verify", "closed forms against oracles and invariants; JSON report");
  common_flags(verify, o);
  rod_flags(verify, o, false);
  optional_flag(verify, "--elements", o.elements, "elements of the finite-element check");
  verify->add_flag("--phase4-quoted", o.phase4_quoted, "use the quoted propagation formula at the junction");
  verify->add_flag("--skip-fem", o.skip_fem, "omit the finite-element suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const bool block_problem = block_curve->parsed() || block_profile->parsed();
    const auto config = o.resolve(block_problem);
    if (rod_curve->parsed()) emit(cmd_rod_curve(config), config);
    if (rod_profile->parsed()) emit_stations(cmd_rod_profile(config), config);
    if (block_curve->parsed()) emit(cmd_block_curve(config), config);
    if (block_profile->parsed()) emit_stations(cmd_block_profile(config), config);
    if (fem_run->parsed()) emit(cmd_fem_run(config), config);
    if (verify->parsed()) {
      const auto report = cmd_verify(config);
      const std::string text = report.json.dump(2) + "\n";
      if (config.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream os(config.out, std::ios::binary);
        if (!os) throw UsageError("cannot write '" + config.out + "'");
        os << text;
      }
      return report.pass ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "gdl: usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gdl: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace gdl::cli
