#include "latorbit/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "latorbit/config.hpp"
#include "latorbit/constants.hpp"
#include "latorbit/experiment.hpp"
#include "latorbit/special.hpp"
#include "latorbit/volume_lab.hpp"

namespace latorbit {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240901;

std::vector<double> parse_floats(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw ConfigError("bad float list: " + s);
  }
  if (out.empty()) throw ConfigError("empty float list");
  return out;
}

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw ConfigError("cannot open output file: " + path);
    os = &file;
  }
};

void write_header(std::ostream& os, const std::string& resolved, std::uint64_t seed) {
  os << "# latorbit " << LATORBIT_VERSION << "\n";
  os << "# config: " << resolved << "\n";
  os << "# seed: " << seed << "\n";
}

// Shared experiment flag/config plumbing for `count` and `orbit-dump`.
struct ExperimentArgs {
  std::string config_path, group = "sl", v0_str, region_path, t_grid_str, out_path;
  int n = 2, l = 1, height = 1000, threads = 0;
  double covolume = 0, T = 0, tol = 1e-9;
  std::uint64_t seed = kDefaultSeed, cap = 1'000'000'000;

  void add_common(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value config file");
    cmd->add_option("--group", group, "sl or sp")->check(CLI::IsMember({"sl", "sp"}));
    cmd->add_option("--n", n, "SL matrix size, or Sp rank");
    cmd->add_option("--l", l, "frame length (SL only)");
    cmd->add_option("--v0", v0_str, "base frame, comma floats, column-major");
    cmd->add_option("--region", region_path, "region file");
    cmd->add_option("--T-grid", t_grid_str, "comma-separated radii");
    cmd->add_option("--T", T, "single radius");
    cmd->add_option("--covolume", covolume, "covolume override");
    cmd->add_option("--height", height, "density certificate height");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--threads", threads, "worker threads (0 = cores)");
    cmd->add_option("--cap", cap, "enumeration output cap");
    cmd->add_option("--out", out_path, "output file (default stdout)");
  }

  // Config-file values fill every flag the command line left untouched.
  void apply_config(const CLI::App* cmd) {
    if (config_path.empty()) return;
    const ConfigMap m = load_config_file(config_path);
    auto get = [&](const std::string& key) -> const std::string* {
      auto it = m.find(key);
      if (it == m.end()) it = m.find("experiment." + key);
      return it == m.end() ? nullptr : &it->second;
    };
    auto unset = [&](const std::string& flag) { return cmd->count(flag) == 0; };
    if (const auto* v = get("group"); v && unset("--group")) group = *v;
    if (const auto* v = get("n"); v && unset("--n")) n = std::stoi(*v);
    if (const auto* v = get("l"); v && unset("--l")) l = std::stoi(*v);
    if (const auto* v = get("v0"); v && unset("--v0")) v0_str = *v;
    if (const auto* v = get("region"); v && unset("--region")) region_path = *v;
    if (const auto* v = get("T_grid"); v && unset("--T-grid")) t_grid_str = *v;
    if (const auto* v = get("T"); v && unset("--T")) T = std::stod(*v);
    if (const auto* v = get("covolume"); v && unset("--covolume")) covolume = std::stod(*v);
    if (const auto* v = get("height"); v && unset("--height")) height = std::stoi(*v);
    if (const auto* v = get("density_tol"); v) tol = std::stod(*v);
    if (const auto* v = get("seed"); v && unset("--seed")) seed = std::stoull(*v);
    if (const auto* v = get("threads"); v && unset("--threads")) threads = std::stoi(*v);
    if (const auto* v = get("cap"); v && unset("--cap")) cap = std::stoull(*v);
  }

  ExperimentConfig to_config() const {
    ExperimentConfig cfg;
    cfg.group = group == "sp" ? Group::Sp : Group::SL;
    cfg.n = n;
    cfg.l = l;
    if (v0_str.empty()) throw ConfigError("missing --v0");
    const std::vector<double> coords = parse_floats(v0_str);
    const int ambient = cfg.ambient_dim();
    if (coords.size() % ambient != 0)
      throw ConfigError("--v0 length must be a multiple of the ambient dimension");
    const int cols = static_cast<int>(coords.size()) / ambient;
    RealMatrix v0(ambient, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < ambient; ++i) v0(i, j) = coords[j * ambient + i];
    cfg.v0 = v0;
    if (cfg.group == Group::SL && cols != cfg.l)
      throw ConfigError("--v0 column count must equal --l");
    if (cfg.group == Group::Sp && cols != cfg.n)
      throw ConfigError("--v0 must be an n-frame for Sp(n)");
    if (!t_grid_str.empty())
      cfg.T_grid = parse_floats(t_grid_str);
    else if (T > 0)
      cfg.T_grid = {T};
    else
      throw ConfigError("need --T or --T-grid");
    if (!region_path.empty()) cfg.regions = load_region_file(region_path);
    if (covolume > 0) cfg.covolume = covolume;
    cfg.seed = seed;
    cfg.cap = cap;
    cfg.threads = threads > 0 ? threads
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    cfg.density_height = height;
    cfg.density_tol = tol;
    return cfg;
  }

  std::string resolved() const {
    std::ostringstream ss;
    ss << "group=" << group << " n=" << n << " l=" << l << " v0=" << v0_str
       << " region=" << region_path << " T_grid=" << t_grid_str << " T=" << format_double(T)
       << " covolume=" << format_double(covolume) << " height=" << height << " cap=" << cap
       << " threads=" << threads;
    return ss.str();
  }
};

int cmd_constants(int n, int l, const std::string& out_path, std::uint64_t seed) {
  Output out;
  out.open(out_path);
  const ConstantTable& t = constant_table(n, l);
  std::ostringstream cfg;
  cfg << "command=constants n=" << n << " l=" << l;
  write_header(*out.os, cfg.str(), seed);
  *out.os << "name,value\n";
  for (int k = 0; k <= n; ++k)
    *out.os << "V_" << k << "," << format_double(t.unit_ball[k]) << "\n";
  *out.os << "d_nl," << format_double(t.d) << "\n";
  *out.os << "gamma_nl," << format_double(t.gamma) << "\n";
  *out.os << "a_nl," << format_double(t.a) << "\n";
  *out.os << "c_nl," << format_double(t.c) << "\n";
  *out.os << "covolume_slnz," << format_double(t.covolume) << "\n";
  *out.os << "b_nl," << format_double(t.b) << "\n";
  return 0;
}

int cmd_count(const ExperimentArgs& args) {
  const ExperimentConfig cfg = args.to_config();
  const ExperimentReport rep = cfg.group == Group::Sp ? run_sp_experiment(cfg)
                                                      : run_sl_experiment(cfg);
  Output out;
  out.open(args.out_path);
  *out.os << report_csv(rep, cfg);
  if (!rep.flag.empty()) std::cerr << "latorbit count: " << rep.flag << "\n";
  return rep.valid ? 0 : 3;
}

int cmd_volume(int n, int l, const std::vector<double>& t_grid, double C,
               const std::string& method, std::uint64_t samples, std::uint64_t seed,
               const std::string& out_path) {
  Output out;
  out.open(out_path);
  std::ostringstream cfg;
  cfg << "command=volume n=" << n << " l=" << l << " C=" << format_double(C)
      << " method=" << method;
  write_header(*out.os, cfg.str(), seed);
  *out.os << "T,C,rho,asymptote,ratio\n";
  for (double T : t_grid) {
    BallVolumeQuery q;
    q.n = n;
    q.l = l;
    q.T = T;
    q.C = C;
    q.method = method == "montecarlo" ? VolumeMethod::MonteCarlo : VolumeMethod::Quadrature;
    q.mc_samples = samples;
    q.seed = seed;
    const VolumeResult r = rho_ball(q);
    const double asym = gamma_nl(n, l) * std::pow(T, (n - 1) * (n - l));
    *out.os << format_double(T) << "," << format_double(C) << "," << format_double(r.value)
            << "," << format_double(asym) << ","
            << format_double(asym > 0 ? r.value / asym : 0.0) << "\n";
  }
  return 0;
}

int cmd_orbit_dump(const ExperimentArgs& args) {
  ExperimentConfig cfg = args.to_config();
  Output out;
  out.open(args.out_path);
  write_header(*out.os, "command=orbit-dump " + args.resolved(), args.seed);
  const OrbitDumpResult res = orbit_dump(cfg, cfg.T_grid.back(), *out.os);
  if (res.truncated) {
    *out.os << "# TRUNCATED: enumeration cap exceeded\n";
    std::cerr << "latorbit orbit-dump: cap exceeded after " << res.points << " points\n";
    return 3;
  }
  return 0;
}

int cmd_density_check(const ExperimentArgs& args) {
  if (args.v0_str.empty()) throw ConfigError("missing --v0");
  const std::vector<double> coords = parse_floats(args.v0_str);
  const int ambient = args.group == "sp" ? 2 * args.n : args.n;
  if (coords.size() % ambient != 0)
    throw ConfigError("--v0 length must be a multiple of the ambient dimension");
  const int cols = static_cast<int>(coords.size()) / ambient;
  RealMatrix v0(ambient, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < ambient; ++i) v0(i, j) = coords[j * ambient + i];

  Output out;
  out.open(args.out_path);
  write_header(*out.os, "command=density-check " + args.resolved(), args.seed);
  const auto witness = rational_in_span(Frame(v0), args.height, args.tol);
  *out.os << "status,height,tol,witness\n";
  if (witness) {
    *out.os << "found," << args.height << "," << format_double(args.tol) << ",\"";
    for (std::size_t i = 0; i < witness->size(); ++i)
      *out.os << (i ? " " : "") << (*witness)[i];
    *out.os << "\"\n";
  } else {
    *out.os << "none-found," << args.height << "," << format_double(args.tol) << ",\n";
  }
  return 0;
}

int cmd_enum(const ExperimentArgs& args) {
  BallQuery q;
  q.group = args.group == "sp" ? Group::Sp : Group::SL;
  q.n = q.group == Group::Sp ? 2 * args.n : args.n;
  q.T = args.T;
  q.cap = args.cap;
  Output out;
  out.open(args.out_path);
  write_header(*out.os, "command=enum " + args.resolved(), args.seed);
  try {
    enumerate_ball(q, [&](const IntMatrix& m) {
      for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
          *out.os << m.at(i, j) << ((i == m.n - 1 && j == m.n - 1) ? "\n" : " ");
    });
  } catch (const CapExceededError& e) {
    *out.os << "# TRUNCATED: " << e.what() << "\n";
    std::cerr << "latorbit enum: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"lattice orbit counting on frame spaces"};
  app.require_subcommand(1);

  // constants
  auto* constants = app.add_subcommand("constants", "closed-form constant table");
  int cn = 0, cl = 0;
  std::string c_out;
  std::uint64_t c_seed = kDefaultSeed;
  constants->add_option("--n", cn, "dimension")->required();
  constants->add_option("--l", cl, "frame length")->required();
  constants->add_option("--out", c_out, "output file");
  constants->add_option("--seed", c_seed, "RNG seed (echoed)");

  // count
  auto* count = app.add_subcommand("count", "empirical vs predicted orbit counts");
  ExperimentArgs count_args;
  count_args.add_common(count);

  // volume
  auto* volume = app.add_subcommand("volume", "triangular-group ball volume sweep");
  int vn = 0, vl = 0;
  double vC = -std::numeric_limits<double>::infinity();
  double vT = 0;
  std::string v_tgrid, v_out, v_method = "quadrature";
  std::uint64_t v_seed = kDefaultSeed, v_samples = 1000000;
  volume->add_option("--n", vn, "dimension")->required();
  volume->add_option("--l", vl, "frame length")->required();
  volume->add_option("--T", vT, "single radius");
  volume->add_option("--T-grid", v_tgrid, "comma-separated radii");
  volume->add_option("--C", vC, "floor on the free diagonal coordinates");
  volume->add_option("--method", v_method, "quadrature or montecarlo")
      ->check(CLI::IsMember({"quadrature", "montecarlo"}));
  volume->add_option("--samples", v_samples, "Monte Carlo samples");
  volume->add_option("--seed", v_seed, "RNG seed");
  volume->add_option("--out", v_out, "output file");

  // orbit-dump
  auto* dump = app.add_subcommand("orbit-dump", "orbit scatter data for plotting");
  ExperimentArgs dump_args;
  dump_args.add_common(dump);

  // density-check
  auto* density = app.add_subcommand("density-check", "rational-vector-in-span certificate");
  ExperimentArgs density_args;
  density_args.add_common(density);

  // enum
  auto* enum_cmd = app.add_subcommand("enum", "raw lattice-ball dump");
  ExperimentArgs enum_args;
  enum_args.add_common(enum_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (constants->parsed()) return cmd_constants(cn, cl, c_out, c_seed);
    if (count->parsed()) {
      count_args.apply_config(count);
      return cmd_count(count_args);
    }
    if (volume->parsed()) {
      std::vector<double> grid;
      if (!v_tgrid.empty())
        grid = parse_floats(v_tgrid);
      else if (vT > 0)
        grid = {vT};
      else
        throw ConfigError("volume: need --T or --T-grid");
      return cmd_volume(vn, vl, grid, vC, v_method, v_samples, v_seed, v_out);
    }
    if (dump->parsed()) {
      dump_args.apply_config(dump);
      return cmd_orbit_dump(dump_args);
    }
    if (density->parsed()) {
      density_args.apply_config(density);
      return cmd_density_check(density_args);
    }
    if (enum_cmd->parsed()) {
      enum_args.apply_config(enum_cmd);
      return cmd_enum(enum_args);
    }
  } catch (const CapExceededError& e) {
    std::cerr << "latorbit: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "latorbit: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "latorbit: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "latorbit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "latorbit: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace latorbit
