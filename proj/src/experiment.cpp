#include "latorbit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "latorbit/constants.hpp"

namespace latorbit {

namespace {

struct ChunkAcc {
  // counts[region * buckets + b]: orbit points entering at T-grid bucket b
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

// region-major (region, bucket) counts accumulated over one pass at max T.
struct PassResult {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  bool capped = false;
};

PassResult single_pass(const ExperimentConfig& cfg) {
  const int nt = static_cast<int>(cfg.T_grid.size());
  const int nr = static_cast<int>(cfg.regions.size());
  const RealMatrix v0 = cfg.v0;
  const int coord_count = cfg.ambient_dim() * cfg.frame_len();

  std::vector<long double> t_sq(nt);
  for (int i = 0; i < nt; ++i)
    t_sq[i] = static_cast<long double>(cfg.T_grid[i]) * cfg.T_grid[i];

  BallQuery q;
  q.group = cfg.group;
  q.n = cfg.ambient_dim();
  q.T = cfg.T_grid.back();
  q.cap = cfg.cap;

  PassResult out;
  std::vector<ChunkAcc> states;
  try {
    enumerate_chunked_into(q, cfg.threads, states, [&](ChunkAcc& acc, const IntMatrix& g) {
      if (acc.counts.empty()) acc.counts.assign(static_cast<std::size_t>(nr) * nt, 0);
      ++acc.total;
      const long double nrm = static_cast<long double>(g.sq_norm());
      int b = 0;
      while (b < nt && !(nrm < t_sq[b])) ++b;
      double w[64];
      detail::orbit_coords(g, v0, w);
      for (int r = 0; r < nr; ++r)
        if (cfg.regions[r].contains(w, coord_count)) ++acc.counts[r * nt + b];
    });
  } catch (const CapExceededError&) {
    out.capped = true;
  }
  out.counts.assign(static_cast<std::size_t>(nr) * nt, 0);
  for (const auto& acc : states) {
    out.total += acc.total;
    for (std::size_t i = 0; i < acc.counts.size(); ++i) out.counts[i] += acc.counts[i];
  }
  // Entry buckets to cumulative counts per T.
  for (int r = 0; r < nr; ++r)
    for (int b = 1; b < nt; ++b) out.counts[r * nt + b] += out.counts[r * nt + b - 1];
  return out;
}

void attach_density(const ExperimentConfig& cfg, ExperimentReport& rep) {
  rep.density_height = cfg.density_height;
  rep.density_tol = cfg.density_tol;
  rep.density_witness = rational_in_span(Frame(cfg.v0), cfg.density_height, cfg.density_tol);
  if (rep.density_witness)
    rep.flag = "orbit not dense; predictions inapplicable";
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.group == Group::SL) {
    if (cfg.n < 2) throw ConfigError("experiment: SL needs n >= 2");
    if (cfg.l < 1 || cfg.l > cfg.n - 1) throw ConfigError("experiment: need 1 <= l <= n-1");
  } else if (cfg.n < 1) {
    throw ConfigError("experiment: Sp needs rank n >= 1");
  }
  if (cfg.v0.rows() != cfg.ambient_dim() || cfg.v0.cols() != cfg.frame_len())
    throw ConfigError("experiment: v0 must be ambient_dim x frame_len");
  frame_volume(Frame(cfg.v0));  // rejects degenerate v0
  if (cfg.T_grid.empty()) throw ConfigError("experiment: empty T grid");
  for (std::size_t i = 0; i + 1 < cfg.T_grid.size(); ++i)
    if (!(cfg.T_grid[i] < cfg.T_grid[i + 1]))
      throw ConfigError("experiment: T grid must be strictly increasing");
  if (!(cfg.T_grid.front() > 0)) throw ConfigError("experiment: T values must be positive");
  if (cfg.regions.empty()) throw ConfigError("experiment: no regions");
  if (cfg.covolume && !(*cfg.covolume > 0)) throw ConfigError("experiment: covolume must be > 0");
}

ExperimentReport run_sl_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.seed = cfg.seed;
  attach_density(cfg, rep);

  const double covol = cfg.covolume ? *cfg.covolume : covolume_slnz(cfg.n);
  const Frame v0(cfg.v0);
  const int nt = static_cast<int>(cfg.T_grid.size());

  const PassResult pass = single_pass(cfg);
  rep.matrices = pass.total;
  if (pass.capped) {
    rep.valid = false;
    rep.flag = rep.flag.empty() ? "enumeration cap exceeded; partial results"
                                : rep.flag + "; enumeration cap exceeded";
  }

  for (int r = 0; r < static_cast<int>(cfg.regions.size()); ++r) {
    const IntegralResult integral = target_integral(cfg.regions[r], cfg.n, cfg.l);
    const double vol0 = frame_volume(v0);
    const double lead = a_nl(cfg.n, cfg.l) * std::pow(vol0, 1.0 - cfg.n) / covol * integral.value;
    for (int b = 0; b < nt; ++b) {
      ReportRow row;
      row.region_id = r;
      row.T = cfg.T_grid[b];
      row.empirical = pass.counts[r * nt + b];
      row.predicted = lead * std::pow(row.T, cfg.growth_exponent());
      row.ratio = row.predicted > 0 ? static_cast<double>(row.empirical) / row.predicted : 0.0;
      rep.rows.push_back(row);
    }
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

ExperimentReport run_sp_experiment(const ExperimentConfig& cfg) {
  if (cfg.group != Group::Sp) throw ConfigError("run_sp_experiment: group must be Sp");
  validate(cfg);
  if (!is_isotropic(Frame(cfg.v0)))
    throw std::invalid_argument("run_sp_experiment: v0 must be an isotropic frame");
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.seed = cfg.seed;
  attach_density(cfg, rep);

  const int nt = static_cast<int>(cfg.T_grid.size());
  const PassResult pass = single_pass(cfg);
  rep.matrices = pass.total;
  if (pass.capped) {
    rep.valid = false;
    rep.flag = rep.flag.empty() ? "enumeration cap exceeded; partial results"
                                : rep.flag + "; enumeration cap exceeded";
  }

  const double expo = cfg.growth_exponent();
  for (int r = 0; r < static_cast<int>(cfg.regions.size()); ++r) {
    double prev = 0.0;
    for (int b = 0; b < nt; ++b) {
      ReportRow row;
      row.region_id = r;
      row.T = cfg.T_grid[b];
      row.empirical = pass.counts[r * nt + b];
      row.predicted = static_cast<double>(row.empirical) / std::pow(row.T, expo);
      row.ratio = (b == 0 || prev <= 0) ? 1.0 : row.predicted / prev;
      prev = row.predicted;
      rep.rows.push_back(row);
    }
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

OrbitDumpResult orbit_dump(const ExperimentConfig& cfg, double T, std::ostream& out) {
  ExperimentConfig c = cfg;
  c.T_grid = {T};
  if (c.regions.empty()) c.regions.push_back(Region::annulus(0, 1));  // unused by the dump
  validate(c);

  BallQuery q;
  q.group = cfg.group;
  q.n = c.ambient_dim();
  q.T = T;
  q.cap = cfg.cap;

  const int coord_count = c.ambient_dim() * c.frame_len();
  out << "coord_1";
  for (int i = 1; i < coord_count; ++i) out << ",coord_" << i + 1;
  out << "\n";

  OrbitDumpResult res;
  try {
    enumerate_ball(q, [&](const IntMatrix& g) {
      double w[64];
      detail::orbit_coords(g, cfg.v0, w);
      for (int i = 0; i < coord_count; ++i) {
        if (i) out << ",";
        out << format_double(w[i]);
      }
      out << "\n";
      ++res.points;
    });
  } catch (const CapExceededError&) {
    res.truncated = true;
  }
  return res;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string report_csv(const ExperimentReport& rep, const ExperimentConfig& cfg) {
  std::ostringstream ss;
  ss << "# latorbit " << LATORBIT_VERSION << "\n";
  ss << "# group=" << (cfg.group == Group::Sp ? "sp" : "sl") << " n=" << cfg.n;
  if (cfg.group == Group::SL) ss << " l=" << cfg.l;
  ss << "\n# v0=";
  const RealVector flat = Frame(cfg.v0).flat();
  for (int i = 0; i < flat.size(); ++i) ss << (i ? "," : "") << format_double(flat(i));
  ss << "\n# T_grid=";
  for (std::size_t i = 0; i < cfg.T_grid.size(); ++i)
    ss << (i ? "," : "") << format_double(cfg.T_grid[i]);
  ss << "\n# regions=" << cfg.regions.size() << "\n";
  ss << "# seed=" << rep.seed << "\n";
  ss << "# matrices=" << rep.matrices << "\n";
  ss << "# density_height=" << rep.density_height << " density_tol="
     << format_double(rep.density_tol) << "\n";
  if (rep.density_witness) {
    ss << "# density_witness=";
    for (std::size_t i = 0; i < rep.density_witness->size(); ++i)
      ss << (i ? "," : "") << (*rep.density_witness)[i];
    ss << "\n";
  } else {
    ss << "# density_witness=none (up to the stated height)\n";
  }
  if (!rep.flag.empty()) ss << "# flag=" << rep.flag << "\n";
  if (!rep.valid) ss << "# INVALID: partial results\n";
  if (cfg.group == Group::Sp)
    ss << "# sp semantics: predicted = N_T/T^exponent estimate, ratio = stability vs previous T\n";
  ss << "region_id,T,empirical,predicted,ratio\n";
  for (const auto& row : rep.rows) {
    ss << row.region_id << "," << format_double(row.T) << "," << row.empirical << ","
       << format_double(row.predicted) << "," << format_double(row.ratio) << "\n";
  }
  return ss.str();
}

}  // namespace latorbit
