#pragma once

// End-to-end counting experiments: one enumeration pass per run feeds every
// region and every T of the grid, predictions come from the closed-form
// constants, and reports serialize to deterministic CSV.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "latorbit/enumerate.hpp"
#include "latorbit/measures.hpp"
#include "latorbit/region.hpp"

namespace latorbit {

struct ExperimentConfig {
  Group group = Group::SL;
  int n = 2;  // SL: matrix size; Sp: rank (matrices are 2n x 2n)
  int l = 1;  // SL frame length; Sp frames always have length n
  RealMatrix v0;
  std::vector<Region> regions;
  std::vector<double> T_grid;  // strictly increasing
  std::optional<double> covolume;
  std::uint64_t seed = 20240901;
  std::uint64_t cap = 1'000'000'000;
  int threads = 1;
  int density_height = 1000;
  double density_tol = 1e-9;

  int ambient_dim() const { return group == Group::Sp ? 2 * n : n; }
  int frame_len() const { return group == Group::Sp ? n : l; }
  double growth_exponent() const {
    return group == Group::Sp ? 0.5 * n * (n + 1) : static_cast<double>((n - 1) * (n - l));
  }
};

struct ReportRow {
  int region_id = 0;
  double T = 0;
  std::uint64_t empirical = 0;
  // SL: the closed-form prediction; Sp: the empirical cell-measure estimate
  // N_T / T^{n(n+1)/2}.
  double predicted = 0;
  // SL: empirical/predicted; Sp: stability against the previous T (1 at the
  // first grid point).
  double ratio = 0;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;  // region-major, T ascending within a region
  std::optional<IntVec> density_witness;
  int density_height = 0;
  double density_tol = 0;
  bool valid = true;
  std::string flag;
  std::uint64_t matrices = 0;  // ball size at the largest T
  double wall_ms = 0;
  std::uint64_t seed = 0;
};

void validate(const ExperimentConfig& cfg);

ExperimentReport run_sl_experiment(const ExperimentConfig& cfg);

// Requires an isotropic v0; estimates the limit cell measures empirically.
ExperimentReport run_sp_experiment(const ExperimentConfig& cfg);

struct OrbitDumpResult {
  std::uint64_t points = 0;
  bool truncated = false;
};

// gamma . v0 coordinates for all |gamma| < T, one CSV row per point, stream
// order; suitable for external scatter plots.
OrbitDumpResult orbit_dump(const ExperimentConfig& cfg, double T, std::ostream& out);

// Deterministic CSV with '#' provenance header lines.
std::string report_csv(const ExperimentReport& rep, const ExperimentConfig& cfg);

std::string format_double(double v);  // {:.12g}, the one float format in all outputs

}  // namespace latorbit
