#pragma once

// Relatively compact test regions in frame coordinates. Boxes are closed and
// live in R^{n*l} under the column-major flattening of the frame; annuli are
// closed shells in |v| for 1-frames. The boundary convention cannot move the
// counting asymptotics, whose hypotheses put zero measure on region
// boundaries.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latorbit/geometry.hpp"

namespace latorbit {

struct Box {
  std::vector<double> lo, hi;
};

class Region {
 public:
  enum class Kind { BoxUnion, Annulus, Predicate };

  static Region box(Box b);
  static Region box_union(std::vector<Box> boxes);  // pairwise disjoint interiors
  static Region annulus(double r_min, double r_max);
  // Test-only membership closure; `bounds` drives Monte Carlo integration.
  static Region predicate(std::function<bool(const RealVector&)> fn, Box bounds);

  Kind kind() const { return kind_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  const Box& predicate_bounds() const { return pred_bounds_; }
  const std::function<bool(const RealVector&)>& predicate_fn() const { return pred_; }

  // Coordinate count for box/predicate kinds; nullopt for annuli.
  std::optional<int> coord_dim() const;

  bool contains(const double* coords, int count) const;

 private:
  Kind kind_ = Kind::Annulus;
  std::vector<Box> boxes_;
  double r_min_ = 0, r_max_ = 0;
  std::function<bool(const RealVector&)> pred_;
  Box pred_bounds_;
};

bool member(const Frame& v, const Region& omega);

// One region per line: `box lo_1 hi_1 ... lo_k hi_k` or `annulus r_min r_max`.
// Blank lines and `#` comments are skipped.
std::vector<Region> parse_regions(std::istream& in);
std::vector<Region> load_region_file(const std::string& path);
std::string region_line(const Region& r);

}  // namespace latorbit
