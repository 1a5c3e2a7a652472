#include "latorbit/region.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latorbit {

namespace {

void check_box(const Box& b) {
  if (b.lo.empty() || b.lo.size() != b.hi.size())
    throw std::invalid_argument("Region: box needs matching lo/hi coordinates");
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    if (!(b.lo[i] <= b.hi[i]) || !std::isfinite(b.lo[i]) || !std::isfinite(b.hi[i]))
      throw std::invalid_argument("Region: box bounds must be finite with lo <= hi");
}

bool interiors_overlap(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i)
    if (!(a.lo[i] < b.hi[i] && b.lo[i] < a.hi[i])) return false;
  return true;
}

}  // namespace

Region Region::box(Box b) { return box_union({std::move(b)}); }

Region Region::box_union(std::vector<Box> boxes) {
  if (boxes.empty()) throw std::invalid_argument("Region: empty box union");
  for (const auto& b : boxes) check_box(b);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].lo.size() != boxes[0].lo.size())
      throw std::invalid_argument("Region: boxes must share a dimension");
    for (std::size_t j = i + 1; j < boxes.size(); ++j)
      if (interiors_overlap(boxes[i], boxes[j]))
        throw std::invalid_argument("Region: box interiors must be disjoint");
  }
  Region r;
  r.kind_ = Kind::BoxUnion;
  r.boxes_ = std::move(boxes);
  return r;
}

Region Region::annulus(double r_min, double r_max) {
  if (!(0 <= r_min && r_min <= r_max) || !std::isfinite(r_max))
    throw std::invalid_argument("Region: need 0 <= r_min <= r_max < inf");
  Region r;
  r.kind_ = Kind::Annulus;
  r.r_min_ = r_min;
  r.r_max_ = r_max;
  return r;
}

Region Region::predicate(std::function<bool(const RealVector&)> fn, Box bounds) {
  check_box(bounds);
  Region r;
  r.kind_ = Kind::Predicate;
  r.pred_ = std::move(fn);
  r.pred_bounds_ = std::move(bounds);
  return r;
}

std::optional<int> Region::coord_dim() const {
  if (kind_ == Kind::BoxUnion) return static_cast<int>(boxes_[0].lo.size());
  if (kind_ == Kind::Predicate) return static_cast<int>(pred_bounds_.lo.size());
  return std::nullopt;
}

bool Region::contains(const double* coords, int count) const {
  switch (kind_) {
    case Kind::Annulus: {
      double s = 0;
      for (int i = 0; i < count; ++i) s += coords[i] * coords[i];
      return r_min_ * r_min_ <= s && s <= r_max_ * r_max_;
    }
    case Kind::BoxUnion: {
      if (count != static_cast<int>(boxes_[0].lo.size()))
        throw std::invalid_argument("Region: coordinate count mismatch");
      for (const auto& b : boxes_) {
        bool in = true;
        for (int i = 0; i < count && in; ++i) in = b.lo[i] <= coords[i] && coords[i] <= b.hi[i];
        if (in) return true;
      }
      return false;
    }
    case Kind::Predicate: {
      RealVector x(count);
      for (int i = 0; i < count; ++i) x(i) = coords[i];
      return pred_(x);
    }
  }
  return false;
}

bool member(const Frame& v, const Region& omega) {
  const RealVector flat = v.flat();
  if (omega.kind() == Region::Kind::Annulus && v.length() != 1)
    throw std::invalid_argument("member: annulus regions apply to 1-frames");
  return omega.contains(flat.data(), static_cast<int>(flat.size()));
}

std::vector<Region> parse_regions(std::istream& in) {
  std::vector<Region> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    std::vector<double> vals;
    double x;
    while (ss >> x) vals.push_back(x);
    if (!ss.eof()) throw std::invalid_argument("region file: bad number on line " +
                                               std::to_string(lineno));
    if (kind == "annulus") {
      if (vals.size() != 2)
        throw std::invalid_argument("region file: annulus needs r_min r_max (line " +
                                    std::to_string(lineno) + ")");
      out.push_back(Region::annulus(vals[0], vals[1]));
    } else if (kind == "box") {
      if (vals.size() < 2 || vals.size() % 2 != 0)
        throw std::invalid_argument("region file: box needs lo/hi pairs (line " +
                                    std::to_string(lineno) + ")");
      Box b;
      for (std::size_t i = 0; i < vals.size(); i += 2) {
        b.lo.push_back(vals[i]);
        b.hi.push_back(vals[i + 1]);
      }
      out.push_back(Region::box(std::move(b)));
    } else {
      throw std::invalid_argument("region file: unknown kind '" + kind + "' on line " +
                                  std::to_string(lineno));
    }
  }
  return out;
}

std::vector<Region> load_region_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open region file: " + path);
  return parse_regions(in);
}

std::string region_line(const Region& r) {
  std::ostringstream ss;
  ss.precision(17);
  if (r.kind() == Region::Kind::Annulus) {
    ss << "annulus " << r.r_min() << " " << r.r_max();
  } else if (r.kind() == Region::Kind::BoxUnion) {
    for (std::size_t bi = 0; bi < r.boxes().size(); ++bi) {
      if (bi) ss << "\n";
      ss << "box";
      const auto& b = r.boxes()[bi];
      for (std::size_t i = 0; i < b.lo.size(); ++i) ss << " " << b.lo[i] << " " << b.hi[i];
    }
  } else {
    ss << "# predicate region (not serializable)";
  }
  return ss.str();
}

}  // namespace latorbit
