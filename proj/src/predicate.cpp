#include "broccoli/predicate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "broccoli/errors.hpp"

namespace broccoli {
namespace {

// Grid values are rounded to 9 decimals so that, e.g., -1.2 + 15 * 0.05 is
// stored as -0.45 rather than -0.45000000000000007.
double round9(double t) { return std::round(t * 1e9) / 1e9; }

double snap(double t, const Interval& iv) {
  const double snapped = round9(t);
  if (iv.lower < snapped && snapped <= iv.upper) return snapped;
  return t;
}

std::vector<double> increment_grid(const Interval& iv, double offset, double increment) {
  std::vector<double> out;
  const bool rounded = increment >= 1e-6;
  const double m_lo = std::floor((iv.lower - offset) / increment) - 1.0;
  const double m_hi = std::floor((iv.upper - offset) / increment) + 1.0;
  for (double m = m_lo; m <= m_hi; m += 1.0) {
    const double raw = offset + m * increment;
    const double t = rounded ? round9(raw) : raw;
    if (iv.lower < t && t <= iv.upper) out.push_back(t);
  }
  return out;
}

std::vector<double> count_grid(const Interval& iv, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  const double width = iv.upper - iv.lower;
  for (std::size_t j = 1; j <= count; ++j) {
    if (j == count) {
      out.push_back(iv.upper);
    } else {
      out.push_back(snap(iv.lower + static_cast<double>(j) * width / static_cast<double>(count), iv));
    }
  }
  return out;
}

void normalise(std::vector<double>& ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

}  // namespace

PredicateSpace::PredicateSpace(StateBounds bounds, std::vector<std::vector<double>> thresholds,
                               PredicateScheme scheme)
    : bounds_(std::move(bounds)), thresholds_(std::move(thresholds)), scheme_(std::move(scheme)) {
  if (thresholds_.size() != bounds_.dimension()) {
    throw ConfigError("predicate space has " + std::to_string(thresholds_.size()) +
                      " dimensions but bounds have " + std::to_string(bounds_.dimension()));
  }
  for (std::size_t d = 0; d < thresholds_.size(); ++d) {
    const auto& ts = thresholds_[d];
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (!(bounds_[d].lower < ts[i] && ts[i] <= bounds_[d].upper)) {
        throw ConfigError("threshold " + std::to_string(ts[i]) + " of dimension " +
                          std::to_string(d) + " lies outside (lower, upper]");
      }
      if (i > 0 && !(ts[i - 1] < ts[i])) {
        throw ConfigError("thresholds of dimension " + std::to_string(d) +
                          " are not strictly increasing");
      }
    }
  }
}

std::size_t PredicateSpace::size() const {
  std::size_t n = 0;
  for (const auto& ts : thresholds_) n += ts.size();
  return n;
}

bool PredicateSpace::contains(const Predicate& p) const {
  if (p.dim >= thresholds_.size()) return false;
  const auto& ts = thresholds_[p.dim];
  return std::binary_search(ts.begin(), ts.end(), p.threshold);
}

PredicateSpace build_predicate_space(const StateBounds& bounds, const PredicateScheme& scheme) {
  const std::size_t d = bounds.dimension();
  std::vector<std::vector<double>> thresholds(d);

  if (const auto* inc = std::get_if<IncrementScheme>(&scheme)) {
    if (inc->increments.size() != d) {
      throw ConfigError("expected " + std::to_string(d) + " increments, got " +
                        std::to_string(inc->increments.size()));
    }
    if (!inc->offsets.empty() && inc->offsets.size() != d) {
      throw ConfigError("expected " + std::to_string(d) + " offsets, got " +
                        std::to_string(inc->offsets.size()));
    }
    for (std::size_t i = 0; i < d; ++i) {
      const double step = inc->increments[i];
      if (!(step > 0.0) || !std::isfinite(step)) {
        throw ConfigError("increment of dimension " + std::to_string(i) + " must be positive");
      }
      const double offset = inc->offsets.empty() ? 0.0 : inc->offsets[i];
      thresholds[i] = increment_grid(bounds[i], offset, step);
    }
  } else {
    const auto& grid = std::get<GridScheme>(scheme);
    if (grid.counts.size() != d) {
      throw ConfigError("expected " + std::to_string(d) + " grid counts, got " +
                        std::to_string(grid.counts.size()));
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (grid.counts[i] == 0) {
        throw ConfigError("grid count of dimension " + std::to_string(i) + " must be at least 1");
      }
      thresholds[i] = count_grid(bounds[i], grid.counts[i]);
    }
  }

  bool any = false;
  for (auto& ts : thresholds) {
    normalise(ts);
    any = any || !ts.empty();
  }
  if (!any) throw ConfigError("predicate grid is empty in every dimension");
  return PredicateSpace(bounds, std::move(thresholds), scheme);
}

}  // namespace broccoli
