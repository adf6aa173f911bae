#pragma once

// Feature extraction on sampled curves: local and global extrema, and sign
// changes split into zero crossings (numerator vanishes) and pole crossings
// (denominator vanishes). Masked grid points are NaN and are never bridged.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eitm/core.hpp"

namespace eitm {

enum class FeatureKind { Maximum, Minimum, GlobalMaximum, GlobalMinimum, ZeroCrossing, PoleCrossing };

inline std::string_view to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::Maximum: return "max";
    case FeatureKind::Minimum: return "min";
    case FeatureKind::GlobalMaximum: return "argmax";
    case FeatureKind::GlobalMinimum: return "argmin";
    case FeatureKind::ZeroCrossing: return "zero";
    case FeatureKind::PoleCrossing: return "pole";
  }
  return "?";
}

inline std::optional<FeatureKind> feature_kind_from_string(std::string_view s) {
  for (FeatureKind k : {FeatureKind::Maximum, FeatureKind::Minimum, FeatureKind::GlobalMaximum,
                        FeatureKind::GlobalMinimum, FeatureKind::ZeroCrossing, FeatureKind::PoleCrossing}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

struct Feature {
  FeatureKind kind = FeatureKind::Maximum;
  std::size_t index = 0;  // nearest grid index
  real_t location = 0;    // refined position on the grid axis

  bool operator==(const Feature&) const = default;
};

struct FeatureSet {
  std::vector<Feature> maxima;
  std::vector<Feature> minima;
  std::vector<Feature> zero_crossings;
  std::vector<Feature> pole_crossings;
  std::optional<Feature> global_max;
  std::optional<Feature> global_min;

  std::vector<Feature> of(FeatureKind k) const {
    switch (k) {
      case FeatureKind::Maximum: return maxima;
      case FeatureKind::Minimum: return minima;
      case FeatureKind::ZeroCrossing: return zero_crossings;
      case FeatureKind::PoleCrossing: return pole_crossings;
      case FeatureKind::GlobalMaximum: return global_max ? std::vector<Feature>{*global_max} : std::vector<Feature>{};
      case FeatureKind::GlobalMinimum: return global_min ? std::vector<Feature>{*global_min} : std::vector<Feature>{};
    }
    return {};
  }

  bool empty_local() const {
    return maxima.empty() && minima.empty() && zero_crossings.empty() && pole_crossings.empty();
  }
};

struct FeatureOptions {
  // A sign change is a pole crossing when the magnitude next to it exceeds
  // blowup_ratio * median|curve| and grows toward the crossing on every side
  // that has a neighbour.
  real_t blowup_ratio = 10.0;
};

namespace detail {

inline bool valid(real_t v) { return !std::isnan(v); }

inline real_t median_magnitude(std::span<const real_t> c) {
  std::vector<real_t> mags;
  mags.reserve(c.size());
  for (real_t v : c) {
    if (valid(v) && v != 0.0) mags.push_back(std::abs(v));
  }
  if (mags.empty()) return 0.0;
  const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
  std::nth_element(mags.begin(), mid, mags.end());
  return *mid;
}

inline std::size_t nearest_index(std::span<const real_t> grid, std::size_t i, std::size_t j, real_t x) {
  return std::abs(x - grid[i]) <= std::abs(grid[j] - x) ? i : j;
}

}  // namespace detail

/// Extrema by 3-point comparison (plateaus collapse to their centre),
/// refined by a parabola through the neighbours; sign changes classified as
/// zero or pole crossings. Extrema touching a pole crossing are dropped.
inline FeatureSet detect_features(std::span<const real_t> curve, std::span<const real_t> grid,
                                  const FeatureOptions& opt = {}) {
  if (curve.size() != grid.size()) throw InvalidSpec("curve and grid lengths differ");
  FeatureSet fs;
  const std::size_t n = curve.size();
  if (n < 3) return fs;
  using detail::valid;

  // Sign changes between consecutive nonzero samples. Samples bordering a
  // pole crossing are flagged so no extremum is read across the divergence.
  std::vector<char> pole_edge(n, 0);
  const real_t median = detail::median_magnitude(curve);
  std::optional<std::size_t> prev;
  for (std::size_t k = 0; k < n; ++k) {
    const real_t v = curve[k];
    if (!valid(v) || v == 0.0) continue;
    if (prev && std::signbit(curve[*prev]) != std::signbit(v)) {
      const std::size_t i = *prev;
      const std::size_t j = k;
      bool gap = false;
      std::optional<std::size_t> first_zero, last_zero;
      for (std::size_t m = i + 1; m < j; ++m) {
        if (!valid(curve[m])) gap = true;
        else {
          if (!first_zero) first_zero = m;
          last_zero = m;
        }
      }
      Feature f;
      if (gap) {
        f.kind = FeatureKind::PoleCrossing;
        f.location = 0.5 * (grid[i] + grid[j]);
        f.index = (i + j) / 2;
      } else if (first_zero) {
        f.kind = FeatureKind::ZeroCrossing;
        f.index = (*first_zero + *last_zero) / 2;
        f.location = 0.5 * (grid[*first_zero] + grid[*last_zero]);
      } else {
        const real_t ai = std::abs(curve[i]);
        const real_t aj = std::abs(curve[j]);
        bool approaching = true;
        if (i > 0 && valid(curve[i - 1]) && std::abs(curve[i - 1]) > ai) approaching = false;
        if (j + 1 < n && valid(curve[j + 1]) && std::abs(curve[j + 1]) > aj) approaching = false;
        const bool blowup = std::max(ai, aj) > opt.blowup_ratio * median;
        if (approaching && blowup) {
          // 1/c is linear through a simple pole.
          f.kind = FeatureKind::PoleCrossing;
          const real_t ri = 1.0 / ai;
          const real_t rj = 1.0 / aj;
          f.location = grid[i] + (grid[j] - grid[i]) * ri / (ri + rj);
        } else {
          f.kind = FeatureKind::ZeroCrossing;
          f.location = grid[i] + (grid[j] - grid[i]) * ai / (ai + aj);
        }
        f.index = detail::nearest_index(grid, i, j, f.location);
      }
      if (f.kind == FeatureKind::PoleCrossing) {
        pole_edge[i] = pole_edge[j] = 1;
        fs.pole_crossings.push_back(f);
      } else {
        fs.zero_crossings.push_back(f);
      }
    }
    prev = k;
  }

  // Local extrema inside contiguous valid segments.
  std::size_t i = 0;
  while (i < n) {
    if (!valid(curve[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && valid(curve[j + 1]) && curve[j + 1] == curve[i]) ++j;
    if (i > 0 && j + 1 < n && valid(curve[i - 1]) && valid(curve[j + 1]) && !pole_edge[i - 1] &&
        !pole_edge[j + 1] && !pole_edge[i] && !pole_edge[j]) {
      const real_t left = curve[i - 1];
      const real_t right = curve[j + 1];
      const real_t v = curve[i];
      const bool is_max = left < v && right < v;
      const bool is_min = left > v && right > v;
      if (is_max || is_min) {
        Feature f;
        f.kind = is_max ? FeatureKind::Maximum : FeatureKind::Minimum;
        f.index = (i + j) / 2;
        if (i == j) {
          const real_t curvature = left - 2.0 * v + right;
          const real_t step = 0.5 * (grid[i + 1] - grid[i - 1]);
          const real_t shift = curvature != 0.0 ? 0.5 * (left - right) / curvature : 0.0;
          f.location = grid[i] + std::clamp(shift, -1.0, 1.0) * step;
        } else {
          f.location = 0.5 * (grid[i] + grid[j]);
        }
        (is_max ? fs.maxima : fs.minima).push_back(f);
      }
    }
    i = j + 1;
  }

  // Global extrema (first occurrence, moved to the centre of its plateau).
  // A constant curve has none.
  std::optional<std::size_t> imax, imin;
  for (std::size_t k = 0; k < n; ++k) {
    if (!valid(curve[k])) continue;
    if (!imax || curve[k] > curve[*imax]) imax = k;
    if (!imin || curve[k] < curve[*imin]) imin = k;
  }
  if (imax && curve[*imax] != curve[*imin]) {
    auto plateau_centre = [&](std::size_t k) {
      std::size_t e = k;
      while (e + 1 < n && curve[e + 1] == curve[k]) ++e;
      return (k + e) / 2;
    };
    const std::size_t cmax = plateau_centre(*imax);
    const std::size_t cmin = plateau_centre(*imin);
    fs.global_max = Feature{FeatureKind::GlobalMaximum, cmax, grid[cmax]};
    fs.global_min = Feature{FeatureKind::GlobalMinimum, cmin, grid[cmin]};
  }
  return fs;
}

// ---------------------------------------------------------------------------
// coincidence between features of two curves on the same grid

struct CoincidencePair {
  Feature a;
  Feature b;
  std::size_t distance = 0;  // grid cells
  bool aligned = false;
};

struct CoincidenceReport {
  std::vector<CoincidencePair> pairs;
  std::size_t unmatched_a = 0;
  std::size_t unmatched_b = 0;
  int tol_cells = 2;

  /// At least one pair, and every pair within tolerance.
  bool aligned() const {
    return !pairs.empty() && std::all_of(pairs.begin(), pairs.end(), [](const auto& p) { return p.aligned; });
  }
};

/// Greedy nearest pairing: repeatedly take the closest unused (a, b) pair.
/// Swapping a and b yields the mirrored report.
inline CoincidenceReport coincidence(std::span<const Feature> a, std::span<const Feature> b, int tol_cells) {
  struct Candidate {
    std::size_t distance, ia, ib;
  };
  std::vector<Candidate> candidates;
  for (std::size_t ia = 0; ia < a.size(); ++ia) {
    for (std::size_t ib = 0; ib < b.size(); ++ib) {
      const std::size_t d = a[ia].index > b[ib].index ? a[ia].index - b[ib].index : b[ib].index - a[ia].index;
      candidates.push_back({d, ia, ib});
    }
  }
  // Ties broken by grid position, which is symmetric in a and b.
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    const std::size_t px = std::min(a[x.ia].index, b[x.ib].index);
    const std::size_t py = std::min(a[y.ia].index, b[y.ib].index);
    if (px != py) return px < py;
    return std::max(a[x.ia].index, b[x.ib].index) < std::max(a[y.ia].index, b[y.ib].index);
  });

  CoincidenceReport report;
  report.tol_cells = tol_cells;
  std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
  for (const Candidate& c : candidates) {
    if (used_a[c.ia] || used_b[c.ib]) continue;
    used_a[c.ia] = used_b[c.ib] = 1;
    report.pairs.push_back(
        {a[c.ia], b[c.ib], c.distance, c.distance <= static_cast<std::size_t>(std::max(tol_cells, 0))});
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const auto& x, const auto& y) { return x.a.index < y.a.index; });
  report.unmatched_a = a.size() - report.pairs.size();
  report.unmatched_b = b.size() - report.pairs.size();
  return report;
}

inline CoincidenceReport coincidence(const FeatureSet& a, FeatureKind ka, const FeatureSet& b, FeatureKind kb,
                                     int tol_cells) {
  const auto fa = a.of(ka);
  const auto fb = b.of(kb);
  return coincidence(std::span<const Feature>(fa), std::span<const Feature>(fb), tol_cells);
}

/// Same-kind pairing over every local feature kind.
inline CoincidenceReport coincidence(const FeatureSet& a, const FeatureSet& b, int tol_cells) {
  CoincidenceReport all;
  all.tol_cells = tol_cells;
  for (FeatureKind k : {FeatureKind::Maximum, FeatureKind::Minimum, FeatureKind::ZeroCrossing,
                        FeatureKind::PoleCrossing}) {
    CoincidenceReport r = coincidence(a, k, b, k, tol_cells);
    all.pairs.insert(all.pairs.end(), r.pairs.begin(), r.pairs.end());
    all.unmatched_a += r.unmatched_a;
    all.unmatched_b += r.unmatched_b;
  }
  return all;
}

}  // namespace eitm
