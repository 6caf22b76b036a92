#include "minent/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minent {

namespace {

double kahan_total(const std::vector<SpectrumEntry>& entries) {
  double sum = 0.0, comp = 0.0;
  for (const auto& e : entries) {
    double term = e.value * static_cast<double>(e.multiplicity) - comp;
    double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

void require_normalized(const Spectrum& s) {
  if (std::abs(s.total_weight() - 1.0) > 1e-9) {
    throw std::invalid_argument("spectrum must be normalized");
  }
}

}  // namespace

Spectrum Spectrum::from_entries(std::vector<SpectrumEntry> raw) {
  for (const auto& e : raw) {
    if (!std::isfinite(e.value)) {
      throw std::invalid_argument("spectrum value must be finite");
    }
    if (e.multiplicity < 1) {
      throw std::invalid_argument("spectrum multiplicity must be positive");
    }
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) {
                     return a.value > b.value;
                   });
  Spectrum s;
  for (const auto& e : raw) {
    if (e.value <= 0.0) continue;
    if (!s.entries.empty() && s.entries.back().value == e.value) {
      s.entries.back().multiplicity += e.multiplicity;
    } else {
      s.entries.push_back(e);
    }
  }
  if (s.total_weight() > 1.0 + 1e-12) {
    throw std::invalid_argument("spectrum weight exceeds 1");
  }
  return s;
}

Spectrum Spectrum::from_values(const std::vector<double>& values) {
  std::vector<SpectrumEntry> raw;
  raw.reserve(values.size());
  for (double v : values) raw.push_back({v, 1});
  return from_entries(std::move(raw));
}

Spectrum Spectrum::from_values(const RVec& values) {
  std::vector<double> v(values.data(), values.data() + values.size());
  return from_values(v);
}

double Spectrum::total_weight() const { return kahan_total(entries); }

long long Spectrum::dimension() const {
  long long d = 0;
  for (const auto& e : entries) d += e.multiplicity;
  return d;
}

double Spectrum::max_value() const {
  return entries.empty() ? 0.0 : entries.front().value;
}

std::vector<double> Spectrum::expand() const {
  std::vector<double> out;
  for (const auto& e : entries) {
    for (long long k = 0; k < e.multiplicity; ++k) out.push_back(e.value);
  }
  return out;
}

TruncationResult truncate_spectrum(const Spectrum& s, double target_fidelity,
                                   TruncationDirection direction) {
  require_normalized(s);
  if (!(target_fidelity > 0.0) || target_fidelity > 1.0) {
    throw std::invalid_argument("target fidelity must lie in (0, 1]");
  }

  std::vector<SpectrumEntry> ordered = s.entries;
  if (direction == TruncationDirection::cut_small) {
    std::reverse(ordered.begin(), ordered.end());
  }

  TruncationResult res;
  res.direction = direction;
  res.lambda_star = 0.0;
  res.fractional_cut = 0.0;

  double b = 1.0 - target_fidelity;
  std::vector<SpectrumEntry> kept;
  size_t i = 0;
  while (i < ordered.size() && b > 0.0) {
    const SpectrumEntry e = ordered[i];
    const double w = e.value * static_cast<double>(e.multiplicity);
    if (b >= w * (1.0 - 1e-12)) {
      b -= w;
      res.lambda_star = e.value;
      res.fractional_cut = 1.0;
      ++i;
      continue;
    }
    const double ratio = b / e.value;
    long long f = static_cast<long long>(std::floor(ratio));
    if (ratio - static_cast<double>(f) >= 1.0 - 1e-9) ++f;
    if (f > e.multiplicity) f = e.multiplicity;
    double partial = b - static_cast<double>(f) * e.value;
    if (partial < e.value * 1e-12) partial = 0.0;
    if (f == 0 && partial == 0.0) {
      kept.push_back(e);
      ++i;
      b = 0.0;
      break;
    }
    const long long kept_full = e.multiplicity - f - (partial > 0.0 ? 1 : 0);
    res.lambda_star = e.value;
    res.fractional_cut = partial > 0.0 ? partial / e.value : 1.0;
    if (kept_full > 0) kept.push_back({e.value, kept_full});
    if (partial > 0.0) kept.push_back({e.value - partial, 1});
    ++i;
    b = 0.0;
    break;
  }
  for (; i < ordered.size(); ++i) kept.push_back(ordered[i]);

  res.smoothed = Spectrum::from_entries(std::move(kept));
  res.achieved_fidelity = res.smoothed.total_weight();
  return res;
}

double smooth_hmin_unconditional(const Spectrum& s, double eps) {
  if (!(eps >= 0.0) || eps >= 1.0) {
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  }
  const double target = std::sqrt(std::max(0.0, 1.0 - eps * eps));
  const TruncationResult res =
      truncate_spectrum(s, target, TruncationDirection::cut_large);
  if (res.smoothed.entries.empty()) {
    throw std::runtime_error("truncation removed the whole spectrum");
  }
  return -std::log2(res.smoothed.max_value());
}

namespace {

double smooth_rank_log2(const Spectrum& s, double target) {
  const TruncationResult res =
      truncate_spectrum(s, target, TruncationDirection::cut_small);
  const long long rank = res.smoothed.dimension();
  if (rank < 1) throw std::runtime_error("truncation removed the whole spectrum");
  return std::log2(static_cast<double>(rank));
}

}  // namespace

double smooth_h0(const Spectrum& s, double eps) {
  if (!(eps >= 0.0) || eps >= 1.0) {
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  }
  return smooth_rank_log2(s, std::sqrt(1.0 - eps));
}

double smooth_h0_exactified(const Spectrum& s, double eps) {
  if (!(eps >= 0.0) || eps >= 1.0) {
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  }
  return smooth_rank_log2(s, std::sqrt(std::max(0.0, 1.0 - eps * eps)));
}

namespace {

// Best achievable root-fidelity against p (non-increasing) over subnormalized
// nu with nu_i <= cap and sum nu_i <= 1: water-filling gives nu_i =
// min(cap, c * p_i), so the top-k coordinates sit at the cap for some k.
double best_fidelity_under_cap(const std::vector<double>& p, double cap) {
  const int d = static_cast<int>(p.size());
  std::vector<double> tail(d + 1, 0.0);
  for (int i = d - 1; i >= 0; --i) tail[i] = tail[i + 1] + p[i];
  double best = 0.0;
  for (int k = 0; k <= d; ++k) {
    const double capped = static_cast<double>(k) * cap;
    if (capped > 1.0 + 1e-12) break;
    double f = 0.0;
    for (int i = 0; i < k; ++i) f += std::sqrt(p[i] * cap);
    if (k < d) {
      const double budget = 1.0 - capped;
      const double rest = tail[k];
      const double c = rest > 0.0 ? budget / rest : 0.0;
      if (c * p[k] > cap * (1.0 + 1e-9)) continue;  // inconsistent split
      f += std::sqrt(c) * rest;
    }
    best = std::max(best, f);
  }
  return best;
}

double brute_force_hmin(const std::vector<double>& p, double target,
                        int grid_points, double constructed_cap) {
  const int d = static_cast<int>(p.size());
  double best_cap = std::numeric_limits<double>::infinity();

  // Cap family: exact optimal allocation per cap, caps on a grid plus the
  // cap realized by the truncation construction.
  std::vector<double> caps;
  caps.reserve(grid_points + 2);
  for (int j = 1; j <= grid_points; ++j) {
    caps.push_back(static_cast<double>(j) / static_cast<double>(grid_points));
  }
  caps.push_back(constructed_cap);
  caps.push_back(p[0]);
  for (double cap : caps) {
    if (!(cap > 0.0) || cap > 1.0) continue;
    if (cap >= best_cap) continue;
    if (best_fidelity_under_cap(p, cap) >= target - 1e-12) best_cap = cap;
  }

  // Direct grid over the first d-1 coordinates with exact closure on the
  // last; the last coordinate absorbs whatever fidelity the grid part is
  // missing. Kept coarse in the largest dimension to bound the combinatorics.
  const int g = d == 4 ? std::min(grid_points, 120) : grid_points;
  if (d == 1) {
    best_cap = std::min(best_cap, target * target / p[0]);
  } else {
    std::vector<int> idx(d - 1, 0);
    while (true) {
      double sum = 0.0, f = 0.0, peak = 0.0;
      for (int i = 0; i < d - 1; ++i) {
        const double nu = static_cast<double>(idx[i]) / static_cast<double>(g);
        sum += nu;
        peak = std::max(peak, nu);
        f += std::sqrt(p[i] * nu);
      }
      if (sum <= 1.0 + 1e-12) {
        double nu_last = 0.0;
        if (f < target) {
          const double r = target - f;
          nu_last = r * r / p[d - 1];
        }
        if (nu_last <= 1.0 && sum + nu_last <= 1.0 + 1e-12) {
          best_cap = std::min(best_cap, std::max(peak, nu_last));
        }
      }
      int pos = d - 2;
      while (pos >= 0 && idx[pos] == g) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
  }

  if (!std::isfinite(best_cap) || best_cap <= 0.0) {
    throw std::runtime_error("brute force found no feasible smoothing");
  }
  return -std::log2(best_cap);
}

double brute_force_h0(const std::vector<double>& p, double target) {
  const int d = static_cast<int>(p.size());
  const double need = target * target;
  int best = d + 1;
  for (int mask = 1; mask < (1 << d); ++mask) {
    double w = 0.0;
    int sz = 0;
    for (int i = 0; i < d; ++i) {
      if (mask & (1 << i)) {
        w += p[i];
        ++sz;
      }
    }
    if (w >= need - 1e-12) best = std::min(best, sz);
  }
  if (best > d) throw std::runtime_error("brute force found no feasible support");
  return std::log2(static_cast<double>(best));
}

}  // namespace

double brute_force_smooth(const Spectrum& s, double eps, SmoothMeasure measure,
                          int grid_points) {
  require_normalized(s);
  if (!(eps >= 0.0) || eps >= 1.0) {
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  }
  if (s.dimension() > 4) {
    throw std::invalid_argument("dimension too large for brute force");
  }
  if (grid_points < 100) {
    throw std::invalid_argument("grid must have at least 100 points per coordinate");
  }
  const std::vector<double> p = s.expand();
  if (measure == SmoothMeasure::hmin) {
    const double target = std::sqrt(std::max(0.0, 1.0 - eps * eps));
    const double constructed = smooth_hmin_unconditional(s, eps);
    return brute_force_hmin(p, target, grid_points, std::exp2(-constructed));
  }
  return brute_force_h0(p, std::sqrt(1.0 - eps));
}

}  // namespace minent
