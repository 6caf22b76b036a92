#pragma once

#include <initializer_list>
#include <vector>

#include "minent/matrix.hpp"

namespace minent {

enum class TruncationDirection { cut_large, cut_small };

struct SpectrumEntry {
  double value;
  long long multiplicity;
};

// Eigenvalue multiset: entries sorted by value non-increasing, exactly equal
// values merged, nonpositive values dropped, total weight <= 1 + 1e-12.
struct Spectrum {
  std::vector<SpectrumEntry> entries;

  static Spectrum from_values(const std::vector<double>& values);
  static Spectrum from_values(const RVec& values);
  static Spectrum from_values(std::initializer_list<double> values) {
    return from_values(std::vector<double>(values));
  }
  static Spectrum from_entries(std::vector<SpectrumEntry> raw);

  double total_weight() const;
  long long dimension() const;  // sum of multiplicities
  double max_value() const;
  std::vector<double> expand() const;  // plain non-increasing value list
};

struct TruncationResult {
  Spectrum smoothed;
  double lambda_star;      // original value of the boundary eigenvalue
  double fractional_cut;   // share of lambda_star removed, in [0, 1]
  double achieved_fidelity;  // retained weight; equals the target by construction
  TruncationDirection direction;
};

// Removes exactly 1 - target_fidelity of weight from the large (cut_large) or
// small (cut_small) end of a normalized spectrum, reducing one boundary
// eigenvalue in place. The retained co-diagonal truncation q satisfies
// F(p, q) >= retained weight, so the reported fidelity certificate is
// conservative.
TruncationResult truncate_spectrum(const Spectrum& s, double target_fidelity,
                                   TruncationDirection direction);

// -log2 of the largest remaining eigenvalue after cutting the large end at
// fidelity target sqrt(1 - eps^2); eps in [0, 1).
double smooth_hmin_unconditional(const Spectrum& s, double eps);

// log2 of the remaining rank after cutting the small end at fidelity target
// sqrt(1 - eps); a partially cut boundary eigenvalue still counts (ceiling
// semantics); eps in [0, 1).
double smooth_h0(const Spectrum& s, double eps);

// Same rank smoothing with the tighter target sqrt(1 - eps^2), which keeps
// the result inside the purified-distance eps-ball.
double smooth_h0_exactified(const Spectrum& s, double eps);

enum class SmoothMeasure { hmin, h0 };

// Grid/enumeration optimizer over subnormalized spectra nu with
// sum_i sqrt(p_i nu_i) >= target, aligned with p non-increasing; dimension
// <= 4, grid_points >= 100 per free coordinate. For hmin the search combines
// a direct grid over the free coordinates with an exact per-cap allocation
// family; for h0 the optimum is found by exact support-subset enumeration and
// the grid parameter is unused.
double brute_force_smooth(const Spectrum& s, double eps, SmoothMeasure measure,
                          int grid_points);

}  // namespace minent
