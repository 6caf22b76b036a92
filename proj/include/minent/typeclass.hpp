#pragma once

#include <gmpxx.h>

#include <vector>

#include "minent/spectrum.hpp"

namespace minent {

// One distinct-eigenvalue class of a tensor power: every eigenvalue in the
// class equals exp2(log2_value) and there are exactly count of them.
struct TypeClass {
  double log2_value;
  mpz_class count;
};

struct TypeClassSpectrum {
  Spectrum base;
  long n = 0;
  // sorted by log2_value non-increasing, equal log-values merged
  std::vector<TypeClass> classes;
};

// log2 with full double precision for arbitrarily large integers.
double log2_mpz(const mpz_class& z);

// Type-class spectrum of base^{tensor n}. Counts are exact and their sum is
// verified against dim(base)^n; total weight is verified against 1 with
// compensated log-space summation. Base must have at most 4 distinct
// eigenvalues and n <= 10^4; throws when the class count would exceed
// class_limit.
TypeClassSpectrum tensor_power_spectrum(const Spectrum& base, long n,
                                        long long class_limit = 6000000);

// Smoothed one-shot entropies of base^{tensor n} in bits (totals, not rates),
// computed by log-space walks over type classes so they stay exact far past
// the range where dense spectra fit in memory or in double range.
double iid_smooth_hmin(const TypeClassSpectrum& tps, double eps);
double iid_smooth_h0(const TypeClassSpectrum& tps, double eps);
double iid_smooth_h0_exactified(const TypeClassSpectrum& tps, double eps);

double iid_smooth_hmin(const Spectrum& base, long n, double eps);
double iid_smooth_h0(const Spectrum& base, long n, double eps);
double iid_smooth_h0_exactified(const Spectrum& base, long n, double eps);

struct TruncatedIidEntropy {
  double entropy;  // von Neumann entropy of the truncated operator, in bits
  double mass;     // retained weight
};

// cut_large truncation of base^{tensor n} at fidelity target sqrt(1 - eps^2),
// returning the entropy and trace of the subnormalized remainder.
TruncatedIidEntropy iid_truncated_entropy(const TypeClassSpectrum& tps,
                                          double eps);
TruncatedIidEntropy iid_truncated_entropy(const Spectrum& base, long n,
                                          double eps);

}  // namespace minent
