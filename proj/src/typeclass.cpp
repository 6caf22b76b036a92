#include "minent/typeclass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minent {

namespace {

constexpr double kMant52 = 4503599627370496.0;  // 2^52

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double term = x - comp;
    double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
};

void require_eps(double eps) {
  if (!(eps >= 0.0) || eps >= 1.0) {
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  }
}

// floor(2^L) as an exact integer; L may exceed the double mantissa range, in
// which case the result carries 52 significant bits.
mpz_class floor_exp2(double L) {
  if (L < 0.0) return 0;
  if (L <= 52.0) {
    return mpz_class(static_cast<long>(std::floor(std::exp2(L))));
  }
  const long e = static_cast<long>(std::floor(L));
  const double mant = std::exp2(L - static_cast<double>(e));  // in [1, 2)
  mpz_class m(static_cast<long>(std::floor(mant * kMant52)));
  return m << (e - 52);
}

// ceil(2^L) with a relative slop so values within 1e-9 below an integer round
// to that integer; matches the boundary promotion in truncate_spectrum.
mpz_class ceil_exp2(double L) {
  if (L <= 0.0) return 1;
  if (L <= 52.0) {
    const double x = std::exp2(L);
    double c = std::ceil(x - x * 1e-12 - 1e-9);
    if (c < 1.0) c = 1.0;
    return mpz_class(static_cast<long>(c));
  }
  return floor_exp2(L) + 1;
}

double class_log2_weight(const TypeClass& c) {
  return c.log2_value + log2_mpz(c.count);
}

}  // namespace

double log2_mpz(const mpz_class& z) {
  if (z <= 0) throw std::invalid_argument("log2 of a nonpositive integer");
  long e = 0;
  const double d = mpz_get_d_2exp(&e, z.get_mpz_t());  // d in [0.5, 1)
  return std::log2(d) + static_cast<double>(e);
}

TypeClassSpectrum tensor_power_spectrum(const Spectrum& base, long n,
                                        long long class_limit) {
  if (base.entries.empty() || std::abs(base.total_weight() - 1.0) > 1e-9) {
    throw std::invalid_argument("base spectrum must be normalized");
  }
  if (base.entries.size() > 4) {
    throw std::invalid_argument("base must have at most 4 distinct eigenvalues");
  }
  if (n < 1 || n > 10000) {
    throw std::invalid_argument("tensor power must lie in [1, 10000]");
  }

  const int m = static_cast<int>(base.entries.size());
  mpz_class bound;
  mpz_bin_uiui(bound.get_mpz_t(), static_cast<unsigned long>(n + m - 1),
               static_cast<unsigned long>(m - 1));
  if (bound > mpz_class(static_cast<long>(class_limit))) {
    throw std::invalid_argument("type class count exceeds limit");
  }

  std::vector<double> lv(m);
  std::vector<unsigned long> deg(m);
  for (int i = 0; i < m; ++i) {
    lv[i] = std::log2(base.entries[i].value);
    deg[i] = static_cast<unsigned long>(base.entries[i].multiplicity);
  }

  std::vector<TypeClass> classes;
  classes.reserve(bound.get_ui());

  std::vector<long> k(m, 0);
  k[0] = n;
  mpz_class total = 0;
  mpz_class binom, pw;
  while (true) {
    TypeClass tc;
    tc.log2_value = 0.0;
    tc.count = 1;
    long rem = n;
    for (int i = 0; i < m; ++i) {
      if (k[i] == 0) continue;
      tc.log2_value += static_cast<double>(k[i]) * lv[i];
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(rem),
                   static_cast<unsigned long>(k[i]));
      tc.count *= binom;
      rem -= k[i];
      if (deg[i] > 1) {
        mpz_ui_pow_ui(pw.get_mpz_t(), deg[i], static_cast<unsigned long>(k[i]));
        tc.count *= pw;
      }
    }
    total += tc.count;
    classes.push_back(std::move(tc));

    int i = m - 2;
    while (i >= 0 && k[i] == 0) --i;
    if (i < 0) break;
    const long tail = k[m - 1];
    k[m - 1] = 0;
    --k[i];
    k[i + 1] = tail + 1;
  }

  mpz_class expect;
  mpz_ui_pow_ui(expect.get_mpz_t(),
                static_cast<unsigned long>(base.dimension()),
                static_cast<unsigned long>(n));
  if (total != expect) {
    throw std::logic_error("type class counts do not add up to dim^n");
  }

  std::stable_sort(classes.begin(), classes.end(),
                   [](const TypeClass& a, const TypeClass& b) {
                     return a.log2_value > b.log2_value;
                   });
  TypeClassSpectrum tps;
  tps.base = base;
  tps.n = n;
  for (auto& c : classes) {
    if (!tps.classes.empty() && tps.classes.back().log2_value == c.log2_value) {
      tps.classes.back().count += c.count;
    } else {
      tps.classes.push_back(std::move(c));
    }
  }

  KahanSum weight;
  for (const auto& c : tps.classes) weight.add(std::exp2(class_log2_weight(c)));
  if (std::abs(weight.sum - 1.0) > 1e-9) {
    throw std::logic_error("type class weights do not sum to 1");
  }
  return tps;
}

namespace {

// Weight removed from the large end reaches 1 - target; returns -log2 of the
// largest surviving eigenvalue (a full copy when one survives in the boundary
// class, otherwise the single partially cut copy or the next class down).
double hmin_walk(const std::vector<TypeClass>& classes, double target) {
  const double budget = 1.0 - target;
  KahanSum removed;
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    const TypeClass& c = classes[ci];
    const double b_res = budget - removed.sum;
    if (b_res <= 0.0) return -c.log2_value;
    const double lw = class_log2_weight(c);
    const double w = std::exp2(lw);
    if (b_res >= w * (1.0 - 1e-12)) {
      removed.add(w);
      continue;
    }
    // boundary class: a full copy survives iff b_res <= value * (count - 1)
    if (c.count > 1) {
      const double l_rest = c.log2_value + log2_mpz(c.count - 1);
      if (std::log2(b_res) <= l_rest) return -c.log2_value;
    }
    // only a partial copy of this class survives, of weight w - b_res
    const double l_rem = lw + std::log1p(-b_res / w) / std::log(2.0);
    double l_next = -std::numeric_limits<double>::infinity();
    if (ci + 1 < classes.size()) l_next = classes[ci + 1].log2_value;
    return -std::max(l_rem, l_next);
  }
  throw std::runtime_error("smoothing budget exhausted the spectrum");
}

// Keeps classes from the top until the retained weight reaches target;
// returns log2 of the retained rank, a partially kept copy counting fully.
double h0_walk(const std::vector<TypeClass>& classes, double target) {
  KahanSum kept;
  mpz_class rank = 0;
  for (const TypeClass& c : classes) {
    const double need = target - kept.sum;
    if (need <= 0.0) break;
    const double lw = class_log2_weight(c);
    const double w = std::exp2(lw);
    if (w < need) {
      kept.add(w);
      rank += c.count;
      continue;
    }
    mpz_class copies = ceil_exp2(std::log2(need) - c.log2_value);
    if (copies > c.count) copies = c.count;
    rank += copies;
    return log2_mpz(rank);
  }
  if (rank == 0) throw std::runtime_error("empty spectrum in rank walk");
  return log2_mpz(rank);
}

}  // namespace

double iid_smooth_hmin(const TypeClassSpectrum& tps, double eps) {
  require_eps(eps);
  return hmin_walk(tps.classes, std::sqrt(std::max(0.0, 1.0 - eps * eps)));
}

double iid_smooth_h0(const TypeClassSpectrum& tps, double eps) {
  require_eps(eps);
  return h0_walk(tps.classes, std::sqrt(1.0 - eps));
}

double iid_smooth_h0_exactified(const TypeClassSpectrum& tps, double eps) {
  require_eps(eps);
  return h0_walk(tps.classes, std::sqrt(std::max(0.0, 1.0 - eps * eps)));
}

double iid_smooth_hmin(const Spectrum& base, long n, double eps) {
  return iid_smooth_hmin(tensor_power_spectrum(base, n), eps);
}

double iid_smooth_h0(const Spectrum& base, long n, double eps) {
  return iid_smooth_h0(tensor_power_spectrum(base, n), eps);
}

double iid_smooth_h0_exactified(const Spectrum& base, long n, double eps) {
  return iid_smooth_h0_exactified(tensor_power_spectrum(base, n), eps);
}

TruncatedIidEntropy iid_truncated_entropy(const TypeClassSpectrum& tps,
                                          double eps) {
  require_eps(eps);
  const double target = std::sqrt(std::max(0.0, 1.0 - eps * eps));
  const double budget = 1.0 - target;

  KahanSum removed, entropy, mass;
  bool cutting = budget > 0.0;
  for (const TypeClass& c : tps.classes) {
    const double lv = c.log2_value;
    const double lw = class_log2_weight(c);
    const double w = std::exp2(lw);
    if (cutting) {
      const double b_res = budget - removed.sum;
      if (b_res > 0.0 && b_res >= w * (1.0 - 1e-12)) {
        removed.add(w);
        continue;
      }
      cutting = false;
      if (b_res > 0.0) {
        // boundary class: f full copies removed, one copy partially cut
        const double v = std::exp2(lv);
        if (v > 0.0) {
          mpz_class f = floor_exp2(std::log2(b_res) - lv);
          if (f >= c.count) f = c.count - 1;
          double fw = 0.0;
          if (f > 0) fw = std::exp2(lv + log2_mpz(f));
          double partial = b_res - fw;
          if (partial < 0.0) partial = 0.0;
          if (partial > v) partial = v;
          const double q_b = v - partial;
          const mpz_class kept_full = c.count - f - 1;
          double wk = 0.0;
          if (kept_full > 0) wk = std::exp2(lv + log2_mpz(kept_full));
          entropy.add(wk * (-lv));
          mass.add(wk);
          if (q_b > 0.0) {
            entropy.add(q_b * (-std::log2(q_b)));
            mass.add(q_b);
          }
        } else {
          // class value underflows double; weight-level accounting is exact
          // to below double resolution here
          const double wk = w - b_res;
          entropy.add(wk * (-lv));
          mass.add(wk);
        }
        continue;
      }
    }
    entropy.add(w * (-lv));
    mass.add(w);
  }
  return {entropy.sum, mass.sum};
}

TruncatedIidEntropy iid_truncated_entropy(const Spectrum& base, long n,
                                          double eps) {
  return iid_truncated_entropy(tensor_power_spectrum(base, n), eps);
}

}  // namespace minent
