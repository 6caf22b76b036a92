#include "minent/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "minent/eig.hpp"
#include "minent/entropies.hpp"
#include "minent/io.hpp"
#include "minent/metrics.hpp"
#include "minent/rng.hpp"
#include "minent/sdp.hpp"
#include "minent/smoothing.hpp"
#include "minent/spectrum.hpp"
#include "minent/state.hpp"
#include "minent/typeclass.hpp"

namespace minent {

namespace {

constexpr uint64_t kDefaultSeed = 0x6d696e656e74ULL;

std::string dims_str(const std::vector<int>& dims) {
  std::string s;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(dims[i]);
  }
  return s;
}

std::string num_str(double x) { return fmt_g(x, 9); }

std::string values_str(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += "|";
    s += num_str(v[i]);
  }
  return s;
}

RVec rvec(const std::vector<double>& v) {
  RVec out(static_cast<long>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<long>(i)) = v[i];
  return out;
}

CMat diag_of(const std::vector<double>& v) {
  CMat m = CMat::Zero(static_cast<long>(v.size()), static_cast<long>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
  return m;
}

// Collects rows for one check and applies tolerance/negation uniformly.
class Sink {
 public:
  Sink(double tolerance, bool negate) : tol_(tolerance), negate_(negate) {}

  void row(long trial, uint64_t seed, const std::string& params,
           const std::string& digest, double lhs, double rhs,
           const CMat* state = nullptr,
           const std::vector<int>* state_dims = nullptr) {
    if (negate_) std::swap(lhs, rhs);
    TrialRecord r;
    r.trial = trial;
    r.seed = seed;
    r.params = params;
    r.digest = digest;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.pass = std::isfinite(r.slack) && r.slack >= -tol_;
    if (!r.pass && state != nullptr && state_dims != nullptr) {
      r.state_json = matrix_to_json(*state, *state_dims);
    }
    if (!r.pass) ++failures_;
    min_slack_ = std::min(min_slack_, r.slack);
    max_trial_ = std::max(max_trial_, trial);
    records_.push_back(std::move(r));
  }

  std::vector<TrialRecord> take() { return std::move(records_); }
  long failures() const { return failures_; }
  double min_slack() const { return records_.empty() ? 0.0 : min_slack_; }
  long trials_seen() const { return max_trial_ + 1; }

 private:
  double tol_;
  bool negate_;
  std::vector<TrialRecord> records_;
  long failures_ = 0;
  double min_slack_ = std::numeric_limits<double>::infinity();
  long max_trial_ = -1;
};

const std::vector<int>& pick_dims(const CheckConfig& cfg, long trial,
                                  size_t want_parts) {
  const auto& d = cfg.dims[static_cast<size_t>(trial) % cfg.dims.size()];
  if (d.size() != want_parts) {
    throw std::invalid_argument("check needs " + std::to_string(want_parts) +
                                "-part dimension tuples");
  }
  return d;
}

CMat trial_state(const std::vector<int>& dims, uint64_t seed) {
  return random_density(dims, static_cast<int>(total_dim(dims)), seed);
}

// ---- check implementations ----

void check_dpi_smooth(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 3);
    const CMat rho = trial_state(dims, seed);
    const int d_a = dims[0], d_b = dims[1], d_c = dims[2];
    const std::string digest = matrix_digest(rho);
    for (double eps : cfg.epsilons) {
      const bool exact = eps == 0.0;
      const CMat st = exact ? rho
                            : truncate_state(rho, std::sqrt(1.0 - eps * eps),
                                             TruncationDirection::cut_large);
      const double lhs = hmin_conditional(st, d_a, d_b * d_c).value;
      const CMat st_ab = partial_trace(st, dims, {0, 1});
      const double rhs = hmin_conditional(st_ab, d_a, d_b).value;
      sink.row(t, seed,
               "dims=" + dims_str(dims) + ";eps=" + num_str(eps) +
                   (exact ? ";mode=exact" : ";mode=bound"),
               digest, lhs, rhs, &rho, &dims);
    }
  }
}

void check_dpi_witness_trace(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 3);
    const CMat rho = trial_state(dims, seed);
    const int d_a = dims[0], d_b = dims[1], d_c = dims[2];
    const std::string digest = matrix_digest(rho);
    for (double eps : cfg.epsilons) {
      const bool exact = eps == 0.0;
      const CMat st = exact ? rho
                            : truncate_state(rho, std::sqrt(1.0 - eps * eps),
                                             TruncationDirection::cut_large);
      const HminResult hr = hmin_conditional(st, d_a, d_b * d_c);
      const CMat sigma_b =
          partial_trace(hr.witness.sigma_b, {d_b, d_c}, {0});
      const CMat st_ab = partial_trace(st, dims, {0, 1});
      const CMat gap =
          tensor(CMat::Identity(d_a, d_a), sigma_b) - st_ab;
      sink.row(t, seed,
               "dims=" + dims_str(dims) + ";eps=" + num_str(eps) +
                   (exact ? ";mode=exact" : ";mode=bound"),
               digest, -min_eigval(gap), 0.0, &rho, &dims);
    }
  }
}

void check_dpi_vn(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 3);
    const CMat rho = trial_state(dims, seed);
    const double lhs = conditional_vn(rho, dims, {1, 2});
    const CMat rho_ab = partial_trace(rho, dims, {0, 1});
    const double rhs = conditional_vn(rho_ab, {dims[0], dims[1]}, {1});
    sink.row(t, seed, "dims=" + dims_str(dims), matrix_digest(rho), lhs, rhs,
             &rho, &dims);
  }
}

void check_ssa_equiv(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 3);
    const CMat rho = trial_state(dims, seed);
    const std::string digest = matrix_digest(rho);
    const double h_abc = von_neumann(rho);
    const double h_ab = von_neumann(partial_trace(rho, dims, {0, 1}));
    const double h_bc = von_neumann(partial_trace(rho, dims, {1, 2}));
    const double h_b = von_neumann(partial_trace(rho, dims, {1}));
    const std::string base = "dims=" + dims_str(dims);
    sink.row(t, seed, base + ";ineq=ssa", digest, h_abc + h_b, h_ab + h_bc,
             &rho, &dims);
    const double ssa_slack = h_ab + h_bc - h_b - h_abc;
    const double dpi_slack = (h_ab - h_b) - (h_abc - h_bc);
    sink.row(t, seed, base + ";ineq=equal", digest,
             std::abs(ssa_slack - dpi_slack), 0.0, &rho, &dims);
  }
}

void check_chain_rule(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 2);
    const int d_a = dims[0], d_b = dims[1];
    const CMat rho = trial_state(dims, seed);
    const CMat rho_b = partial_trace(rho, dims, {1});
    const std::string digest = matrix_digest(rho);
    const Spectrum s_ab = spectrum_of(rho);
    const Spectrum s_b = spectrum_of(rho_b);
    for (double eps : cfg.epsilons) {
      const std::string base =
          "dims=" + dims_str(dims) + ";eps=" + num_str(eps);
      if (eps == 0.0) {
        const double lhs = hmin(rho) - h0(rho_b);
        const double rhs = hmin_conditional(rho, d_a, d_b).value;
        sink.row(t, seed, base + ";mode=exact;ineq=chain", digest, lhs, rhs,
                 &rho, &dims);
        continue;
      }
      const ChainRuleWitness w = chain_rule_witness(rho, d_a, d_b, eps);
      const CMat cap = std::exp2(-w.lambda) *
                           tensor(CMat::Identity(d_a, d_a), w.projector_b) -
                       w.rho_hat;
      sink.row(t, seed, base + ";mode=bound;ineq=feasible", digest,
               -min_eigval(cap), 0.0, &rho, &dims);
      sink.row(t, seed, base + ";mode=bound;ineq=ball", digest, w.distance,
               3.0 * eps, &rho, &dims);
      const double sdp = hmin_conditional(w.rho_hat, d_a, d_b).value;
      sink.row(t, seed, base + ";mode=bound;ineq=witness", digest, w.value,
               sdp, &rho, &dims);
      const double modular = smooth_hmin_unconditional(s_ab, eps) -
                             smooth_h0_exactified(s_b, eps);
      sink.row(t, seed, base + ";mode=bound;ineq=consistent", digest,
               std::abs(modular - w.value), 0.0, &rho, &dims);
    }
  }
}

void check_renyi_hmin_bound(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 1);
    const RVec vals = eigvals_hermitian(trial_state(dims, seed));
    const Spectrum s = Spectrum::from_values(vals);
    const CMat diag = diag_of(std::vector<double>(vals.data(), vals.data() + vals.size()));
    const std::string digest = matrix_digest(diag);
    for (double alpha : cfg.alphas) {
      const double h_alpha = renyi_alpha_spectrum(vals, alpha);
      for (double eps : cfg.epsilons) {
        const double lhs =
            h_alpha +
            std::log2(1.0 - std::sqrt(1.0 - eps * eps)) / (alpha - 1.0);
        const double rhs = smooth_hmin_unconditional(s, eps);
        sink.row(t, seed,
                 "d=" + std::to_string(dims[0]) + ";alpha=" + num_str(alpha) +
                     ";eps=" + num_str(eps),
                 digest, lhs, rhs, &diag, &dims);
      }
    }
  }
}

void check_renyi_h0_bound(const CheckConfig& cfg, Sink& sink) {
  static const std::vector<std::vector<double>> corpus = {
      {0.89, 0.11},
      {0.75, 0.25},
      {0.6, 0.3, 0.1},
      {0.94, 0.03, 0.02, 0.01},
      {0.4, 0.3, 0.2, 0.1},
  };
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const bool fixed = static_cast<size_t>(t) < corpus.size();
    std::vector<double> vals;
    std::vector<int> dims;
    if (fixed) {
      vals = corpus[static_cast<size_t>(t)];
      dims = {static_cast<int>(vals.size())};
    } else {
      const auto& d = pick_dims(cfg, t, 1);
      dims = d;
      const RVec ev = eigvals_hermitian(trial_state(d, seed));
      vals.assign(ev.data(), ev.data() + ev.size());
    }
    const Spectrum s = Spectrum::from_values(vals);
    const CMat diag = diag_of(vals);
    const std::string digest = matrix_digest(diag);
    for (double alpha : cfg.alphas) {
      const double h_alpha = renyi_alpha_spectrum(rvec(vals), alpha);
      for (double eps : cfg.epsilons) {
        const double lhs = smooth_h0(s, eps);
        const double rhs =
            h_alpha + std::log2(std::sqrt(1.0 - eps)) / (alpha - 1.0);
        sink.row(t, seed,
                 "d=" + std::to_string(dims[0]) + ";alpha=" + num_str(alpha) +
                     ";eps=" + num_str(eps) +
                     (fixed ? ";corpus=1" : ";corpus=0"),
                 digest, lhs, rhs, &diag, &dims);
      }
    }
  }
}

void check_qaep_unconditional(const CheckConfig& cfg, Sink& sink) {
  static const std::vector<std::vector<double>> bases = {{0.75, 0.25},
                                                         {0.6, 0.4}};
  long combo = 0;
  for (const auto& base : bases) {
    const Spectrum bs = Spectrum::from_values(base);
    const double h = shannon(rvec(base));
    std::map<long, TypeClassSpectrum> cache;
    for (long n = 100; n <= 2000; n += 100) {
      cache.emplace(n, tensor_power_spectrum(bs, n));
    }
    for (double eps : cfg.epsilons) {
      const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(combo));
      const std::string tag = "base=" + values_str(base) + ";eps=" + num_str(eps);
      double prev_hmin = 0.0, prev_h0 = 0.0, dev_hmin = 0.0, dev_h0 = 0.0;
      for (long n = 100; n <= 2000; n += 100) {
        const auto& tps = cache.at(n);
        dev_hmin = std::abs(iid_smooth_hmin(tps, eps) / n - h);
        dev_h0 = std::abs(iid_smooth_h0(tps, eps) / n - h);
        if (n > 100) {
          sink.row(combo, seed, tag + ";seq=hmin;n=" + std::to_string(n), "-",
                   dev_hmin, prev_hmin);
          sink.row(combo, seed, tag + ";seq=h0;n=" + std::to_string(n), "-",
                   dev_h0, prev_h0);
        }
        prev_hmin = dev_hmin;
        prev_h0 = dev_h0;
      }
      sink.row(combo, seed, tag + ";seq=hmin;ineq=final", "-", dev_hmin, 0.05);
      sink.row(combo, seed, tag + ";seq=h0;ineq=final", "-", dev_h0, 0.05);
      ++combo;
    }
  }
}

void check_qaep_conditional_sandwich(const CheckConfig& cfg, Sink& sink) {
  const std::vector<double> base_a = {0.65, 0.35};
  const std::vector<double> base_b = {0.5, 0.5};
  std::vector<double> base_ab;
  for (double a : base_a) {
    for (double b : base_b) base_ab.push_back(a * b);
  }
  const Spectrum s_ab = Spectrum::from_values(base_ab);
  const Spectrum s_b = Spectrum::from_values(base_b);
  const double h_cond = shannon(rvec(base_a));  // product state: H(A|B) = H(A)
  long combo = 0;
  for (double eps : cfg.epsilons) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(combo));
    for (long n : {1000L, 2000L}) {
      const TypeClassSpectrum tps_ab = tensor_power_spectrum(s_ab, n);
      const TypeClassSpectrum tps_b = tensor_power_spectrum(s_b, n);
      const double lower = (iid_smooth_hmin(tps_ab, eps) -
                            iid_smooth_h0_exactified(tps_b, eps)) /
                           static_cast<double>(n);
      const double upper = h_cond;  // candidate is the power state itself
      const std::string tag = "base=" + values_str(base_ab) +
                              ";eps=" + num_str(eps) + ";n=" + std::to_string(n);
      sink.row(combo, seed, tag + ";ineq=below", "-", lower, h_cond);
      sink.row(combo, seed, tag + ";ineq=above", "-", h_cond, upper);
      if (n == 2000) {
        sink.row(combo, seed, tag + ";ineq=gap", "-", h_cond - lower, 0.05);
      }
    }
    ++combo;
  }
}

void check_pd_monotone(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 2);
    const CMat rho = trial_state(dims, derive_seed(seed, 1));
    const CMat sig = trial_state(dims, derive_seed(seed, 2));
    const std::string digest = matrix_digest(rho);
    const double p = purified_distance(rho, sig).value;
    const std::string base = "dims=" + dims_str(dims);
    const double p_tr = purified_distance(partial_trace(rho, dims, {0}),
                                          partial_trace(sig, dims, {0}))
                            .value;
    sink.row(t, seed, base + ";map=ptrace", digest, p_tr, p, &rho, &dims);
    const int d = static_cast<int>(rho.rows());
    const CMat u = random_unitary(d, derive_seed(seed, 3));
    const CMat iso = u.leftCols(d / 2);
    const CMat proj = iso * iso.adjoint();
    const double p_pr =
        purified_distance(hermitize(proj * rho * proj), hermitize(proj * sig * proj))
            .value;
    sink.row(t, seed, base + ";map=project", digest, p_pr, p, &rho, &dims);
  }
}

void check_pd_triangle(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 1);
    const CMat rho = trial_state(dims, derive_seed(seed, 1));
    const CMat sig = trial_state(dims, derive_seed(seed, 2));
    const CMat tau = trial_state(dims, derive_seed(seed, 3));
    const double lhs = purified_distance(rho, tau).value;
    const double rhs =
        purified_distance(rho, sig).value + purified_distance(sig, tau).value;
    sink.row(t, seed, "dims=" + dims_str(dims), matrix_digest(rho), lhs, rhs,
             &rho, &dims);
  }
}

void check_pd_reorder(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 1);
    const CMat rho = trial_state(dims, derive_seed(seed, 1));
    const CMat sig = trial_state(dims, derive_seed(seed, 2));
    const CMat sig_r = reorder_to_eigenbasis(rho, sig);
    sink.row(t, seed, "dims=" + dims_str(dims), matrix_digest(rho),
             purified_distance(rho, sig_r).value,
             purified_distance(rho, sig).value, &rho, &dims);
  }
}

void check_uhlmann(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 1);
    const CMat rho = trial_state(dims, derive_seed(seed, 1));
    const CMat sig = trial_state(dims, derive_seed(seed, 2));
    const UhlmannPair up = uhlmann_pair(rho, sig);
    const double f = fidelity(rho, sig).value;
    sink.row(t, seed, "dims=" + dims_str(dims), matrix_digest(rho),
             std::abs(up.overlap - f), 0.0, &rho, &dims);
  }
}

void check_fannes_limit(const CheckConfig& cfg, Sink& sink) {
  long t = 0;
  for (const auto& dims : cfg.dims) {
    if (dims.size() != 1) {
      throw std::invalid_argument("check needs 1-part dimension tuples");
    }
    const int d = dims[0];
    std::vector<long> n_grid;
    if (d == 2) {
      n_grid = {50, 100, 200, 400};
    } else if (d == 3) {
      n_grid = {50, 100, 200};
    } else {
      n_grid = {30, 60};
    }
    for (long b = 0; b < cfg.trials; ++b, ++t) {
      const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
      const RVec vals = eigvals_hermitian(trial_state(dims, seed));
      const Spectrum base = Spectrum::from_values(vals);
      const double h = shannon(vals);
      const CMat diag = diag_of(std::vector<double>(vals.data(), vals.data() + vals.size()));
      const std::string digest = matrix_digest(diag);
      for (long n : n_grid) {
        const TypeClassSpectrum tps = tensor_power_spectrum(base, n);
        for (double eps : cfg.epsilons) {
          const TruncatedIidEntropy te = iid_truncated_entropy(tps, eps);
          const double lhs = std::abs(te.entropy - static_cast<double>(n) * h) /
                             static_cast<double>(n);
          const double defect = std::clamp(1.0 - te.mass, 0.0, 1.0);
          const double rhs = eps * std::log2(static_cast<double>(d)) +
                             eta(eps) / static_cast<double>(n) +
                             eta(defect) / static_cast<double>(n);
          sink.row(t, seed,
                   "d=" + std::to_string(d) + ";n=" + std::to_string(n) +
                       ";eps=" + num_str(eps),
                   digest, lhs, rhs, &diag, &dims);
        }
      }
    }
  }
}

void check_renyi_to_vn(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 1);
    const CMat rho = trial_state(dims, seed);
    const double h = von_neumann(rho);
    const std::string digest = matrix_digest(rho);
    for (double alpha : cfg.alphas) {
      sink.row(t, seed,
               "dims=" + dims_str(dims) + ";alpha=" + num_str(alpha), digest,
               std::abs(renyi_alpha(rho, alpha) - h), 0.01, &rho, &dims);
    }
  }
}

void check_upper_candidate(const CheckConfig& cfg, Sink& sink) {
  for (long t = 0; t < cfg.trials; ++t) {
    const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(t));
    const auto& dims = pick_dims(cfg, t, 2);
    const CMat rho = trial_state(dims, seed);
    const std::string digest = matrix_digest(rho);
    for (double eps : cfg.epsilons) {
      const ConditionalHminBounds b =
          smooth_hmin_conditional_bounds(rho, dims[0], dims[1], eps);
      sink.row(t, seed,
               "dims=" + dims_str(dims) + ";eps=" + num_str(eps) +
                   ";mode=bound",
               digest, b.exact0, b.upper, &rho, &dims);
    }
  }
}

// ---- registry ----

struct CheckDef {
  const char* id;
  const char* claim;
  bool bound_mode;
  long trials;
  double tol;
  std::vector<std::vector<int>> dims;
  std::vector<double> epsilons;
  std::vector<double> alphas;
  void (*fn)(const CheckConfig&, Sink&);
};

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = {
      {"dpi_smooth",
       "H_min^e(A|BC) <= H_min^e(A|B); exact SDP at e = 0, matched truncation "
       "candidate at e > 0",
       true, 1000, 1e-7, {{2, 2, 2}}, {0.0, 0.05, 0.1}, {}, check_dpi_smooth},
      {"dpi_witness_trace",
       "sigma_B = Tr_C sigma_BC stays feasible: 1_A (x) sigma_B >= rho_AB",
       true, 1000, 1e-7, {{2, 2, 2}}, {0.0, 0.05, 0.1}, {},
       check_dpi_witness_trace},
      {"dpi_vn", "H(A|BC) <= H(A|B)", false, 10000, 1e-9, {{2, 2, 2}}, {}, {},
       check_dpi_vn},
      {"ssa_equiv",
       "H(ABC) + H(B) <= H(AB) + H(BC), with slack equal to H(A|B) - H(A|BC)",
       false, 10000, 1e-9, {{2, 2, 2}}, {}, {}, check_ssa_equiv},
      {"chain_rule",
       "H_min^e(AB) - H_0^e(B) <= H_min^{3e}(A|B), via an explicit witness "
       "state at e > 0",
       true, 1000, 1e-7, {{2, 2}}, {0.0, 0.05, 0.1}, {}, check_chain_rule},
      {"renyi_hmin_bound",
       "H_alpha + log2(1 - sqrt(1 - e^2))/(alpha - 1) <= H_min^e "
       "construction, alpha > 1",
       true, 1000, 1e-9, {{2}, {3}, {4}}, {0.1, 0.3, 0.6}, {1.5, 2.0, 4.0},
       check_renyi_hmin_bound},
      {"renyi_h0_bound",
       "H_0^e construction <= H_alpha + log2(sqrt(1 - e))/(alpha - 1), "
       "alpha < 1",
       true, 1000, 1e-9, {{2}, {3}, {4}}, {0.1, 0.3, 0.6}, {0.6, 0.75, 0.9},
       check_renyi_h0_bound},
      {"qaep_unconditional",
       "|(1/n) H_min^e(A^n) - H(A)| and |(1/n) H_0^e(A^n) - H(A)| close "
       "monotonically, within 0.05 at n = 2000",
       true, 1, 1e-9, {{2}}, {0.05, 0.1}, {}, check_qaep_unconditional},
      {"qaep_conditional_sandwich",
       "(1/n)[H_min^e(A^n B^n) - H_0^e(B^n)] <= H(A|B) on product states, "
       "gap <= 0.05 at n = 2000",
       true, 1, 1e-9, {{2, 2}}, {0.01}, {}, check_qaep_conditional_sandwich},
      {"pd_monotone",
       "P(E(rho), E(sigma)) <= P(rho, sigma) for partial trace and "
       "projections",
       false, 1000, 1e-9, {{2, 2}}, {}, {}, check_pd_monotone},
      {"pd_triangle", "P(rho, tau) <= P(rho, sigma) + P(sigma, tau)", false,
       1000, 1e-9, {{2}, {3}}, {}, {}, check_pd_triangle},
      {"pd_reorder",
       "P(rho, sigma) >= P(rho, sigma~) with sigma~ carrying sigma's spectrum "
       "in rho's eigenbasis",
       false, 1000, 1e-9, {{2}, {3}}, {}, {}, check_pd_reorder},
      {"uhlmann", "purification overlap attains F(rho, sigma)", false, 1000,
       1e-8, {{2}, {3}}, {}, {}, check_uhlmann},
      {"fannes_limit",
       "(1/n)|H(sigma_n) - H(rho^n)| <= e log2 d + eta(e)/n + "
       "eta(1 - tr sigma_n)/n for truncation-smoothed sigma_n",
       true, 3, 1e-9, {{2}, {3}, {4}}, {0.05, 0.1, 0.2}, {},
       check_fannes_limit},
      {"renyi_to_vn", "|H_alpha - H| <= 0.01 at alpha = 1 +/- 1e-3", false,
       1000, 1e-9, {{2}, {3}}, {}, {0.999, 1.001}, check_renyi_to_vn},
      {"upper_candidate",
       "H_min(A|B) <= conditional entropy of a ball-certified candidate", true,
       500, 1e-7, {{2, 2}, {3, 2}}, {0.05, 0.1}, {}, check_upper_candidate},
  };
  return defs;
}

const CheckDef& find_check(const std::string& id) {
  for (const auto& def : registry()) {
    if (id == def.id) return def;
  }
  throw std::invalid_argument("unknown check_id: " + id);
}

CheckConfig resolve(const CheckConfig& cfg, const CheckDef& def) {
  CheckConfig out = cfg;
  out.check_id = def.id;
  if (out.trials <= 0) out.trials = def.trials;
  if (out.seed == 0) out.seed = kDefaultSeed;
  if (out.tolerance < 0.0) out.tolerance = def.tol;
  if (out.dims.empty()) out.dims = def.dims;
  if (out.epsilons.empty()) out.epsilons = def.epsilons;
  if (out.alphas.empty()) out.alphas = def.alphas;
  return out;
}

}  // namespace

std::vector<CheckInfo> registered_checks() {
  std::vector<CheckInfo> out;
  for (const auto& def : registry()) {
    out.push_back({def.id, def.claim, def.bound_mode});
  }
  return out;
}

VerificationReport run_check(const CheckConfig& cfg) {
  const CheckDef& def = find_check(cfg.check_id);
  const CheckConfig eff = resolve(cfg, def);

  VerificationReport rep;
  rep.check_id = def.id;
  rep.claim = def.claim;
  rep.bound_mode = def.bound_mode;
  rep.tolerance = eff.tolerance;
  rep.seed = eff.seed;

  Sink sink(eff.tolerance, eff.negate);
  const auto start = std::chrono::steady_clock::now();
  def.fn(eff, sink);
  const auto finish = std::chrono::steady_clock::now();

  rep.runtime_seconds =
      std::chrono::duration<double>(finish - start).count();
  rep.failures = sink.failures();
  rep.min_slack = sink.min_slack();
  rep.trials = sink.trials_seen();
  rep.records = sink.take();
  rep.rows = static_cast<long>(rep.records.size());
  return rep;
}

namespace {

std::vector<CheckConfig> parse_suite_config(const std::string& text,
                                            std::string& warning) {
  std::vector<CheckConfig> out;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    for (const auto& def : registry()) {
      CheckConfig c;
      c.check_id = def.id;
      out.push_back(c);
    }
    return out;
  }

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config must be a JSON object keyed by check_id");
  }
  if (j.empty()) {
    warning = "empty check list; nothing to run";
    return out;
  }

  // preserve registry order for determinism regardless of key order
  for (const auto& def : registry()) {
    if (!j.contains(def.id)) continue;
    const auto& item = j.at(def.id);
    if (!item.is_object()) {
      throw std::invalid_argument(std::string("config for ") + def.id +
                                  " must be an object");
    }
    CheckConfig c;
    c.check_id = def.id;
    for (const auto& [key, val] : item.items()) {
      if (key == "trials") {
        c.trials = val.get<long>();
        if (c.trials <= 0) throw std::invalid_argument("trials must be positive");
      } else if (key == "seed") {
        c.seed = val.get<uint64_t>();
      } else if (key == "tolerance") {
        c.tolerance = val.get<double>();
        if (c.tolerance < 0.0) {
          throw std::invalid_argument("tolerance must be nonnegative");
        }
      } else if (key == "dims") {
        c.dims = val.get<std::vector<std::vector<int>>>();
      } else if (key == "epsilons") {
        c.epsilons = val.get<std::vector<double>>();
      } else if (key == "alphas") {
        c.alphas = val.get<std::vector<double>>();
      } else if (key == "negate") {
        c.negate = val.get<bool>();
      } else {
        throw std::invalid_argument("unknown config field \"" + key +
                                    "\" for " + def.id);
      }
    }
    out.push_back(std::move(c));
  }
  // reject ids that matched no registry entry
  for (const auto& [key, val] : j.items()) {
    (void)val;
    find_check(key);
  }
  return out;
}

std::string csv_report(const std::vector<VerificationReport>& reports) {
  std::string csv = "check_id,trial,seed,params,digest,lhs,rhs,slack,pass\n";
  for (const auto& rep : reports) {
    for (const auto& r : rep.records) {
      csv += rep.check_id;
      csv += ',';
      csv += std::to_string(r.trial);
      csv += ',';
      csv += std::to_string(r.seed);
      csv += ',';
      csv += r.params;
      csv += ',';
      csv += r.digest;
      csv += ',';
      csv += fmt_g(r.lhs, 17);
      csv += ',';
      csv += fmt_g(r.rhs, 17);
      csv += ',';
      csv += fmt_g(r.slack, 17);
      csv += ',';
      csv += r.pass ? '1' : '0';
      csv += '\n';
    }
  }
  return csv;
}

nlohmann::ordered_json summary_json(const SuiteResult& suite) {
  nlohmann::ordered_json root;
  root["total_rows"] = suite.total_rows;
  root["total_failures"] = suite.total_failures;
  root["exit_code"] = suite.exit_code;
  if (!suite.warning.empty()) root["warning"] = suite.warning;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  constexpr long kMaxViolations = 25;
  for (const auto& rep : suite.reports) {
    nlohmann::ordered_json c;
    c["check_id"] = rep.check_id;
    c["claim"] = rep.claim;
    c["bound_mode"] = rep.bound_mode;
    c["trials"] = rep.trials;
    c["rows"] = rep.rows;
    c["failures"] = rep.failures;
    c["min_slack"] = rep.min_slack;
    c["tolerance"] = rep.tolerance;
    c["seed"] = rep.seed;
    c["runtime_seconds"] = rep.runtime_seconds;
    nlohmann::ordered_json viols = nlohmann::ordered_json::array();
    long listed = 0;
    for (const auto& r : rep.records) {
      if (r.pass) continue;
      if (listed == kMaxViolations) {
        c["violations_truncated"] = true;
        break;
      }
      nlohmann::ordered_json v;
      v["trial"] = r.trial;
      v["seed"] = r.seed;
      v["params"] = r.params;
      v["digest"] = r.digest;
      v["lhs"] = r.lhs;
      v["rhs"] = r.rhs;
      v["slack"] = r.slack;
      if (!r.state_json.empty()) {
        v["state"] = nlohmann::ordered_json::parse(r.state_json);
      }
      viols.push_back(std::move(v));
      ++listed;
    }
    c["violations"] = std::move(viols);
    checks.push_back(std::move(c));
  }
  root["checks"] = std::move(checks);
  return root;
}

}  // namespace

SuiteResult run_suite(const std::string& config_json,
                      const std::string& out_dir) {
  SuiteResult suite;
  const std::vector<CheckConfig> cfgs =
      parse_suite_config(config_json, suite.warning);

  for (const auto& cfg : cfgs) {
    suite.reports.push_back(run_check(cfg));
    const auto& rep = suite.reports.back();
    suite.total_rows += rep.rows;
    suite.total_failures += rep.failures;
  }
  suite.exit_code = suite.total_failures > 0 ? 1 : 0;

  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/report.csv", csv_report(suite.reports));
  write_text_file(out_dir + "/summary.json", summary_json(suite).dump(2) + "\n");
  return suite;
}

}  // namespace minent
