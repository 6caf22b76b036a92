#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "minent/eig.hpp"
#include "minent/entropies.hpp"
#include "minent/metrics.hpp"
#include "minent/rng.hpp"
#include "minent/sdp.hpp"
#include "minent/smoothing.hpp"
#include "minent/state.hpp"
#include "minent/typeclass.hpp"

using namespace minent;

namespace {

CMat diag_state(std::initializer_list<double> vals) {
  CMat m = CMat::Zero(vals.size(), vals.size());
  long i = 0;
  for (double v : vals) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_CASE("spectrum extraction matches the eigenvalues") {
  CMat rho = random_density({2, 2}, 4, 3);
  Spectrum s = spectrum_of(rho);
  RVec vals = eigvals_hermitian(rho);
  std::vector<double> exp = s.expand();
  REQUIRE(static_cast<long>(exp.size()) == vals.size());
  for (long i = 0; i < vals.size(); ++i) {
    CHECK(exp[static_cast<size_t>(i)] == doctest::Approx(vals(i)).epsilon(1e-12));
  }
}

TEST_CASE("matrix-level smoothing agrees with the spectral one") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    CMat rho = random_density({3}, 3, seed);
    CMat u = random_unitary(3, derive_seed(seed, 9));
    CMat rotated = hermitize(u * rho * u.adjoint());
    for (double eps : {0.05, 0.3}) {
      CHECK(smooth_hmin_unconditional(rho, eps) ==
            doctest::Approx(smooth_hmin_unconditional(rotated, eps)).epsilon(1e-9));
      CHECK(smooth_h0(rho, eps) ==
            doctest::Approx(smooth_h0(rotated, eps)).epsilon(1e-9));
      CHECK(smooth_h0_exactified(rho, eps) >= smooth_h0(rho, eps) - 1e-12);
    }
  }
  CHECK(smooth_hmin_unconditional(diag_state({0.75, 0.25}), 0.6) ==
        doctest::Approx(-std::log2(0.55)).epsilon(1e-12));
}

TEST_CASE("truncated states stay inside the purified-distance ball") {
  for (uint64_t seed = 10; seed < 50; ++seed) {
    CMat rho = random_density({2, 2}, 4, seed);
    for (double eps : {0.05, 0.1, 0.3}) {
      double target = std::sqrt(1.0 - eps * eps);
      CMat cut = truncate_state(rho, target, TruncationDirection::cut_large);
      CHECK(state_trace(cut) == doctest::Approx(target).epsilon(1e-10));
      CHECK(min_eigval(cut) > -1e-10);
      CHECK(purified_distance(cut, rho).value <= eps + 1e-9);

      CMat cut_s = truncate_state(rho, target, TruncationDirection::cut_small);
      CHECK(state_trace(cut_s) == doctest::Approx(target).epsilon(1e-10));
      CHECK(purified_distance(cut_s, rho).value <= eps + 1e-9);

      // removed mass only lowers eigenvalues, never rotates the basis
      CHECK(max_abs(rho * cut - cut * rho) < 1e-9);
    }
  }
}

TEST_CASE("iid smoothing front end") {
  Spectrum base = Spectrum::from_values({0.75, 0.25});
  CHECK(smooth_entropy_iid(base, 500, 0.05, SmoothMeasure::hmin) ==
        doctest::Approx(iid_smooth_hmin(base, 500, 0.05)).epsilon(1e-12));
  CHECK(smooth_entropy_iid(base, 500, 0.05, SmoothMeasure::h0) ==
        doctest::Approx(iid_smooth_h0(base, 500, 0.05)).epsilon(1e-12));
  CHECK_THROWS_AS(smooth_entropy_iid(base, 500, 0.0, SmoothMeasure::hmin),
                  std::invalid_argument);
  CHECK_THROWS_AS(smooth_entropy_iid(base, 500, 1.0, SmoothMeasure::hmin),
                  std::invalid_argument);
}

TEST_CASE("chain-rule witness properties") {
  for (uint64_t seed = 100; seed < 140; ++seed) {
    CMat rho = random_density({2, 2}, 4, seed);
    for (double eps : {0.05, 0.1}) {
      ChainRuleWitness w = chain_rule_witness(rho, 2, 2, eps);

      // rho_hat is a valid subnormalized state in the 3 eps ball
      CHECK(min_eigval(w.rho_hat) > -1e-10);
      CHECK(state_trace(w.rho_hat) <= 1.0 + 1e-10);
      CHECK(w.distance <= 3.0 * eps + 1e-9);
      CHECK(purified_distance(w.rho_hat, rho).value ==
            doctest::Approx(w.distance).epsilon(1e-9));

      // projector really projects and has the stated rank
      const CMat& pb = w.projector_b;
      CHECK(max_abs(pb * pb - pb) < 1e-9);
      CHECK(std::abs(pb.trace().real() - std::exp2(w.log2_rank)) < 1e-7);

      // operator inequality certifying the value
      CMat cap = std::exp2(-w.lambda) * tensor(CMat::Identity(2, 2), pb) -
                 w.rho_hat;
      CHECK(min_eigval(cap) > -1e-9);

      // certified value is a genuine lower bound on the SDP of rho_hat
      CHECK(w.value == doctest::Approx(w.lambda - w.log2_rank).epsilon(1e-12));
      CHECK(hmin_conditional(w.rho_hat, 2, 2).value >= w.value - 1e-7);
    }
  }
}

TEST_CASE("conditional smoothing bounds are ordered and consistent") {
  for (uint64_t seed = 200; seed < 230; ++seed) {
    CMat rho = random_density({2, 2}, 4, seed);
    for (double eps : {0.05, 0.1, 0.3}) {
      ConditionalHminBounds b = smooth_hmin_conditional_bounds(rho, 2, 2, eps);

      // the exact eps = 0 value sits below the candidate upper bound
      CHECK(b.exact0 <= b.upper + 1e-7);

      // lower matches its defining formula
      CMat rho_b = partial_trace(rho, {2, 2}, {1});
      double expect = smooth_hmin_unconditional(rho, eps) -
                      smooth_h0_exactified(rho_b, eps);
      CHECK(b.lower == doctest::Approx(expect).epsilon(1e-9));

      // exact0 is the plain SDP value
      CHECK(b.exact0 ==
            doctest::Approx(hmin_conditional(rho, 2, 2).value).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(
      smooth_hmin_conditional_bounds(random_density({2, 2}, 4, 1), 2, 2, 0.5),
      std::invalid_argument);
  CHECK_THROWS_AS(
      smooth_hmin_conditional_bounds(random_density({2, 2}, 4, 1), 3, 2, 0.1),
      std::invalid_argument);
}

TEST_CASE("product states make the chain-rule bound tight at eps = 0") {
  // H_min(AB) - H_0(B) <= H_min(A|B) with equality for flat marginals
  CMat a = diag_state({0.7, 0.3});
  CMat b = CMat::Identity(2, 2) * 0.5;
  CMat rho = tensor(a, b);
  double lhs = hmin(rho) - h0(partial_trace(rho, {2, 2}, {1}));
  double sdp = hmin_conditional(rho, 2, 2).value;
  CHECK(lhs <= sdp + 1e-7);
  CHECK(lhs == doctest::Approx(sdp).epsilon(1e-6));
}
