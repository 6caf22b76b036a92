#pragma once

#include <complex>
#include <cstdint>

namespace minent {

// Counter-based generator: each output is the splitmix64 finalizer applied to
// key + GAMMA * counter, so streams are reproducible and cheap to split.
class CounterRng {
 public:
  explicit CounterRng(uint64_t key) : key_(key) {}

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t next_u64() {
    ++counter_;
    return mix(key_ + 0x9e3779b97f4a7c15ULL * counter_);
  }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log argument.
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double gauss();

  std::complex<double> cgauss() {
    double re = gauss();
    double im = gauss();
    return {re, im};
  }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  return CounterRng::mix(master + 0x9e3779b97f4a7c15ULL * (index + 1));
}

}  // namespace minent
