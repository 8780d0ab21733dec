#pragma once

#include "kplus/qseries.hpp"

#include <cstdint>

namespace testing_support {

extern std::uint64_t g_seed;

/// splitmix64; small and reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t s_;
};

inline kplus::GaussianRational random_coeff(Rng& r) {
  return {mpq_class(r.range(-9, 9), r.range(1, 4)), mpq_class(r.range(-3, 3), r.range(1, 3))};
}

inline kplus::QSeries random_series(Rng& r, int prec) {
  int val = static_cast<int>(r.range(-3, 2));
  std::vector<kplus::GaussianRational> c;
  for (int n = val; n < prec; ++n) c.push_back(random_coeff(r));
  if (c.front().is_zero()) c.front() = kplus::GaussianRational(1);
  return kplus::QSeries(val, c, prec);
}

}  // namespace testing_support
