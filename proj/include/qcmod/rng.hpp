#pragma once

#include <cstdint>

#include "qcmod/geometry.hpp"

namespace qcmod {

/// Small deterministic generator (splitmix64-seeded xoshiro256++). Identical
/// seeds give identical streams on every platform; no libstdc++ distribution
/// internals are involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform01();                  // [0, 1)
  double uniform(double a, double b);  // [a, b)
  double normal();                     // standard Gaussian (Box-Muller)
  Vec unit_vector(int n);              // isotropic direction

 private:
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qcmod
