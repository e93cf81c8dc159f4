#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "tmk/errors.hpp"
#include "tmk/linalg.hpp"

namespace tmk {

// Deterministic sample plan: seed is mandatory, the box bounds the base
// chart.  Tangent components are drawn from [-1, 1]^n from the same stream,
// so a (spec, dimension) pair always enumerates the same points.
struct SampleSpec {
  std::uint64_t seed = 0;
  int count = 0;
  std::vector<std::array<double, 2>> box;
};

// xorshift-free deterministic generator: std::mt19937_64 with an explicit
// uint64 -> [0,1) mapping (distributions vary across standard libraries).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}
  double unit();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
  std::uint64_t next();
  std::uint64_t state_;
};

struct SamplePoint {
  Vec x;
  Vec xi;
};

std::vector<SamplePoint> draw_samples(const SampleSpec& spec, int n);

// Parallelism budget from TMK_THREADS (>=1); defaults to a small number of
// hardware threads.
int thread_budget();

// Deterministic parallel map: fn(i) runs for i in [0, count), results land
// in index order regardless of scheduling.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace tmk
