#include "tmk/sampling.hpp"

#include <cstdlib>
#include <mutex>
#include <thread>

namespace tmk {

std::uint64_t Rng::next() {
  // splitmix64; stable across platforms.
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<SamplePoint> draw_samples(const SampleSpec& spec, int n) {
  if (spec.count < 1) throw Error("sample count must be >= 1");
  if (static_cast<int>(spec.box.size()) != n) {
    throw Error("sample box dimension " + std::to_string(spec.box.size()) +
                " does not match chart dimension " + std::to_string(n));
  }
  Rng rng(spec.seed);
  std::vector<SamplePoint> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int s = 0; s < spec.count; ++s) {
    SamplePoint p;
    p.x.resize(static_cast<std::size_t>(n));
    p.xi.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto& b = spec.box[static_cast<std::size_t>(i)];
      p.x[static_cast<std::size_t>(i)] = rng.uniform(b[0], b[1]);
    }
    for (int i = 0; i < n; ++i)
      p.xi[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
    out.push_back(std::move(p));
  }
  return out;
}

int thread_budget() {
  int budget = static_cast<int>(std::thread::hardware_concurrency());
  if (budget < 1) budget = 1;
  if (budget > 8) budget = 8;
  if (const char* env = std::getenv("TMK_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) budget = std::min(budget, cap);
  }
  return budget;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr first_error;
  std::mutex guard;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (int i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tmk
