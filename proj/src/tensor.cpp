#include "tmk/tensor.hpp"

#include <cmath>

namespace tmk {

namespace {

std::size_t ipow(int n, int k) {
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::size_t>(n);
  return r;
}

}  // namespace

TensorValue::TensorValue(std::vector<Slot> variance, int n, Vec base_point)
    : variance_(std::move(variance)),
      n_(n),
      base_point_(std::move(base_point)),
      entries_(ipow(n, static_cast<int>(variance_.size())), 0.0) {}

std::size_t TensorValue::offset(std::initializer_list<int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw Error("tensor index rank mismatch");
  std::size_t o = 0;
  for (int i : idx) o = o * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  return o;
}

double TensorValue::sup_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

TensorValue contract(const TensorValue& t, int slot_a, int slot_b) {
  const int r = t.rank();
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= r || slot_b >= r)
    throw Error("contract: bad slots");
  if (t.variance()[static_cast<std::size_t>(slot_a)] ==
      t.variance()[static_cast<std::size_t>(slot_b)])
    throw Error("contract: slots must pair one Up with one Down");
  std::vector<Slot> var;
  for (int s = 0; s < r; ++s) {
    if (s != slot_a && s != slot_b) var.push_back(t.variance()[static_cast<std::size_t>(s)]);
  }
  TensorValue out(var, t.dim(), t.base_point());
  const int n = t.dim();
  std::vector<int> idx(static_cast<std::size_t>(r), 0);
  std::vector<int> out_idx(static_cast<std::size_t>(r - 2), 0);
  // Walk the output multi-index, summing the paired slots.
  const std::size_t out_count = out.entries().size();
  for (std::size_t o = 0; o < out_count; ++o) {
    std::size_t rem = o;
    for (int s = r - 3; s >= 0; --s) {
      out_idx[static_cast<std::size_t>(s)] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    int pos = 0;
    for (int s = 0; s < r; ++s) {
      if (s == slot_a || s == slot_b) continue;
      idx[static_cast<std::size_t>(s)] = out_idx[static_cast<std::size_t>(pos++)];
    }
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      idx[static_cast<std::size_t>(slot_a)] = k;
      idx[static_cast<std::size_t>(slot_b)] = k;
      std::size_t off = 0;
      for (int s = 0; s < r; ++s)
        off = off * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[static_cast<std::size_t>(s)]);
      sum += t.entries()[off];
    }
    out.entries_[o] = sum;
  }
  return out;
}

double tensor_norm_sq(const Mat& g, const Mat& g_inv, const TensorValue& t) {
  const int r = t.rank();
  const int n = t.dim();
  const std::size_t count = t.entries().size();
  double total = 0.0;
  std::vector<int> ia(static_cast<std::size_t>(r), 0), ib(static_cast<std::size_t>(r), 0);
  for (std::size_t a = 0; a < count; ++a) {
    std::size_t rem = a;
    for (int s = r - 1; s >= 0; --s) {
      ia[static_cast<std::size_t>(s)] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    const double va = t.entries()[a];
    if (va == 0.0) continue;
    for (std::size_t b = 0; b < count; ++b) {
      rem = b;
      for (int s = r - 1; s >= 0; --s) {
        ib[static_cast<std::size_t>(s)] = static_cast<int>(rem % static_cast<std::size_t>(n));
        rem /= static_cast<std::size_t>(n);
      }
      const double vb = t.entries()[b];
      if (vb == 0.0) continue;
      double w = 1.0;
      for (int s = 0; s < r; ++s) {
        const int i = ia[static_cast<std::size_t>(s)];
        const int j = ib[static_cast<std::size_t>(s)];
        w *= (t.variance()[static_cast<std::size_t>(s)] == Slot::Up) ? g(i, j) : g_inv(i, j);
        if (w == 0.0) break;
      }
      total += va * vb * w;
    }
  }
  return total;
}

}  // namespace tmk
