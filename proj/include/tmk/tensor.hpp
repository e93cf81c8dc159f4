#pragma once

#include <initializer_list>
#include <vector>

#include "tmk/linalg.hpp"

namespace tmk {

enum class Slot { Up, Down };

// Pointwise multi-indexed array with declared variance.  All slots share
// one dimension n; entry count is n^rank.
class TensorValue {
public:
  TensorValue() = default;
  TensorValue(std::vector<Slot> variance, int n, Vec base_point = {});

  int rank() const { return static_cast<int>(variance_.size()); }
  int dim() const { return n_; }
  const std::vector<Slot>& variance() const { return variance_; }
  const Vec& base_point() const { return base_point_; }
  const std::vector<double>& entries() const { return entries_; }

  double& at(std::initializer_list<int> idx) { return entries_[offset(idx)]; }
  double at(std::initializer_list<int> idx) const { return entries_[offset(idx)]; }

  double sup_abs() const;

  // Contraction of one Up against one Down slot.
  friend TensorValue contract(const TensorValue& t, int slot_a, int slot_b);

private:
  std::size_t offset(std::initializer_list<int> idx) const;

  std::vector<Slot> variance_;
  int n_ = 0;
  Vec base_point_;
  std::vector<double> entries_;
};

TensorValue contract(const TensorValue& t, int slot_a, int slot_b);

// Full self-contraction |T|^2 using g on Up slots and g^{-1} on Down slots.
// May be negative for indefinite metrics.
double tensor_norm_sq(const Mat& g, const Mat& g_inv, const TensorValue& t);

}  // namespace tmk
