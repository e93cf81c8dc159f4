#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tmk/expr.hpp"
#include "tmk/jet.hpp"

namespace tmk {

// Coordinate-indexed fields evaluable at any chart point as jets.  Both
// field kinds are immutable after construction and safe to evaluate
// concurrently.

class MetricField {
public:
  explicit MetricField(int n, bool positive_definite_hint = true)
      : n_(n), pd_hint_(positive_definite_hint) {}
  virtual ~MetricField() = default;

  int dim() const { return n_; }
  bool positive_definite_hint() const { return pd_hint_; }
  virtual int max_order() const = 0;

  // Row-major n x n matrix of jets g_ij at x, each of the given order.
  virtual JetMat components(std::span<const double> x, int order) const = 0;

protected:
  int n_;
  bool pd_hint_;
};

class ConnectionField {
public:
  explicit ConnectionField(int n) : n_(n) {}
  virtual ~ConnectionField() = default;

  int dim() const { return n_; }
  virtual int max_order() const = 0;

  // Γ^k_{ij} as jets, flattened (k*n + i)*n + j.  Index convention:
  // D_{∂_i} ∂_j = Γ^k_{ij} ∂_k (first lower index is the direction).
  virtual JetMat components(std::span<const double> x, int order) const = 0;

protected:
  int n_;
};

using MetricPtr = std::shared_ptr<const MetricField>;
using ConnectionPtr = std::shared_ptr<const ConnectionField>;

// Componentwise jet evaluation of an expression matrix; DomainErrors are
// rethrown tagged with the failing (row, col).
JetMat eval_field(const std::vector<ExprPtr>& exprs, int rows, int cols,
                  std::span<const double> x, int order);

// Metric defined by closed-form expressions.  The component list is
// row-major n x n and must be symmetric (entries are checked structurally
// and, when a probe box is given, numerically on a grid).
class ExprMetric : public MetricField {
public:
  ExprMetric(int n, std::vector<ExprPtr> components, bool positive_definite_hint = true);
  int max_order() const override { return 3; }
  JetMat components(std::span<const double> x, int order) const override;
  const std::vector<ExprPtr>& exprs() const { return comps_; }

private:
  std::vector<ExprPtr> comps_;
};

// Connection defined by closed-form expressions for Γ^k_{ij}.
class ExprConnection : public ConnectionField {
public:
  ExprConnection(int n, std::vector<ExprPtr> coefficients);
  int max_order() const override { return 3; }
  JetMat components(std::span<const double> x, int order) const override;

private:
  std::vector<ExprPtr> coeffs_;
};

// Γ ≡ 0.
class FlatConnection : public ConnectionField {
public:
  explicit FlatConnection(int n) : ConnectionField(n) {}
  int max_order() const override { return 3; }
  JetMat components(std::span<const double> x, int order) const override;
};

// Christoffel symbols of g, evaluated lazily from metric jets.
class LeviCivitaConnection : public ConnectionField {
public:
  explicit LeviCivitaConnection(MetricPtr g);
  int max_order() const override { return g_->max_order() - 1; }
  JetMat components(std::span<const double> x, int order) const override;

private:
  MetricPtr g_;
};

// The connection conjugate to D through g:
//   Γ*^k_{ij} = g^{kl} (∂_i g_{jl} - Γ^m_{il} g_{jm}).
class DualConnection : public ConnectionField {
public:
  DualConnection(MetricPtr g, ConnectionPtr d);
  int max_order() const override;
  JetMat components(std::span<const double> x, int order) const override;

private:
  MetricPtr g_;
  ConnectionPtr d_;
};

ConnectionPtr dual_connection(MetricPtr g, ConnectionPtr d);

}  // namespace tmk
