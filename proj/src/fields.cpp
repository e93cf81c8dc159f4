#include "tmk/fields.hpp"

#include <cmath>

namespace tmk {

JetMat eval_field(const std::vector<ExprPtr>& exprs, int rows, int cols,
                  std::span<const double> x, int order) {
  JetMat out;
  out.reserve(exprs.size());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const auto& e = exprs[static_cast<std::size_t>(i * cols + j)];
      try {
        out.push_back(eval_jet(e, x, order));
      } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " at component (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  return out;
}

ExprMetric::ExprMetric(int n, std::vector<ExprPtr> components, bool pd_hint)
    : MetricField(n, pd_hint), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != n * n) {
    throw Error("ExprMetric: expected " + std::to_string(n * n) + " components");
  }
}

JetMat ExprMetric::components(std::span<const double> x, int order) const {
  return eval_field(comps_, n_, n_, x, order);
}

ExprConnection::ExprConnection(int n, std::vector<ExprPtr> coefficients)
    : ConnectionField(n), coeffs_(std::move(coefficients)) {
  if (static_cast<int>(coeffs_.size()) != n * n * n) {
    throw Error("ExprConnection: expected " + std::to_string(n * n * n) +
                " coefficients");
  }
}

JetMat ExprConnection::components(std::span<const double> x, int order) const {
  return eval_field(coeffs_, n_ * n_, n_, x, order);
}

JetMat FlatConnection::components(std::span<const double> x, int order) const {
  const int n = n_;
  (void)x;
  JetMat out(static_cast<std::size_t>(n * n * n),
             Jet::constant(static_cast<int>(x.size()), order, 0.0));
  return out;
}

LeviCivitaConnection::LeviCivitaConnection(MetricPtr g)
    : ConnectionField(g->dim()), g_(std::move(g)) {}

JetMat LeviCivitaConnection::components(std::span<const double> x, int order) const {
  const int n = n_;
  if (order > max_order()) {
    throw OrderExceeded("Levi-Civita coefficients of order " + std::to_string(order) +
                        " need metric jets beyond the supported order");
  }
  const JetMat gj = g_->components(x, order + 1);
  const JetMat ginv = jet_mat_inverse(gj, n);
  auto G = [&](int i, int j) -> const Jet& { return gj[static_cast<std::size_t>(i * n + j)]; };
  JetMat out(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        // shared lower-index combination ∂_i g_lj + ∂_j g_li - ∂_l g_ij
        Jet s = G(l, j).partial(i) + G(l, i).partial(j) - G(i, j).partial(l);
        if (l == 0) {
          for (int k = 0; k < n; ++k) {
            out[static_cast<std::size_t>((k * n + i) * n + j)] =
                0.5 * (ginv[static_cast<std::size_t>(k * n + l)] * s);
          }
        } else {
          for (int k = 0; k < n; ++k) {
            out[static_cast<std::size_t>((k * n + i) * n + j)] +=
                0.5 * (ginv[static_cast<std::size_t>(k * n + l)] * s);
          }
        }
      }
    }
  }
  return out;
}

DualConnection::DualConnection(MetricPtr g, ConnectionPtr d)
    : ConnectionField(g->dim()), g_(std::move(g)), d_(std::move(d)) {
  if (g_->dim() != d_->dim()) throw Error("DualConnection: dimension mismatch");
}

int DualConnection::max_order() const {
  return std::min(g_->max_order() - 1, d_->max_order());
}

JetMat DualConnection::components(std::span<const double> x, int order) const {
  const int n = n_;
  if (order > max_order()) {
    throw OrderExceeded("dual connection jets of order " + std::to_string(order) +
                        " unavailable");
  }
  const JetMat gj = g_->components(x, order + 1);
  const JetMat cj = d_->components(x, order);
  const JetMat ginv = jet_mat_inverse(gj, n);
  auto G = [&](int i, int j) -> const Jet& { return gj[static_cast<std::size_t>(i * n + j)]; };
  auto C = [&](int k, int i, int j) -> const Jet& {
    return cj[static_cast<std::size_t>((k * n + i) * n + j)];
  };
  JetMat out(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        Jet s = G(j, l).partial(i);
        for (int m = 0; m < n; ++m) s = s - C(m, i, l) * G(j, m);
        if (l == 0) {
          for (int k = 0; k < n; ++k) {
            out[static_cast<std::size_t>((k * n + i) * n + j)] =
                ginv[static_cast<std::size_t>(k * n + l)] * s;
          }
        } else {
          for (int k = 0; k < n; ++k) {
            out[static_cast<std::size_t>((k * n + i) * n + j)] +=
                ginv[static_cast<std::size_t>(k * n + l)] * s;
          }
        }
      }
    }
  }
  return out;
}

ConnectionPtr dual_connection(MetricPtr g, ConnectionPtr d) {
  return std::make_shared<DualConnection>(std::move(g), std::move(d));
}

}  // namespace tmk
