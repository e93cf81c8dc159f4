#include "tmk/models.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace tmk {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Grid points of a box, capped resolution per dimension.
std::vector<Vec> grid_points(const Box& box, int per_dim) {
  const int m = static_cast<int>(box.size());
  std::vector<Vec> pts;
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (;;) {
    Vec p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const auto& b = box[static_cast<std::size_t>(i)];
      p[static_cast<std::size_t>(i)] =
          b[0] + (b[1] - b[0]) * (per_dim == 1 ? 0.5 : static_cast<double>(idx[static_cast<std::size_t>(i)]) / (per_dim - 1));
    }
    pts.push_back(std::move(p));
    int d = m - 1;
    while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == per_dim) {
      idx[static_cast<std::size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;
  }
  return pts;
}

Mat rho_value(const RhoSpec& spec, std::span<const double> xi) {
  Mat r(spec.n, spec.n);
  for (int a = 0; a < spec.m; ++a) {
    const double c = xi[static_cast<std::size_t>(a)];
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j)
        r(i, j) += c * spec.basis[static_cast<std::size_t>(a)](i, j);
  }
  return r;
}

bool rho_pd_on_grid(const RhoSpec& spec, int per_dim) {
  for (const Vec& p : grid_points(spec.domain_box, per_dim)) {
    if (!is_positive_definite(rho_value(spec, p), 1e-9)) return false;
  }
  return true;
}

Box shrink_box(const Box& box, double factor) {
  Box out = box;
  for (auto& b : out) {
    const double c = 0.5 * (b[0] + b[1]);
    const double h = 0.5 * (b[1] - b[0]) * factor;
    b = {c - h, c + h};
  }
  return out;
}

void check_basis_independent(const RhoSpec& spec) {
  // Gram matrix of vectorized basis elements.
  const int m = spec.m;
  Mat gram(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double s = 0.0;
      for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j)
          s += spec.basis[static_cast<std::size_t>(a)](i, j) *
               spec.basis[static_cast<std::size_t>(b)](i, j);
      gram(a, b) = s;
    }
  double scale = 0.0;
  for (int a = 0; a < m; ++a) scale = std::max(scale, gram(a, a));
  if (scale <= 0.0 || std::abs(mat_det(gram)) < 1e-12 * std::pow(scale, m)) {
    throw SingularRho("rho basis matrices are linearly dependent");
  }
}

}  // namespace

// --------------------------------------------------------------------------
// Fisher metric

FisherMetric::FisherMetric(RhoSpec spec) : MetricField(spec.n + spec.m), spec_(std::move(spec)) {
  for (const Mat& b : spec_.basis) {
    for (int i = 0; i < spec_.n; ++i)
      for (int j = i + 1; j < spec_.n; ++j)
        if (std::abs(b(i, j) - b(j, i)) > 1e-14)
          throw Error("FisherMetric: basis matrix not symmetric");
  }
}

JetMat FisherMetric::components(std::span<const double> x, int order) const {
  const int n = spec_.n;
  const int m = spec_.m;
  const int N = n + m;

  // ρ(ξ) as jets; ξ occupies chart slots n..n+m-1.
  JetMat rho(static_cast<std::size_t>(n) * n, Jet::constant(N, order, 0.0));
  for (int a = 0; a < m; ++a) {
    const Jet xia =
        Jet::coordinate(N, order, n + a, x[static_cast<std::size_t>(n + a)]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double c = spec_.basis[static_cast<std::size_t>(a)](i, j);
        if (c != 0.0) rho[static_cast<std::size_t>(i * n + j)] += c * xia;
      }
  }

  {
    Mat rv(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rv(i, j) = rho[static_cast<std::size_t>(i * n + j)].value();
    if (!is_positive_definite(rv, 1e-12)) {
      std::ostringstream os;
      os << "rho(xi) not positive definite at xi =";
      for (int a = 0; a < m; ++a) os << ' ' << x[static_cast<std::size_t>(n + a)];
      throw NotPositiveDefinite(os.str());
    }
  }

  const JetMat P = jet_mat_inverse(rho, n);
  auto Pat = [&](int i, int j) -> const Jet& { return P[static_cast<std::size_t>(i * n + j)]; };

  // θ as jets.
  JetMat theta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    theta[static_cast<std::size_t>(i)] =
        Jet::coordinate(N, order, i, x[static_cast<std::size_t>(i)]);

  // w = P θ
  JetMat w(static_cast<std::size_t>(n), Jet::constant(N, order, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(i)] += Pat(i, j) * theta[static_cast<std::size_t>(j)];

  // PB_a = P · B_a as jets; v_a = PB_a · w = P B_a P θ.
  std::vector<JetMat> PB(static_cast<std::size_t>(m));
  std::vector<JetMat> v(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    const Mat& B = spec_.basis[static_cast<std::size_t>(a)];
    JetMat pb(static_cast<std::size_t>(n) * n, Jet::constant(N, order, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet s = Jet::constant(N, order, 0.0);
        for (int l = 0; l < n; ++l) {
          const double c = B(l, j);
          if (c != 0.0) s += Pat(i, l) * c;
        }
        pb[static_cast<std::size_t>(i * n + j)] = s;
      }
    JetMat va(static_cast<std::size_t>(n), Jet::constant(N, order, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        va[static_cast<std::size_t>(i)] += pb[static_cast<std::size_t>(i * n + j)] * w[static_cast<std::size_t>(j)];
    PB[static_cast<std::size_t>(a)] = std::move(pb);
    v[static_cast<std::size_t>(a)] = std::move(va);
  }

  JetMat out(static_cast<std::size_t>(N) * N, Jet::constant(N, order, 0.0));
  auto set = [&](int i, int j, const Jet& val) {
    out[static_cast<std::size_t>(i * N + j)] = val;
  };

  // θθ block: P.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) set(i, j, Pat(i, j));

  // θξ block: -(P B_a P θ)_i.
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) {
      const Jet val = -v[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
      set(i, n + a, val);
      set(n + a, i, val);
    }

  // ξξ block: θᵀ P B_a P B_b P θ (symmetrized by a<->b) + ½ tr(P B_a P B_b).
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      // θᵀ PB_a · v_b = θᵀ P B_a P B_b P θ
      Jet quad = Jet::constant(N, order, 0.0);
      for (int i = 0; i < n; ++i) {
        Jet row = Jet::constant(N, order, 0.0);
        for (int j = 0; j < n; ++j)
          row += PB[static_cast<std::size_t>(a)][static_cast<std::size_t>(i * n + j)] *
                 v[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
        quad += theta[static_cast<std::size_t>(i)] * row;
      }
      Jet quad2 = Jet::constant(N, order, 0.0);
      for (int i = 0; i < n; ++i) {
        Jet row = Jet::constant(N, order, 0.0);
        for (int j = 0; j < n; ++j)
          row += PB[static_cast<std::size_t>(b)][static_cast<std::size_t>(i * n + j)] *
                 v[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
        quad2 += theta[static_cast<std::size_t>(i)] * row;
      }
      Jet tr = Jet::constant(N, order, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          tr += PB[static_cast<std::size_t>(a)][static_cast<std::size_t>(i * n + j)] *
                PB[static_cast<std::size_t>(b)][static_cast<std::size_t>(j * n + i)];
      const Jet val = 0.5 * (quad + quad2) + 0.5 * tr;
      set(n + a, n + b, val);
      set(n + b, n + a, val);
    }
  }
  return out;
}

Model StatisticalModel::structure() const {
  return Model{g_rho, D_dual, chart_dim, "statistical"};
}

Model StatisticalModel::flat_pair() const {
  return Model{g_rho, D_flat, chart_dim, "statistical-flat"};
}

StatisticalModel build_statistical_model(const RhoSpec& spec) {
  if (spec.m < 1 || spec.n < 1) throw Error("rho spec needs m, n >= 1");
  if (static_cast<int>(spec.basis.size()) != spec.m)
    throw Error("rho spec basis count != m");
  if (static_cast<int>(spec.domain_box.size()) != spec.m)
    throw Error("rho spec domain box dimension != m");
  if (spec.n + spec.m > Jet::kMaxDim / 2)
    throw Error("statistical model chart dimension too large");
  check_basis_independent(spec);
  for (const Vec& p : grid_points(spec.domain_box, 7)) {
    if (!is_positive_definite(rho_value(spec, p), 1e-9)) {
      std::ostringstream os;
      os << "rho(xi) leaves the positive cone at xi =";
      for (double v : p) os << ' ' << v;
      throw NotPositiveDefinite(os.str());
    }
  }
  StatisticalModel model;
  model.spec = spec;
  model.chart_dim = spec.n + spec.m;
  model.g_rho = std::make_shared<FisherMetric>(spec);
  model.D_flat = std::make_shared<FlatConnection>(model.chart_dim);
  model.D_dual = dual_connection(model.g_rho, model.D_flat);
  return model;
}

RhoSpec build_rho_normal_form(double a, double b, Box box) {
  if (box.size() != 2) throw Error("normal-form box must be 2-dimensional");
  RhoSpec spec;
  spec.m = 2;
  spec.n = 2;
  spec.basis = {Mat(2, 2), Mat(2, 2)};
  spec.basis[0](0, 0) = 1.0;
  spec.basis[0](0, 1) = spec.basis[0](1, 0) = a;
  spec.basis[1](1, 1) = 1.0;
  spec.basis[1](0, 1) = spec.basis[1](1, 0) = b;
  spec.domain_box = std::move(box);
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (rho_pd_on_grid(spec, 9)) return spec;
    spec.domain_box = shrink_box(spec.domain_box, 0.5);
  }
  throw EmptyDomain("no sub-box of the requested domain keeps rho positive definite");
}

RhoReduction reduce_rho_to_normal_form(const RhoSpec& spec) {
  if (spec.m != 2 || spec.n != 2)
    throw Error("normal-form reduction applies to 2x2 specs");
  check_basis_independent(spec);

  // Fixed congruence candidates for the dependent-diagonal case.
  static const std::vector<std::array<double, 4>> kCongruences = {
      {1, 1, 0, 1}, {1, 0, 1, 1}, {1, -1, 0, 1}, {2, 1, 1, 1}};

  std::vector<Mat> basis = spec.basis;
  Mat A = Mat::identity(2);
  auto diag_transform = [&](const std::vector<Mat>& bs) {
    Mat S(2, 2);
    S(0, 0) = bs[0](0, 0);
    S(0, 1) = bs[1](0, 0);
    S(1, 0) = bs[0](1, 1);
    S(1, 1) = bs[1](1, 1);
    return S;
  };

  Mat S = diag_transform(basis);
  double scale = std::max({std::abs(S(0, 0)), std::abs(S(0, 1)), std::abs(S(1, 0)),
                           std::abs(S(1, 1)), 1e-30});
  if (std::abs(mat_det(S)) <= 1e-9 * scale * scale) {
    // Case 2: diagonals dependent; conjugate by a fixed matrix until the
    // diagonal functionals separate.
    bool fixed = false;
    for (const auto& cand : kCongruences) {
      Mat Ac(2, 2);
      Ac(0, 0) = cand[0];
      Ac(0, 1) = cand[1];
      Ac(1, 0) = cand[2];
      Ac(1, 1) = cand[3];
      std::vector<Mat> nb;
      nb.reserve(2);
      for (const Mat& B : basis) nb.push_back(mat_mul(Ac, mat_mul(B, mat_transpose(Ac))));
      Mat Sc = diag_transform(nb);
      const double sc = std::max({std::abs(Sc(0, 0)), std::abs(Sc(0, 1)),
                                  std::abs(Sc(1, 0)), std::abs(Sc(1, 1)), 1e-30});
      if (std::abs(mat_det(Sc)) > 1e-9 * sc * sc) {
        basis = std::move(nb);
        A = Ac;
        S = Sc;
        fixed = true;
        break;
      }
    }
    if (!fixed) throw SingularRho("no fixed congruence separates the diagonals");
  }

  const Mat Sinv = mat_inverse(S);
  // New basis in ξ' coordinates: B'_c = Σ_a S⁻¹(a,c) B_a.
  std::vector<Mat> nb = {Mat(2, 2), Mat(2, 2)};
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          nb[static_cast<std::size_t>(c)](i, j) +=
              Sinv(a, c) * basis[static_cast<std::size_t>(a)](i, j);

  if (std::abs(nb[0](0, 0) - 1.0) > 1e-9 || std::abs(nb[0](1, 1)) > 1e-9 ||
      std::abs(nb[1](0, 0)) > 1e-9 || std::abs(nb[1](1, 1) - 1.0) > 1e-9) {
    throw Error("normal-form reduction produced an unexpected basis");
  }

  RhoReduction red;
  red.a = nb[0](0, 1);
  red.b = nb[1](0, 1);
  red.xi_transform = S;
  red.theta_transform = A;

  // Seed box: image of the original center, then shrink until PD.
  Vec center(2);
  for (int i = 0; i < 2; ++i)
    center[static_cast<std::size_t>(i)] = 0.5 * (spec.domain_box[static_cast<std::size_t>(i)][0] +
                                                 spec.domain_box[static_cast<std::size_t>(i)][1]);
  const Vec cprime = mat_vec(S, center);
  double halfwidth = 0.0;
  for (int i = 0; i < 2; ++i)
    halfwidth = std::max(halfwidth,
                         0.25 * std::abs(spec.domain_box[static_cast<std::size_t>(i)][1] -
                                         spec.domain_box[static_cast<std::size_t>(i)][0]));
  Box nbbox = {{cprime[0] - halfwidth, cprime[0] + halfwidth},
               {cprime[1] - halfwidth, cprime[1] + halfwidth}};
  RhoSpec nspec{2, 2, nb, nbbox};
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (rho_pd_on_grid(nspec, 7)) {
      red.normal_spec = nspec;
      return red;
    }
    nspec.domain_box = shrink_box(nspec.domain_box, 0.5);
  }
  throw EmptyDomain("reduced normal form admits no positive-definite box");
}

// --------------------------------------------------------------------------
// Weyl family

WeylConnection::WeylConnection(MetricPtr g, double k)
    : ConnectionField(g->dim()), g_(std::move(g)), k_(k) {}

JetMat WeylConnection::components(std::span<const double> x, int order) const {
  const int n = n_;
  const JetMat gj = g_->components(x, order + 1);
  const JetMat lc = christoffel_jets(gj, n);
  const JetMat ginv = jet_mat_inverse(gj, n);
  // ω = k dθ with θ the first coordinate; ω♯^k = k g^{k0}.
  JetMat out = lc;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Jet corr = Jet::constant(static_cast<int>(x.size()), order, 0.0);
        if (i == 0 && k == j) corr += Jet::constant(static_cast<int>(x.size()), order, k_);
        if (j == 0 && k == i) corr += Jet::constant(static_cast<int>(x.size()), order, k_);
        corr -= gj[static_cast<std::size_t>(i * n + j)] *
                (k_ * ginv[static_cast<std::size_t>(k * n + 0)]);
        out[static_cast<std::size_t>((k * n + i) * n + j)] -= 0.5 * corr;
      }
    }
  }
  return out;
}

Model WeylModel::structure() const {
  return Model{g_lambda, D_star_lambda, spec.n, "weyl"};
}

namespace {

// g_λ = g + λ dθ ⊗ dθ (the |ω|² normalization cancels for ω = k dθ).
class ThetaShiftedMetric : public MetricField {
public:
  ThetaShiftedMetric(MetricPtr base, double lambda)
      : MetricField(base->dim(), lambda > -1.0), base_(std::move(base)), lambda_(lambda) {}
  int max_order() const override { return base_->max_order(); }
  JetMat components(std::span<const double> x, int order) const override {
    JetMat out = base_->components(x, order);
    out[0].value() += lambda_;
    return out;
  }

private:
  MetricPtr base_;
  double lambda_;
};

}  // namespace

WeylModel build_weyl_product(const WeylSpec& spec) {
  if (spec.n < 3) throw DimensionTooSmall("Weyl product needs total dimension >= 3");
  if (spec.n > Jet::kMaxDim / 2) throw Error("Weyl product dimension too large");
  if (spec.r <= 0.0) throw Error("sphere radius must be positive");
  if (spec.lambda == -1.0)
    throw DegenerateLambda("g_lambda degenerates at lambda = -1");
  if (spec.lambda != 0.0 && spec.k == 0.0)
    throw Error("the lambda deformation needs a nonzero 1-form (k != 0)");

  // Product metric: dθ² + r²(dφ₁² + sin²φ₁ dφ₂² + ...).
  const int n = spec.n;
  std::vector<ExprPtr> comps(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      comps[static_cast<std::size_t>(i * n + j)] = Expr::make_number(0.0);
  comps[0] = parse_expr("1", n);
  for (int i = 1; i < n; ++i) {
    std::string e = fmt(spec.r * spec.r);
    for (int j = 1; j < i; ++j) {
      e += "*sin(x" + std::to_string(j + 1) + ")*sin(x" + std::to_string(j + 1) + ")";
    }
    comps[static_cast<std::size_t>(i * n + i)] = parse_expr(e, n);
  }

  WeylModel model;
  model.spec = spec;
  model.g_base = std::make_shared<ExprMetric>(n, std::move(comps));
  model.D = std::make_shared<WeylConnection>(model.g_base, spec.k);
  model.g_lambda = (spec.lambda == 0.0)
                       ? model.g_base
                       : MetricPtr(std::make_shared<ThetaShiftedMetric>(model.g_base,
                                                                        spec.lambda));
  model.D_star_lambda = dual_connection(model.g_lambda, model.D);
  return model;
}

std::pair<double, double> flat_k_for(int n, double s_N) {
  if (n < 3) throw DimensionTooSmall("flat k needs dimension >= 3");
  const double k = 2.0 * s_N / std::sqrt(static_cast<double>(n - 1) * (n - 2));
  return {k, -k};
}

// --------------------------------------------------------------------------
// Custom models

Model build_custom(const std::vector<std::string>& g_exprs,
                   const std::vector<std::string>& gamma_exprs, int n,
                   const Box& domain_box) {
  if (n < 1 || n > Jet::kMaxDim / 2) throw Error("custom model dimension out of range");
  if (static_cast<int>(g_exprs.size()) != n * n)
    throw Error("custom metric needs n*n expressions");
  if (!gamma_exprs.empty() && static_cast<int>(gamma_exprs.size()) != n * n * n)
    throw Error("custom connection needs n^3 expressions");
  if (static_cast<int>(domain_box.size()) != n)
    throw Error("custom domain box dimension mismatch");

  std::vector<ExprPtr> gparsed;
  gparsed.reserve(g_exprs.size());
  for (const std::string& s : g_exprs) gparsed.push_back(parse_expr(s, n));

  // Symmetry: structural comparison first, numeric probe where prints differ.
  std::vector<Vec> probes = grid_points(domain_box, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const ExprPtr& eij = gparsed[static_cast<std::size_t>(i * n + j)];
      const ExprPtr& eji = gparsed[static_cast<std::size_t>(j * n + i)];
      if (print_expr(eij) == print_expr(eji)) continue;
      for (const Vec& p : probes) {
        const double a = eval_value(eij, p);
        const double b = eval_value(eji, p);
        if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) {
          throw AsymmetricMetric("g_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                 " != g_" + std::to_string(j + 1) + std::to_string(i + 1));
        }
      }
    }
  }

  // Nondegeneracy on the probe grid.
  bool pd = true;
  for (const Vec& p : probes) {
    Mat gv(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        gv(i, j) = eval_value(gparsed[static_cast<std::size_t>(i * n + j)], p);
    if (std::abs(mat_det(gv)) < 1e-12) {
      std::ostringstream os;
      os << "metric degenerate at";
      for (double v : p) os << ' ' << v;
      throw SingularMetric(os.str());
    }
    if (!is_positive_definite(gv)) pd = false;
  }

  Model model;
  model.n = n;
  model.name = "custom";
  model.g = std::make_shared<ExprMetric>(n, std::move(gparsed), pd);
  if (gamma_exprs.empty()) {
    model.D = std::make_shared<FlatConnection>(n);
  } else {
    std::vector<ExprPtr> cparsed;
    cparsed.reserve(gamma_exprs.size());
    for (const std::string& s : gamma_exprs) cparsed.push_back(parse_expr(s, n));
    model.D = std::make_shared<ExprConnection>(n, std::move(cparsed));
  }
  return model;
}

Model unit_sphere_levi_civita() {
  std::vector<ExprPtr> comps = {
      parse_expr("1", 2), Expr::make_number(0.0), Expr::make_number(0.0),
      parse_expr("sin(x1)*sin(x1)", 2)};
  auto g = std::make_shared<ExprMetric>(2, std::move(comps));
  Model m;
  m.n = 2;
  m.name = "unit-sphere";
  m.g = g;
  m.D = std::make_shared<LeviCivitaConnection>(g);
  return m;
}

Model euclidean_plane() {
  const Box box(2, std::array<double, 2>{-2.0, 2.0});
  Model m = build_custom({"1", "0", "0", "1"}, {}, 2, box);
  m.name = "euclidean";
  return m;
}

Model exp_diag_hessian() {
  const Box box(2, std::array<double, 2>{-1.0, 1.0});
  Model m = build_custom({"exp(x1)", "0", "0", "exp(x2)"}, {}, 2, box);
  m.name = "exp-diag-hessian";
  return m;
}

}  // namespace tmk
