#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include "cweno/errors.hpp"
#include "cweno/polynomial.hpp"

namespace cweno {

/// Parameters of the CWENO reconstruction of order 2g+1.
template <typename Scalar = double>
struct ReconstructionParams {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int g = 1;
  /// Linear coefficients c_0 .. c_m, m = g + 1.
  Vector c;
  /// Exponent in alpha_k = c_k / (S_k + eps)^p.
  Scalar p = 2;
  /// eps = h^q.
  Scalar q = 2;

  int m() const { return g + 1; }

  void validate() const {
    if (g < 1 || g > 3) throw RejectedInput("reconstruction: g must be 1, 2 or 3");
    if (c.size() != m() + 1) throw RejectedInput("reconstruction: need m+1 linear coefficients");
    Scalar sum = 0;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      if (!(c(k) > 0 && c(k) < 1)) throw RejectedInput("reconstruction: c_k must lie in (0,1)");
      sum += c(k);
    }
    using std::abs;
    if (abs(sum - Scalar(1)) > Scalar(1e-12)) throw RejectedInput("reconstruction: c_k must sum to 1");
  }
};

/// c_0 as given, the remaining mass split evenly over the m low-order candidates.
template <typename Scalar = double>
ReconstructionParams<Scalar> default_params(int g, Scalar c0 = Scalar(0.5)) {
  ReconstructionParams<Scalar> params;
  params.g = g;
  params.c.resize(g + 2);
  params.c(0) = c0;
  for (int k = 1; k <= g + 1; ++k) params.c(k) = (Scalar(1) - c0) / Scalar(g + 1);
  params.validate();
  return params;
}

/// Jiang-Shu indicator sum_{l=1}^{G} int_{-1/2}^{1/2} (Q^{(l)})^2 dxi; in local
/// coordinates the h^{2l-1} weights cancel the chain-rule factors exactly.
template <typename Scalar>
Scalar smoothness_indicator(const LocalPolynomial<Scalar>& p, int G) {
  Scalar total = 0;
  LocalPolynomial<Scalar> d = p;
  const Scalar half = Scalar(1) / 2;
  for (int l = 1; l <= G; ++l) {
    d = derivative(d);
    const LocalPolynomial<Scalar> sq = product(d, d);
    total += [&] {
      Scalar acc = 0;
      for (Eigen::Index k = 0; k < sq.coeffs.size(); k += 2) acc += sq.coeffs(k) * monomial_integral(k, -half, half);
      return acc;
    }();
  }
  return total;
}

/// Mean-matching operators for one g, assembled once: they map stencil
/// averages to monomial coefficients and are independent of h.
template <typename Scalar>
struct StencilOperators {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  int g = 0;
  Matrix optimal;                   // (2g+1) x (2g+1), averages at offsets -g..g
  std::vector<Matrix> substencils;  // k = 1..m, each (g+1) x (g+1), offsets -g+k-1 .. k-1
  Matrix indicator;                 // quadratic form of the indicator with G = 2g

  explicit StencilOperators(int g_) : g(g_) {
    const int n_opt = 2 * g + 1;
    Matrix mean_opt(n_opt, n_opt);
    for (int l = -g; l <= g; ++l)
      for (int k = 0; k < n_opt; ++k) mean_opt(l + g, k) = shifted_mean(unit(k, n_opt), l);
    optimal = mean_opt.fullPivLu().inverse();

    for (int s = 1; s <= g + 1; ++s) {
      Matrix mean_sub(g + 1, g + 1);
      for (int l = 0; l <= g; ++l)
        for (int k = 0; k <= g; ++k) mean_sub(l, k) = shifted_mean(unit(k, g + 1), -g + s - 1 + l);
      substencils.push_back(mean_sub.fullPivLu().inverse());
    }

    // polarisation of the indicator over monomial pairs
    indicator.resize(n_opt, n_opt);
    for (int a = 0; a < n_opt; ++a) {
      for (int b = 0; b < n_opt; ++b) {
        LocalPolynomial<Scalar> sum = unit(a, n_opt);
        sum.coeffs(b) += 1;
        indicator(a, b) = (smoothness_indicator(sum, 2 * g) - smoothness_indicator(unit(a, n_opt), 2 * g) -
                           smoothness_indicator(unit(b, n_opt), 2 * g)) /
                          2;
      }
    }
  }

 private:
  static LocalPolynomial<Scalar> unit(int k, int size) {
    typename LocalPolynomial<Scalar>::Vector c = LocalPolynomial<Scalar>::Vector::Zero(size);
    c(k) = 1;
    return LocalPolynomial<Scalar>(c);
  }
};

template <typename Scalar>
const StencilOperators<Scalar>& stencil_operators(int g) {
  if (g < 1 || g > 3) throw RejectedInput("stencil_operators: g must be 1, 2 or 3");
  static const std::array<StencilOperators<Scalar>, 3> ops{StencilOperators<Scalar>(1), StencilOperators<Scalar>(2),
                                                           StencilOperators<Scalar>(3)};
  return ops[g - 1];
}

/// Degree-2g polynomial matching the 2g+1 averages at offsets -g..g.
template <typename Scalar>
LocalPolynomial<Scalar> optimal_polynomial(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& stencil, int g) {
  if (stencil.size() != 2 * g + 1) throw RejectedInput("optimal_polynomial: stencil must hold 2g+1 averages");
  return LocalPolynomial<Scalar>(stencil_operators<Scalar>(g).optimal * stencil);
}

/// Degree-g polynomial P_k matching the g+1 averages at offsets -g+k-1 .. k-1.
template <typename Scalar>
LocalPolynomial<Scalar> substencil_polynomial(int k, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& stencil, int g) {
  if (k < 1 || k > g + 1) throw RejectedInput("substencil_polynomial: k must lie in 1..g+1");
  if (stencil.size() != g + 1) throw RejectedInput("substencil_polynomial: stencil must hold g+1 averages");
  return LocalPolynomial<Scalar>(stencil_operators<Scalar>(g).substencils[k - 1] * stencil);
}

/// P_0 = (P_opt - sum_{k>=1} c_k P_k) / c_0.
template <typename Scalar>
LocalPolynomial<Scalar> p0_polynomial(const LocalPolynomial<Scalar>& p_opt,
                                      const std::vector<LocalPolynomial<Scalar>>& candidates,
                                      const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& c) {
  if (!(c(0) > 0)) throw RejectedInput("p0_polynomial: c_0 must be positive");
  if (static_cast<Eigen::Index>(candidates.size()) + 1 != c.size())
    throw RejectedInput("p0_polynomial: need one coefficient per candidate plus c_0");
  LocalPolynomial<Scalar> out = p_opt;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const LocalPolynomial<Scalar> pk = padded(candidates[k], out.degree());
    out.coeffs.head(pk.coeffs.size()) -= c(static_cast<Eigen::Index>(k) + 1) * pk.coeffs;
  }
  out.coeffs /= c(0);
  return out;
}

/// w_k = alpha_k / sum alpha_i with alpha_k = c_k / (S_k + h^q)^p.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nonlinear_weights(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& indicators,
                                                          const ReconstructionParams<Scalar>& params, Scalar h) {
  using std::pow;
  if (!(h > 0)) throw RejectedInput("nonlinear_weights: h must be positive");
  if (indicators.size() != params.c.size()) throw RejectedInput("nonlinear_weights: size mismatch");
  const Scalar eps = pow(h, params.q);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> alpha(indicators.size());
  for (Eigen::Index k = 0; k < alpha.size(); ++k) {
    if (indicators(k) < 0) throw RejectedInput("nonlinear_weights: indicators must be non-negative");
    alpha(k) = params.c(k) / pow(indicators(k) + eps, params.p);
  }
  return alpha / alpha.sum();
}

template <typename Scalar>
struct CellReconstruction {
  LocalPolynomial<Scalar> poly;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// Full CWENO procedure for one cell from the 2g+1 averages centred on it.
template <typename Scalar>
CellReconstruction<Scalar> reconstruct_cell(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& window,
                                            const ReconstructionParams<Scalar>& params, Scalar h) {
  using Small = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 7, 1>;
  const int g = params.g;
  const int n = 2 * g + 1;
  const int m = g + 1;
  if (window.size() != n) throw RejectedInput("reconstruct_cell: window must hold 2g+1 averages");
  const StencilOperators<Scalar>& ops = stencil_operators<Scalar>(g);

  const Small opt = ops.optimal * window;
  std::array<Small, 5> cand;  // cand[0] = P_0, cand[k] = P_k padded to degree 2g
  Small p0 = opt;
  for (int k = 1; k <= m; ++k) {
    cand[k] = Small::Zero(n);
    cand[k].head(g + 1) = ops.substencils[k - 1] * window.segment(k - 1, g + 1);
    p0 -= params.c(k) * cand[k];
  }
  cand[0] = p0 / params.c(0);

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> indicators(m + 1);
  for (int k = 0; k <= m; ++k) indicators(k) = cand[k].dot(ops.indicator * cand[k]);
  CellReconstruction<Scalar> out;
  out.weights = nonlinear_weights(indicators, params, h);
  Small poly = Small::Zero(n);
  for (int k = 0; k <= m; ++k) poly += out.weights(k) * cand[k];
  out.poly = LocalPolynomial<Scalar>(poly);
  return out;
}

/// One local polynomial per cell over a contiguous (possibly ghost) index range.
template <typename Scalar = double>
class PiecewiseReconstruction {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  PiecewiseReconstruction() = default;
  PiecewiseReconstruction(Matrix coeffs, Eigen::Index first_cell, Scalar h)
      : coeffs_(std::move(coeffs)), first_(first_cell), h_(h) {}

  Eigen::Index first_cell() const { return first_; }
  Eigen::Index end_cell() const { return first_ + coeffs_.cols(); }
  bool contains(Eigen::Index j) const { return j >= first_ && j < end_cell(); }
  Scalar h() const { return h_; }
  int degree() const { return static_cast<int>(coeffs_.rows()) - 1; }

  LocalPolynomial<Scalar> cell(Eigen::Index j) const { return LocalPolynomial<Scalar>(coeffs_.col(column(j))); }
  void set_cell(Eigen::Index j, const LocalPolynomial<Scalar>& p) { coeffs_.col(column(j)) = p.coeffs; }

  /// Value of cell j's polynomial at the cell-relative position y in [0,1].
  Scalar evaluate(Eigen::Index j, Scalar y) const {
    const Eigen::Index c = column(j);
    const Scalar xi = y - Scalar(1) / 2;
    Scalar acc = 0;
    for (Eigen::Index k = coeffs_.rows() - 1; k >= 0; --k) acc = acc * xi + coeffs_(k, c);
    return acc;
  }

  const Matrix& coefficients() const { return coeffs_; }
  Matrix& coefficients() { return coeffs_; }

 private:
  Eigen::Index column(Eigen::Index j) const {
    if (!contains(j)) throw RejectedInput("reconstruction: cell index " + std::to_string(j) + " out of range");
    return j - first_;
  }

  Matrix coeffs_;
  Eigen::Index first_ = 0;
  Scalar h_ = 1;
};

/// Reconstructs every cell whose stencil lies inside the extended averages.
/// `ext` holds cells -width .. n_cells+width-1; the result covers cells
/// -(width-g) .. n_cells+width-g-1.
template <typename Scalar>
PiecewiseReconstruction<Scalar> reconstruct(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& ext, Eigen::Index width,
                                            const ReconstructionParams<Scalar>& params, Scalar h) {
  params.validate();
  const int g = params.g;
  if (width < g) throw RejectedInput("reconstruct: ghost width must be at least g");
  const Eigen::Index total = ext.size();
  const Eigen::Index count = total - 2 * g;
  if (count < 1) throw RejectedInput("reconstruct: not enough cells");
  typename PiecewiseReconstruction<Scalar>::Matrix coeffs(2 * g + 1, count);
  for (Eigen::Index c = 0; c < count; ++c) {
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> window = ext.segment(c, 2 * g + 1);
    coeffs.col(c) = reconstruct_cell(window, params, h).poly.coeffs;
  }
  return PiecewiseReconstruction<Scalar>(std::move(coeffs), -(width - g), h);
}

template <typename Scalar>
Scalar evaluate(const PiecewiseReconstruction<Scalar>& rec, Eigen::Index j, Scalar y) {
  if (y < 0 || y > 1) throw RejectedInput("evaluate: y must lie in [0,1]");
  return rec.evaluate(j, y);
}

}  // namespace cweno
