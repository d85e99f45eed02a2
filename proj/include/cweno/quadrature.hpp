#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cweno/errors.hpp"

namespace cweno {

/// Quadrature rule on [0,1] with nodes in increasing order. For the right-Radau
/// rules built here the last node is exactly 1.
template <typename Scalar>
struct QuadratureRule {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector nodes;
  Vector weights;

  Eigen::Index size() const { return nodes.size(); }
  /// Weight attached to the right endpoint y = 1.
  Scalar endpoint_weight() const { return weights(weights.size() - 1); }
};

namespace detail {

// Legendre P_n and P_{n-1} at x by the three-term recurrence.
template <typename Scalar>
void legendre_pair(int n, Scalar x, Scalar& pn, Scalar& pnm1) {
  Scalar p0 = 1, p1 = x;
  if (n == 0) {
    pn = p0;
    pnm1 = 0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const Scalar p2 = (Scalar(2 * k - 1) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  pnm1 = p0;
}

// q(x) = P_{R-1}(x) + P_R(x), whose roots are the left-Radau nodes on [-1,1].
template <typename Scalar>
Scalar left_radau_polynomial(int r, Scalar x) {
  Scalar pr, prm1;
  legendre_pair(r, x, pr, prm1);
  return pr + prm1;
}

}  // namespace detail

/// Right-Radau-Legendre rule with R nodes on [0,1] (degree of exactness 2R-2,
/// y_R = 1, gamma_R = 1/R^2). Only R in {2,3,4} is supported.
template <typename Scalar = double>
QuadratureRule<Scalar> radau_rule(int r) {
  using std::abs;
  if (r < 2 || r > 4) {
    throw RejectedInput("radau_rule: R must be 2, 3 or 4 (got " + std::to_string(r) + ")");
  }
  // Free left-Radau nodes: bracket sign changes of q on (-1, 1], then bisect
  // down to adjacent representable numbers.
  std::vector<Scalar> left;
  const int samples = 4000;
  Scalar a = Scalar(-1) + Scalar(1) / Scalar(samples);
  Scalar qa = detail::left_radau_polynomial(r, a);
  for (int i = 1; i <= samples; ++i) {
    const Scalar b = Scalar(-1) + Scalar(2 * i) / Scalar(samples);
    const Scalar qb = detail::left_radau_polynomial(r, b);
    if ((qa < 0) != (qb < 0)) {
      Scalar lo = a, hi = b, qlo = qa;
      for (int it = 0; it < 200 && hi - lo > Scalar(0); ++it) {
        const Scalar mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        const Scalar qm = detail::left_radau_polynomial(r, mid);
        if ((qm < 0) == (qlo < 0)) {
          lo = mid;
          qlo = qm;
        } else {
          hi = mid;
        }
      }
      left.push_back((lo + hi) / 2);
    }
    a = b;
    qa = qb;
  }
  if (static_cast<int>(left.size()) != r - 1) {
    throw InvariantViolation("radau_rule: root isolation failed");
  }

  QuadratureRule<Scalar> rule;
  rule.nodes.resize(r);
  rule.weights.resize(r);
  // Reflect x -> -x (fixed node moves to +1) and map to [0,1]: y = (1 - x) / 2.
  // Left-Radau weights: (1 - x) / (R^2 P_{R-1}(x)^2) on [-1,1], halved on [0,1].
  for (int i = 0; i < r - 1; ++i) {
    const Scalar x = left[r - 2 - i];
    Scalar pr, prm1;
    detail::legendre_pair(r, x, pr, prm1);
    rule.nodes(i) = (Scalar(1) - x) / 2;
    rule.weights(i) = (Scalar(1) - x) / (Scalar(r * r) * prm1 * prm1) / 2;
  }
  rule.nodes(r - 1) = Scalar(1);
  rule.weights(r - 1) = Scalar(1) / Scalar(r * r);
  return rule;
}

/// (b - a) * sum_nu gamma_nu f(a + (b - a) y_nu).
template <typename Scalar, typename F>
Scalar integrate_on_subinterval(const QuadratureRule<Scalar>& rule, F&& f, Scalar a, Scalar b) {
  if (a > b) throw RejectedInput("integrate_on_subinterval: a > b");
  const Scalar len = b - a;
  Scalar acc = 0;
  for (Eigen::Index nu = 0; nu < rule.size(); ++nu) {
    acc += rule.weights(nu) * f(a + len * rule.nodes(nu));
  }
  return len * acc;
}

}  // namespace cweno
