#pragma once

#include <Eigen/Dense>

#include <algorithm>

namespace cweno {

/// Polynomial in the centred local coordinate xi = (x - x_j)/h of a cell,
/// stored as monomial coefficients: Q(xi) = sum_k coeffs(k) xi^k. The cell
/// itself is xi in [-1/2, 1/2]; neighbour j+l is [l - 1/2, l + 1/2].
template <typename Scalar>
struct LocalPolynomial {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector coeffs;

  LocalPolynomial() = default;
  explicit LocalPolynomial(Vector c) : coeffs(std::move(c)) {}

  static LocalPolynomial constant(Scalar c, Eigen::Index degree = 0) {
    Vector v = Vector::Zero(degree + 1);
    v(0) = c;
    return LocalPolynomial(v);
  }

  Eigen::Index degree() const { return coeffs.size() - 1; }

  /// Q(xi) by Horner's rule.
  Scalar operator()(Scalar xi) const {
    Scalar acc = 0;
    for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * xi + coeffs(k);
    return acc;
  }

  /// Value at the cell-relative position y in [0,1] (y = 0 left edge, y = 1 right edge).
  Scalar at(Scalar y) const { return (*this)(y - Scalar(1) / 2); }
};

/// int_a^b xi^k dxi.
template <typename Scalar>
Scalar monomial_integral(Eigen::Index k, Scalar a, Scalar b) {
  using std::pow;
  return (pow(b, Scalar(k + 1)) - pow(a, Scalar(k + 1))) / Scalar(k + 1);
}

/// Mean of Q over the neighbour cell at offset l, i.e. xi in [l - 1/2, l + 1/2].
template <typename Scalar>
Scalar shifted_mean(const LocalPolynomial<Scalar>& p, int offset) {
  const Scalar a = Scalar(offset) - Scalar(1) / 2;
  const Scalar b = Scalar(offset) + Scalar(1) / 2;
  Scalar acc = 0;
  for (Eigen::Index k = 0; k < p.coeffs.size(); ++k) acc += p.coeffs(k) * monomial_integral(k, a, b);
  return acc;
}

/// Mean of Q over its own cell.
template <typename Scalar>
Scalar cell_mean(const LocalPolynomial<Scalar>& p) {
  // odd monomials integrate to zero on the symmetric cell
  Scalar acc = 0;
  Scalar half_pow = 1;  // (1/2)^k
  for (Eigen::Index k = 0; k < p.coeffs.size(); ++k) {
    if (k % 2 == 0) acc += p.coeffs(k) * half_pow / Scalar(k + 1);
    half_pow /= 2;
  }
  return acc;
}

template <typename Scalar>
LocalPolynomial<Scalar> derivative(const LocalPolynomial<Scalar>& p) {
  using Vector = typename LocalPolynomial<Scalar>::Vector;
  if (p.coeffs.size() <= 1) return LocalPolynomial<Scalar>(Vector::Zero(1));
  Vector d(p.coeffs.size() - 1);
  for (Eigen::Index k = 1; k < p.coeffs.size(); ++k) d(k - 1) = Scalar(k) * p.coeffs(k);
  return LocalPolynomial<Scalar>(d);
}

/// Coefficients of the product of two polynomials (discrete convolution).
template <typename Scalar>
LocalPolynomial<Scalar> product(const LocalPolynomial<Scalar>& a, const LocalPolynomial<Scalar>& b) {
  using Vector = typename LocalPolynomial<Scalar>::Vector;
  Vector c = Vector::Zero(a.coeffs.size() + b.coeffs.size() - 1);
  for (Eigen::Index i = 0; i < a.coeffs.size(); ++i)
    for (Eigen::Index j = 0; j < b.coeffs.size(); ++j) c(i + j) += a.coeffs(i) * b.coeffs(j);
  return LocalPolynomial<Scalar>(c);
}

/// Pads (or keeps) the coefficient vector to length degree + 1.
template <typename Scalar>
LocalPolynomial<Scalar> padded(const LocalPolynomial<Scalar>& p, Eigen::Index degree) {
  using Vector = typename LocalPolynomial<Scalar>::Vector;
  Vector c = Vector::Zero(std::max<Eigen::Index>(degree + 1, p.coeffs.size()));
  c.head(p.coeffs.size()) = p.coeffs;
  return LocalPolynomial<Scalar>(c);
}

}  // namespace cweno
