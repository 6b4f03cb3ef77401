#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace remezlab {

using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Exponent = std::vector<int>;

struct PolyLimits {
  int max_degree = 32;
  int max_dimension = 4;
};

struct Term {
  Exponent exponent;
  double coeff = 0.0;
};

/// All multi-indices of length n and total degree <= k, graded then
/// lexicographically descending within each degree (x1 before x2).
std::vector<Exponent> monomials(int n, int k);

/// Real polynomial in n variables with dense coefficient storage over the
/// graded monomial basis up to its degree.
class MultiPoly {
 public:
  MultiPoly(int n, const std::vector<Term>& terms, PolyLimits limits = {});

  static MultiPoly constant(int n, double c);
  static MultiPoly variable(int n, int index);
  /// Univariate polynomial from ascending coefficients.
  static MultiPoly univariate(const std::vector<double>& coeffs);

  int dimension() const { return n_; }
  bool is_zero() const { return degree_ < 0; }
  /// Maximal total degree of a nonzero term; throws for the zero polynomial.
  int degree() const;
  /// Nonzero terms in graded order.
  std::vector<Term> terms() const;

  /// Sum of coeff * prod x_i^e_i, accumulated in graded order. Works for real
  /// and complex points alike (complexification is coefficient-wise).
  template <class Scalar>
  Scalar operator()(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) const;

  /// d/dx_var.
  MultiPoly derivative(int var) const;
  /// Ascending coefficients of a univariate polynomial.
  std::vector<double> coefficients() const;

  bool operator==(const MultiPoly& other) const;

 private:
  int n_;
  int degree_ = -1;
  std::vector<Exponent> basis_;
  Vector coeffs_;
};

template <class Scalar>
Scalar MultiPoly::operator()(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) const {
  if (x.size() != n_) throw std::invalid_argument("MultiPoly: dimension mismatch");
  if (degree_ < 0) return Scalar(0);
  // powers(e, i) = x_i^e
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> powers(degree_ + 1, n_);
  for (int i = 0; i < n_; ++i) {
    powers(0, i) = Scalar(1);
    for (int e = 1; e <= degree_; ++e) powers(e, i) = powers(e - 1, i) * x[i];
  }
  Scalar sum(0);
  for (std::size_t m = 0; m < basis_.size(); ++m) {
    const double c = coeffs_[static_cast<Eigen::Index>(m)];
    if (c == 0.0) continue;
    Scalar term(c);
    for (int i = 0; i < n_; ++i) term *= powers(basis_[m][i], i);
    sum += term;
  }
  return sum;
}

double eval(const MultiPoly& p, const Vector& x);
std::complex<double> eval(const MultiPoly& p, const CVector& z);

/// Chebyshev polynomial of the first kind by the three-term recurrence.
template <class Scalar>
Scalar cheb(int k, Scalar x) {
  if (k < 0) throw std::invalid_argument("cheb: degree must be nonnegative");
  if (k == 0) return Scalar(1);
  Scalar prev(1);
  Scalar cur = x;
  for (int j = 1; j < k; ++j) {
    Scalar next = Scalar(2) * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// T_k as a univariate MultiPoly.
MultiPoly chebyshev_poly(int k);

enum class CoeffLaw { Normal, Uniform, Sparse };

CoeffLaw parse_coeff_law(std::string_view name);
std::string_view to_string(CoeffLaw law);

/// Deterministic random polynomial of degree <= k. Coefficients are drawn in
/// graded monomial order from a std::mt19937_64 seeded with `seed`; a zero
/// polynomial is discarded and redrawn from the same stream.
MultiPoly random_poly(int n, int k, std::uint64_t seed, CoeffLaw law = CoeffLaw::Normal);

void to_json(nlohmann::json& j, const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);

}  // namespace remezlab
