#pragma once

#include <complex>
#include <string>
#include <variant>

#include "gobs/rational.hpp"

namespace gobs {

/// Coefficient value: exact Gaussian rational, complex double, or a square
/// matrix over either. Exact values form a field; matrices multiply in the
/// order written and commute with all graded variables.
///
/// Promotion rules: exact op float -> float; scalar op matrix -> the scalar
/// embeds as s*Id (addition) or scales entrywise (multiplication); exact
/// matrix op complex matrix -> complex matrix. Matrix dimension mismatch
/// throws ScalarError.
class Scalar {
public:
  Scalar() : v_(GaussianRational()) {}
  Scalar(long n) : v_(GaussianRational(n)) {}
  Scalar(GaussianRational q) : v_(std::move(q)) {}
  Scalar(std::complex<double> z) : v_(z) {}
  Scalar(ExactMatrix m);
  Scalar(ComplexMatrix m);

  static Scalar i() { return Scalar(GaussianRational::i()); }
  static Scalar fraction(long num, long den) { return Scalar(GaussianRational::from_fraction(num, den)); }
  static Scalar identity(int dim);  // exact identity matrix

  bool is_exact() const;
  bool is_matrix() const;
  bool is_zero() const;
  /// Square matrix size; 0 for non-matrix values.
  int dim() const;

  const GaussianRational& exact() const;  // throws if not exact scalar
  std::complex<double> complex_value() const;  // throws if matrix
  const ExactMatrix& exact_matrix() const;
  ComplexMatrix complex_matrix() const;  // any matrix kind, promoted

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Division by an invertible non-matrix scalar only.
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Structural equality (exact on exact values, bitwise on floats).
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar trace() const;  // matrix trace; identity on plain scalars

  std::string str() const;

private:
  std::variant<GaussianRational, std::complex<double>, ExactMatrix, ComplexMatrix> v_;
};

struct ScalarError : std::runtime_error {
  explicit ScalarError(const std::string& what) : std::runtime_error(what) {}
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace gobs
