#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace gobs {

/// Exact element of the field Q(i): re + im*i with rational re, im.
///
/// This is the coefficient field for all symbolic computations. The factor i
/// in e^{iS} and in the quantum master equation must stay exact for residuals
/// to cancel identically, so no floating fallback exists on this type.
class GaussianRational {
public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(long n) : re_(n), im_(0) {}
  GaussianRational(const mpq_class& re) : re_(re), im_(0) {}
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational from_fraction(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return GaussianRational(q);
  }
  static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational operator-() const { return GaussianRational(mpq_class(-re_), mpq_class(-im_)); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = re;
    im_ = im;
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  GaussianRational inverse() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Canonical text: "0", "3/2", "-1/2i", "1+2i", "2-1/3i".
  std::string str() const;

private:
  mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& q);

/// Parses "a", "a/b" (decimal integers, optional sign). Throws std::invalid_argument.
mpq_class parse_rational(const std::string& text);

}  // namespace gobs

namespace Eigen {

// Minimal traits so dense exact matrices get +, *, transpose. Decompositions
// are not used on this scalar; exact elimination lives in gobs::exact_linalg.
template <>
struct NumTraits<gobs::GaussianRational> {
  using Real = gobs::GaussianRational;
  using NonInteger = gobs::GaussianRational;
  using Literal = gobs::GaussianRational;
  using Nested = gobs::GaussianRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60
  };
  static inline Real epsilon() { return Real(); }
  static inline Real dummy_precision() { return Real(); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace gobs {

using ExactMatrix = Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexMatrix = Eigen::MatrixXcd;

}  // namespace gobs
