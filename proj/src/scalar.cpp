#include "gobs/scalar.hpp"

#include <functional>
#include <ostream>
#include <sstream>

namespace gobs {

namespace {

std::string fmt_complex(std::complex<double> z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() >= 0)
    os << "+" << z.imag() << "i";
  else
    os << z.imag() << "i";
  return os.str();
}

template <typename M>
std::string fmt_matrix(const M& m, const std::function<std::string(const typename M::Scalar&)>& f) {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < m.rows(); ++r) {
    if (r) os << "; ";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << f(m(r, c));
    }
  }
  os << "]";
  return os.str();
}

ComplexMatrix to_cmat(const ExactMatrix& m) {
  ComplexMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_complex();
  return r;
}

}  // namespace

Scalar::Scalar(ExactMatrix m) : v_(std::move(m)) {
  const auto& mm = std::get<ExactMatrix>(v_);
  if (mm.rows() != mm.cols()) throw ScalarError("matrix scalar must be square");
}

Scalar::Scalar(ComplexMatrix m) : v_(std::move(m)) {
  const auto& mm = std::get<ComplexMatrix>(v_);
  if (mm.rows() != mm.cols()) throw ScalarError("matrix scalar must be square");
}

Scalar Scalar::identity(int dim) {
  ExactMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = GaussianRational(i == j ? 1 : 0);
  return Scalar(std::move(m));
}

bool Scalar::is_exact() const {
  return std::holds_alternative<GaussianRational>(v_) || std::holds_alternative<ExactMatrix>(v_);
}

bool Scalar::is_matrix() const {
  return std::holds_alternative<ExactMatrix>(v_) || std::holds_alternative<ComplexMatrix>(v_);
}

bool Scalar::is_zero() const {
  if (auto* q = std::get_if<GaussianRational>(&v_)) return q->is_zero();
  if (auto* z = std::get_if<std::complex<double>>(&v_)) return *z == std::complex<double>(0.0, 0.0);
  if (auto* m = std::get_if<ExactMatrix>(&v_)) {
    for (int i = 0; i < m->rows(); ++i)
      for (int j = 0; j < m->cols(); ++j)
        if (!(*m)(i, j).is_zero()) return false;
    return true;
  }
  const auto& m = std::get<ComplexMatrix>(v_);
  return m.isZero(0.0);
}

int Scalar::dim() const {
  if (auto* m = std::get_if<ExactMatrix>(&v_)) return static_cast<int>(m->rows());
  if (auto* m = std::get_if<ComplexMatrix>(&v_)) return static_cast<int>(m->rows());
  return 0;
}

const GaussianRational& Scalar::exact() const {
  if (auto* q = std::get_if<GaussianRational>(&v_)) return *q;
  throw ScalarError("not an exact scalar: " + str());
}

std::complex<double> Scalar::complex_value() const {
  if (auto* q = std::get_if<GaussianRational>(&v_)) return q->to_complex();
  if (auto* z = std::get_if<std::complex<double>>(&v_)) return *z;
  throw ScalarError("matrix scalar used where a number was required");
}

const ExactMatrix& Scalar::exact_matrix() const {
  if (auto* m = std::get_if<ExactMatrix>(&v_)) return *m;
  throw ScalarError("not an exact matrix");
}

ComplexMatrix Scalar::complex_matrix() const {
  if (auto* m = std::get_if<ExactMatrix>(&v_)) return to_cmat(*m);
  if (auto* m = std::get_if<ComplexMatrix>(&v_)) return *m;
  throw ScalarError("not a matrix scalar");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  return r *= Scalar(-1);
}

namespace {

// Shared combine logic: applies op to two values brought to a common kind.
enum class Op { Add, Sub, Mul };

Scalar combine(const Scalar& a, const Scalar& b, Op op);

GaussianRational apply(const GaussianRational& x, const GaussianRational& y, Op op) {
  switch (op) {
    case Op::Add: return x + y;
    case Op::Sub: return x - y;
    default: return x * y;
  }
}

std::complex<double> apply(std::complex<double> x, std::complex<double> y, Op op) {
  switch (op) {
    case Op::Add: return x + y;
    case Op::Sub: return x - y;
    default: return x * y;
  }
}

template <typename M>
M apply_mat(const M& x, const M& y, Op op) {
  if (x.rows() != y.rows())
    throw ScalarError("matrix dimension mismatch: " + std::to_string(x.rows()) + " vs " +
                      std::to_string(y.rows()));
  switch (op) {
    case Op::Add: return x + y;
    case Op::Sub: return x - y;
    default: return x * y;
  }
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) { return *this = combine(*this, o, Op::Add); }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = combine(*this, o, Op::Sub); }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = combine(*this, o, Op::Mul); }

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_matrix()) throw ScalarError("division by a matrix scalar");
  if (o.is_zero()) throw ScalarError("division by zero");
  if (auto* q = std::get_if<GaussianRational>(&o.v_)) {
    if (is_exact()) return *this *= Scalar(q->inverse());
    return *this *= Scalar(std::complex<double>(1.0, 0.0) / q->to_complex());
  }
  return *this *= Scalar(std::complex<double>(1.0, 0.0) / o.complex_value());
}

namespace {

Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  const bool amat = a.is_matrix(), bmat = b.is_matrix();
  const bool exact = a.is_exact() && b.is_exact();
  if (!amat && !bmat) {
    if (exact) return Scalar(apply(a.exact(), b.exact(), op));
    return Scalar(apply(a.complex_value(), b.complex_value(), op));
  }
  if (amat && bmat) {
    if (exact) return Scalar(apply_mat(a.exact_matrix(), b.exact_matrix(), op));
    return Scalar(apply_mat(a.complex_matrix(), b.complex_matrix(), op));
  }
  // Mixed scalar/matrix: multiplication scales, addition embeds as s*Id.
  const Scalar& s = amat ? b : a;
  const Scalar& m = amat ? a : b;
  if (op == Op::Mul) {
    if (exact) {
      ExactMatrix r = m.exact_matrix();
      for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) r(i, j) = r(i, j) * s.exact();
      return Scalar(std::move(r));
    }
    return Scalar(ComplexMatrix(s.complex_value() * m.complex_matrix()));
  }
  Scalar sid = Scalar::identity(m.dim()) * s;
  return amat ? combine(a, sid, op) : combine(sid, b, op);
}

}  // namespace

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_matrix() != b.is_matrix()) return false;
  Scalar d = a - b;
  return d.is_zero();
}

Scalar Scalar::trace() const {
  if (auto* m = std::get_if<ExactMatrix>(&v_)) {
    GaussianRational t;
    for (int i = 0; i < m->rows(); ++i) t += (*m)(i, i);
    return Scalar(t);
  }
  if (auto* m = std::get_if<ComplexMatrix>(&v_)) return Scalar(m->trace());
  return *this;
}

std::string Scalar::str() const {
  if (auto* q = std::get_if<GaussianRational>(&v_)) return q->str();
  if (auto* z = std::get_if<std::complex<double>>(&v_)) return fmt_complex(*z);
  if (auto* m = std::get_if<ExactMatrix>(&v_))
    return fmt_matrix(*m, std::function<std::string(const GaussianRational&)>(
                              [](const GaussianRational& q) { return q.str(); }));
  const auto& m = std::get<ComplexMatrix>(v_);
  return fmt_matrix(m, std::function<std::string(const std::complex<double>&)>(
                           [](const std::complex<double>& z) { return fmt_complex(z); }));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace gobs
