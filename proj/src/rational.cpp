#include "gobs/rational.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gobs {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  // 1/(a+bi) = (a-bi)/(a^2+b^2)
  mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
  GaussianRational inv(mpq_class(o.re_ / n), mpq_class(-o.im_ / n));
  return *this *= inv;
}

GaussianRational GaussianRational::inverse() const {
  GaussianRational one(1);
  return one /= *this;
}

std::string GaussianRational::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool have_re = (re_ != 0);
  if (have_re) os << re_.get_str();
  if (im_ != 0) {
    if (im_ > 0 && have_re) os << "+";
    if (im_ == -1)
      os << "-";
    else if (im_ != 1)
      os << im_.get_str();
    os << "i";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << q.str(); }

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : text)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw std::invalid_argument("bad rational literal: " + text);
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
  q.canonicalize();
  return q;
}

}  // namespace gobs
