#include "gobs/schouten.hpp"

namespace gobs {

namespace {

SpacePtr make_ct_space(int d, const std::string& bp, const std::string& fp) {
  std::vector<std::pair<std::string, int>> coords;
  for (int i = 0; i < d; ++i) coords.emplace_back(bp + std::to_string(i + 1), 0);
  for (int i = 0; i < d; ++i) coords.emplace_back(fp + std::to_string(i + 1), 1);
  return GradedSpace::make(coords);
}

ExactMatrix ct_omega_matrix(int d) {
  // omega = sum_i dp_i dx^i: entries (p_i, x^i) = 1 and (x^i, p_i) = 1
  // (dp even, dx odd, so the pair block is symmetric).
  ExactMatrix m(2 * d, 2 * d);
  for (int i = 0; i < 2 * d; ++i)
    for (int j = 0; j < 2 * d; ++j) m(i, j) = GaussianRational(0);
  for (int i = 0; i < d; ++i) {
    m(d + i, i) = GaussianRational(1);
    m(i, d + i) = GaussianRational(1);
  }
  return m;
}

}  // namespace

ShiftedCotangent::ShiftedCotangent(int d, const std::string& base_prefix,
                                   const std::string& fiber_prefix)
    : d_(d),
      space_(make_ct_space(d, base_prefix, fiber_prefix)),
      omega_(space_, ct_omega_matrix(d), 1) {}

GradedPolynomial ShiftedCotangent::bivector(
    const std::vector<std::vector<GradedPolynomial>>& pi) const {
  GradedPolynomial theta(space_);
  Scalar half = Scalar::fraction(1, 2);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) {
      if (static_cast<int>(pi.size()) <= i || static_cast<int>(pi[static_cast<size_t>(i)].size()) <= j)
        continue;
      const GradedPolynomial& c = pi[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (c.is_zero()) continue;
      theta += scale(half, mul(promote(c, space_), mul(pv(i), pv(j))));
    }
  return theta;
}

GradedPolynomial ShiftedCotangent::vector_polynomial(const std::vector<GradedPolynomial>& v) const {
  GradedPolynomial r(space_);
  for (int i = 0; i < d_ && i < static_cast<int>(v.size()); ++i)
    r += mul(promote(v[static_cast<size_t>(i)], space_), pv(i));
  return r;
}

GradedPolynomial schouten(const GradedPolynomial& p, const GradedPolynomial& q,
                          const ShiftedCotangent& t) {
  return poisson_bracket(p, q, t.omega());
}

}  // namespace gobs
