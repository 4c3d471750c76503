#pragma once

#include "gobs/symplectic.hpp"

namespace gobs {

/// The shifted cotangent bundle T*[1]R^d: base coordinates x^i of degree 0
/// and odd fiber coordinates p_i of degree 1, with the canonical degree 1
/// symplectic form <dp, dx>. Functions on it encode polyvector fields; the
/// induced degree -1 bracket is the Schouten-Nijenhuis bracket.
class ShiftedCotangent {
public:
  explicit ShiftedCotangent(int d, const std::string& base_prefix = "x",
                            const std::string& fiber_prefix = "p");

  int dim() const { return d_; }
  const SpacePtr& space() const { return space_; }
  const ConstantSymplectic& omega() const { return omega_; }
  int x(int i) const { return i; }
  int p(int i) const { return d_ + i; }
  GradedPolynomial xv(int i) const { return GradedPolynomial::variable(space_, x(i)); }
  GradedPolynomial pv(int i) const { return GradedPolynomial::variable(space_, p(i)); }

  /// Theta_pi = 1/2 pi^{ij}(x) p_i p_j from bivector components
  /// (pi[i][j] need not be antisymmetrized; the odd p's project it).
  GradedPolynomial bivector(const std::vector<std::vector<GradedPolynomial>>& pi) const;

  /// Encodes a vector field v = v^i d/dx^i as <p, v> = v^i p_i.
  GradedPolynomial vector_polynomial(const std::vector<GradedPolynomial>& v) const;

private:
  int d_;
  SpacePtr space_;
  ConstantSymplectic omega_;
};

/// Schouten-Nijenhuis bracket of polyvector fields encoded on T*[1]M.
/// Restricted to degrees <= 1 it reproduces [X,f] = X(f) and the Lie
/// bracket of vector fields; [pi,pi] = 0 iff pi is Poisson.
GradedPolynomial schouten(const GradedPolynomial& p, const GradedPolynomial& q,
                          const ShiftedCotangent& t);

}  // namespace gobs
