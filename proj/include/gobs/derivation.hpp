#pragma once

#include <functional>

#include "gobs/graded.hpp"

namespace gobs {

/// Graded vector field X = sum_a X^a d/dx^a given by coordinate components.
/// Each component is homogeneous of internal degree |x^a| + degree.
class VectorField {
public:
  VectorField(SpacePtr space, int degree) : space_(std::move(space)), degree_(degree) {}

  /// Builds with homogeneity enforced; missing components are zero.
  static VectorField make(SpacePtr space, int degree,
                          const std::map<int, GradedPolynomial>& components);
  static VectorField zero(SpacePtr space, int degree) { return VectorField(std::move(space), degree); }

  const SpacePtr& space() const { return space_; }
  int degree() const { return degree_; }
  int parity() const { return ((degree_ % 2) + 2) % 2; }
  GradedPolynomial component(int coord) const;
  const std::map<int, GradedPolynomial>& components() const { return components_; }
  bool is_zero() const;

  void set_component(int coord, GradedPolynomial p);

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend bool operator==(const VectorField& a, const VectorField& b);

  std::string str() const;

private:
  SpacePtr space_;
  int degree_ = 0;
  std::map<int, GradedPolynomial> components_;  // coord index -> component
};

/// Applies the left superderivation of the given parity determined by
/// generator images: D(f) = sum over factor positions with the Koszul
/// prefix sign. images(v) may return nullptr for zero.
GradedPolynomial apply_derivation(int parity,
                                  const std::function<const GradedPolynomial*(int)>& images,
                                  const GradedPolynomial& f);

/// X(f) = sum_a X^a * d_L f/dx^a; a left derivation of parity |X|.
/// Differentials are treated as constants.
GradedPolynomial vf_apply(const VectorField& X, const GradedPolynomial& f);

/// Graded commutator [X,Y] = X Y - (-1)^{|X||Y|} Y X in component form.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// De Rham differential: x^a -> dx^a, dx^a -> 0; odd, squares to zero.
GradedPolynomial de_rham(const GradedPolynomial& f);

/// Interior product: dx^a -> X^a, x^a -> 0; parity |X|+1.
GradedPolynomial contraction(const VectorField& X, const GradedPolynomial& form);

/// Lie derivative as the derivation x^a -> X^a, dx^a -> (-1)^{|X|} d(X^a).
/// Satisfies L_X = [i_X, delta] as a graded commutator.
GradedPolynomial lie_derivative(const VectorField& X, const GradedPolynomial& form);

}  // namespace gobs
