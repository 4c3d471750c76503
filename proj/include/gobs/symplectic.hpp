#pragma once

#include "gobs/derivation.hpp"

namespace gobs {

namespace exact_linalg {

/// Gauss-Jordan inverse over Q(i). Throws GradedError on a singular input.
ExactMatrix inverse(const ExactMatrix& m);

GaussianRational determinant(ExactMatrix m);

int rank(ExactMatrix m);

/// Solves A x = b exactly; returns nullopt when inconsistent. A may be
/// rectangular; any solution is returned (free variables set to zero).
std::optional<std::vector<GaussianRational>> solve(ExactMatrix a,
                                                   std::vector<GaussianRational> b);

}  // namespace exact_linalg

/// Constant-coefficient symplectic form omega = 1/2 omega_ab dx^a dx^b of
/// internal degree n on a graded space. Entries pair only coordinates with
/// |x^a| + |x^b| = n; the matrix satisfies the graded antisymmetry
/// omega_ba = (-1)^{(|x^a|+1)(|x^b|+1)} omega_ab and is nondegenerate.
class ConstantSymplectic {
public:
  ConstantSymplectic(SpacePtr space, ExactMatrix entries, int degree);

  const SpacePtr& space() const { return space_; }
  int degree() const { return degree_; }
  const ExactMatrix& matrix() const { return matrix_; }
  const ExactMatrix& inverse_matrix() const { return inverse_; }

  /// The polynomial 1/2 omega_ab dx^a dx^b.
  GradedPolynomial two_form() const;

  std::string str() const { return two_form().str(); }

private:
  SpacePtr space_;
  ExactMatrix matrix_;
  ExactMatrix inverse_;
  int degree_ = 0;
};

/// {f,g} = sum (-1)^{(p(b)+1)(p(f)+p(b))} (d_L f/dx^b) (omega^{-1})_{ba}
/// (d_L g/dx^a). The sign is anchored so hamiltonian_vf reproduces the
/// standard cohomological vector fields of the built-in targets; see
/// docs/CONVENTIONS.md.
///
/// f's space may be a product containing omega's coordinates by name (the
/// fiber-bracket case); g is promoted to f's space.
GradedPolynomial poisson_bracket(const GradedPolynomial& f, const GradedPolynomial& g,
                                 const ConstantSymplectic& omega);

/// X_f with iota_{X_f} omega = delta f; satisfies vf_apply(X_f, g) = {f,g}.
/// Requires homogeneous f. As above, f may live on a product space; the
/// result is a vector field there with components on omega's coordinates.
VectorField hamiltonian_vf(const GradedPolynomial& f, const ConstantSymplectic& omega);

/// Vertical de Rham differential: x^a -> dx^a only for the listed
/// coordinates, everything else killed.
GradedPolynomial de_rham_vertical(const GradedPolynomial& f, const std::vector<int>& coords);

VectorField scale(const Scalar& c, const VectorField& X);

}  // namespace gobs
