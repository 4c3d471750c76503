#pragma once

#include "gobs/graded.hpp"

namespace gobs {

/// Finite-dimensional Lie algebra data: structure constants f^c_{ab} with
/// [e_a, e_b] = f^c_{ab} e_c, and an optional symmetric pairing kappa.
class LieAlgebra {
public:
  LieAlgebra(int dim, std::string name);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

  const GaussianRational& f(int c, int a, int b) const {
    return f_[static_cast<size_t>((c * dim_ + a) * dim_ + b)];
  }
  void set_f(int c, int a, int b, GaussianRational v);

  bool has_pairing() const { return has_pairing_; }
  const ExactMatrix& pairing() const { return kappa_; }
  void set_pairing(ExactMatrix kappa);

  /// f^c_{ab} = -f^c_{ba}.
  bool antisymmetric() const;
  /// Jacobi identity over all triples.
  bool jacobi() const;
  /// kappa([x,y],z) + kappa(y,[x,z]) = 0 over all triples.
  bool pairing_invariant() const;
  /// tr ad_x = 0 for all basis x.
  bool unimodular() const;

  /// [x, y] for coefficient vectors of polynomials.
  std::vector<GradedPolynomial> bracket(const std::vector<GradedPolynomial>& x,
                                        const std::vector<GradedPolynomial>& y) const;

  /// Adjoint representation matrices (ad_a)^c_b = f^c_{ab}.
  std::vector<ExactMatrix> adjoint_matrices() const;

private:
  int dim_;
  std::string name_;
  std::vector<GaussianRational> f_;
  ExactMatrix kappa_;
  bool has_pairing_ = false;
};

/// su(2) with f^c_{ab} = eps_{cab} and the Killing-normalized pairing
/// kappa = Id (so that [e1,e2] = e3 cyclically).
LieAlgebra su2();
/// so(3): same structure constants as su(2), Euclidean pairing.
LieAlgebra so3();
/// Abelian algebra of the given dimension, pairing = Id.
LieAlgebra abelian(int dim);

}  // namespace gobs
