#pragma once

#include "gobs/bv.hpp"

namespace gobs {

/// Matrix representation of a Lie algebra: one square matrix per basis
/// element, exact or complex. The homomorphism property
/// rho([e_a,e_b]) = [rho_a, rho_b] is checked at construction.
class Representation {
public:
  Representation(const LieAlgebra& g, std::vector<Scalar> matrices, double tol = 1e-12);

  int dim() const { return dim_; }
  int algebra_dim() const { return static_cast<int>(matrices_.size()); }
  const Scalar& matrix(int a) const { return matrices_.at(static_cast<size_t>(a)); }
  bool exact() const { return exact_; }
  bool traceless() const { return traceless_; }

  /// rho(sum c_a e_a) as a complex matrix.
  ComplexMatrix evaluate(const std::vector<std::complex<double>>& coeffs) const;

private:
  int dim_ = 0;
  bool exact_ = false;
  bool traceless_ = false;
  std::vector<Scalar> matrices_;
};

/// Spin-j representation of su(2) by skew-Hermitian matrices
/// t_a = -i J_a, satisfying [t_a,t_b] = eps_{abc} t_c. Exact entries for
/// two_j = 1 (Pauli/2) and two_j = 2 (adjoint); complex otherwise.
Representation spin_representation(const LieAlgebra& su2_algebra, int two_j);

/// N-site discretized circle: one Lie-algebra sample per edge, cyclic.
struct LatticeLoop {
  std::vector<std::vector<std::complex<double>>> samples;  // edge -> coefficients

  int edges() const { return static_cast<int>(samples.size()); }
  LatticeLoop rotated(int shift) const;
};

/// Ordered product of edge transports W = exp(rho(a_N)) ... exp(rho(a_1)).
ComplexMatrix holonomy(const LatticeLoop& loop, const Representation& rho);

/// tr W; invariant under the starting edge and lattice gauge transformations.
std::complex<double> wilson_loop_pexp(const LatticeLoop& loop, const Representation& rho);

/// Holonomy after the lattice gauge transformation U_k -> g_{k+1} U_k g_k^{-1}
/// with site elements g_1..g_N (g_{N+1} = g_1). Equals g_1 W g_1^{-1}.
ComplexMatrix gauge_transformed_holonomy(const LatticeLoop& loop, const Representation& rho,
                                         const std::vector<ComplexMatrix>& site_elements);

struct TorsionResult {
  std::complex<double> direct;   // det(rho(W) - id)
  std::complex<double> lattice;  // sign-normalized block-circulant determinant
  bool match = false;
};

/// Circle torsion observable: direct det(rho(W) - id) against the Berezin
/// evaluation of the discretized quadratic auxiliary action, which reduces
/// to (-1)^{N dim} det of the block circulant [delta_{k+1,l} - delta_{kl} U_k].
TorsionResult torsion_1d(const LatticeLoop& loop, const Representation& rho, double tol = 1e-10);

struct ExactTorsionResult {
  GaussianRational direct_det;   // det(W - id)
  GaussianRational lattice_det;  // sign-normalized circulant determinant
  bool match = false;
};

/// Exponential-free exact mode: per-edge group elements supplied directly.
ExactTorsionResult torsion_1d_exact(const std::vector<ExactMatrix>& transports);

/// Operator-valued fiber data over a base (space, Q): Theta_hat is a matrix
/// coefficient polynomial of internal degree 1.
struct QuantizedFiber {
  SpacePtr base;
  VectorField Q;
  int h_dim = 0;
  GradedPolynomial theta_hat;
};

/// Residual of the quantized fiber equation Q Theta_hat + i Theta_hat^2.
GradedPolynomial check_quantized_fiber(const QuantizedFiber& qf);

/// Quantized moment fiber over g[1] with the Chevalley-Eilenberg Q:
/// Theta_hat = i <psi, rho>; the residual vanishes iff rho is a
/// homomorphism (conventions as in docs/CONVENTIONS.md).
QuantizedFiber make_quantized_moment_fiber(const LieAlgebra& g, const Representation& rho);

/// Residual of [pi, F_hat] + i F_hat ^ F_hat on T*[1]R^d, with matrix
/// coefficients multiplying in place.
GradedPolynomial check_psm_f_hat(const ShiftedCotangent& T,
                                 const std::vector<std::vector<GradedPolynomial>>& pi,
                                 const GradedPolynomial& f_hat);

/// <p, F> polynomial for an operator-valued vector field with constant
/// matrix components scaled by i (the Wilson-loop instance for the
/// Lie-Poisson base).
GradedPolynomial make_psm_wilson_f_hat(const ShiftedCotangent& T, const Representation& rho);

struct PointObservableResult {
  bool gauge_ok = false;
  std::complex<double> value{};  // e^{i theta(X0)}
};

/// N = point observable: checks Q theta = 0 and evaluates exp(i theta(X0)).
PointObservableResult point_observable(const SpacePtr& base, const VectorField& Q,
                                       const GradedPolynomial& theta,
                                       const std::map<std::string, Scalar>& assignment);

/// tr f(M) for a polynomial f in one even variable: the 0-dimensional
/// observable of 2d BF theory evaluated at rho(B_0) = M.
std::complex<double> trace_observable(const GradedPolynomial& f, const std::string& var,
                                      const Scalar& matrix_value);

/// Plain-text formats (byte-level examples in docs/FORMATS.md):
/// loop file: one edge per line, comma-separated Lie-algebra coefficients;
/// rep file: "dim d" header then, per basis element, d rows of d
/// comma-separated entries (a+bi accepted).
LatticeLoop read_loop_file(const std::string& path);
std::vector<Scalar> read_matrix_blocks(const std::string& path, bool exact);

}  // namespace gobs
