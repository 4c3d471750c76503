#pragma once

#include "gobs/lie.hpp"
#include "gobs/schouten.hpp"
#include "gobs/symplectic.hpp"

namespace gobs {

struct ResidualEntry {
  std::string name;
  bool ok = false;
  bool advisory = false;  // informational entries do not affect validity
  std::string residual;   // canonical rendering, "0" when ok
  std::string note;
};

struct VerificationReport {
  std::vector<ResidualEntry> entries;
  std::vector<std::string> warnings;

  bool valid() const {
    for (const auto& e : entries)
      if (!e.advisory && !e.ok) return false;
    return true;
  }
  const ResidualEntry* find(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

/// (M, Q, omega = delta alpha, Theta) with |omega| = n, |Theta| = n+1,
/// {Theta,.} = Q and {Theta,Theta} = 0. Validity is established by
/// verify_ham_q_manifold, never assumed.
struct HamiltonianQManifold {
  SpacePtr space;
  VectorField Q;
  ConstantSymplectic omega;
  GradedPolynomial alpha;
  GradedPolynomial theta;
  int n = 0;
  std::vector<std::string> warnings;
};

/// Trivial bundle M x N with vertical A = {Theta', .}_{omega'} and the fiber
/// classical master equation Q Theta' + 1/2 {Theta',Theta'}_{omega'} = 0.
/// The total space lists base coordinates first.
struct TrivialHamQBundle {
  SpacePtr total;
  SpacePtr base_space;
  SpacePtr fiber_space;
  std::vector<int> base_coords;   // indices into total
  std::vector<int> fiber_coords;  // indices into total
  VectorField Q;                  // horizontal lift, base components only
  VectorField A;                  // vertical, fiber components only
  ConstantSymplectic omega_prime;  // over fiber_space
  GradedPolynomial alpha_prime;    // over total
  GradedPolynomial theta_prime;    // over total
  int n_prime = 0;
  std::optional<ConstantSymplectic> base_omega;  // enables the advisory base-bracket residual
  std::vector<std::string> warnings;
  /// Constructor-specific residuals (equivariance, L-infinity relations,
  /// cyclicity readings); appended verbatim by verify_ham_q_bundle.
  std::vector<ResidualEntry> extra;
};

VerificationReport verify_ham_q_manifold(const HamiltonianQManifold& m);
VerificationReport verify_ham_q_bundle(const TrivialHamQBundle& b);

/// Target constructors (section "Examples" of the standard AKSZ zoo).
/// Inputs are checked structurally (antisymmetry of f, nondegenerate
/// pairing); semantic failures (Jacobi, invariance) surface as verifier
/// residuals or warnings so that corrupted data can be exercised.

/// Chern-Simons target on g[1]: coordinates psi^a of degree 1,
/// omega = 1/2 (dpsi,dpsi), Theta = 1/6 (psi,[psi,psi]), n = 2.
HamiltonianQManifold make_chern_simons(const LieAlgebra& g, const std::string& coord_prefix = "psi");

/// BF target on g[1] + g*[D-2]: omega = <dxi,dpsi>, Theta = 1/2<xi,[psi,psi]>,
/// n = D-1. Non-unimodular g gives a warning.
HamiltonianQManifold make_bf(const LieAlgebra& g, int D, const std::string& psi_prefix = "psi",
                             const std::string& xi_prefix = "xi");

/// Poisson sigma target on T*[1]R^d: Theta = 1/2 <pi(x), p p>, n = 1.
/// pi[i][j] are polynomials over T.space() in the base coordinates.
HamiltonianQManifold make_poisson_sigma(const ShiftedCotangent& T,
                                        const std::vector<std::vector<GradedPolynomial>>& pi);

/// Example bundle constructors.

/// g-module with invariant pairing: fiber R[shift] with A = <rho(psi)x, d/dx>,
/// Theta' = 1/2 (x, rho(psi) x). Euclidean pairing requires odd shift
/// (degree 4k+2), antisymmetric pairing even shift (degree 4k).
TrivialHamQBundle make_orthogonal_module(const LieAlgebra& g, const ExactMatrix& pairing,
                                         const std::vector<ExactMatrix>& rho, int shift,
                                         const std::string& x_prefix = "x");

/// Finite L-infinity package: operations indexed by arity with coefficient
/// tensors over coordinates. entries[(a1..aj)] is the output coefficient
/// vector; unlisted tuples are zero.
struct MultilinearOp {
  int arity = 0;
  std::map<std::vector<int>, std::vector<GaussianRational>> entries;
};

/// L-infinity algebra data on a coordinate space g[1] (degrees supplied by
/// the caller): Q = sum_j 1/j! <l_j(psi..psi), d/dpsi>.
VectorField linfty_vector_field(const SpacePtr& space, const std::vector<MultilinearOp>& ops);

/// Per-arity report of the relations [Q,Q] = 0; arities beyond the supplied
/// maximum are listed as unverifiable.
VerificationReport linfty_relation_report(const SpacePtr& space,
                                          const std::vector<MultilinearOp>& ops);

/// L-infinity module bundle (generalizes the orthogonal module): base
/// operations l_j, module operations rho_j whose tensor key appends the
/// module input index after the j algebra inputs.
TrivialHamQBundle make_linfty_module(const SpacePtr& base, const std::vector<MultilinearOp>& l_ops,
                                     const std::vector<std::pair<std::string, int>>& fiber_coords,
                                     const std::vector<MultilinearOp>& rho_ops,
                                     const ExactMatrix& pairing);

/// L-infinity ideal bundle: h[1] presented by coordinates, lambda_j the
/// operations on h, ideal = indices of the ideal coordinates, pairing on the
/// ideal block. The quotient keeps the complementary coordinates.
TrivialHamQBundle make_linfty_ideal(const SpacePtr& h_space, const std::vector<MultilinearOp>& lambda,
                                    const std::vector<int>& ideal, const ExactMatrix& pairing);

/// Moment-map bundle: base g[1], fiber linear symplectic R^{2m} with constant
/// omega_M and quadratic moment components mu_a. Equivariance
/// {mu_a,mu_b} = f^c_{ab} mu_c is reported as a residual entry.
TrivialHamQBundle make_moment_map(const LieAlgebra& g, const SpacePtr& phase_space,
                                  const ExactMatrix& omega_m, const GradedPolynomial& alpha_m,
                                  const std::vector<GradedPolynomial>& mu);

/// Point fiber: A = 0, omega' empty, Theta' = theta with Q theta = 0 and
/// |theta| = p; declared degree p-1.
TrivialHamQBundle make_point_fiber(const SpacePtr& base, const VectorField& Q,
                                   const GradedPolynomial& theta, int p,
                                   std::optional<ConstantSymplectic> base_omega = std::nullopt);

/// Cattaneo-Rossi fiber over the BF target: N = g + g*[D-3],
/// Theta' = <p,[psi,q]> + <xi,q>, degree D-3.
TrivialHamQBundle make_cattaneo_rossi(const LieAlgebra& g, int D);

}  // namespace gobs
