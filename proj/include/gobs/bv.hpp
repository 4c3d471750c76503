#pragma once

#include "gobs/q_structures.hpp"

namespace gobs {

/// Odd symplectic space in Darboux form: pairs (x^i, xi_i) of coordinates
/// with |x^i| + |xi_i| = -1 and the constant coordinate Berezin measure.
/// Omega = sum_i d(xi_i) d(x^i), degree -1.
class OddSymplecticSpace {
public:
  OddSymplecticSpace(SpacePtr space, std::vector<std::pair<int, int>> pairs);

  /// Builds the space from (name, degree) of the x-members; conjugates are
  /// named with the given suffix and carry degree -1-|x|.
  static OddSymplecticSpace make(const std::vector<std::pair<std::string, int>>& fields,
                                 const std::string& conjugate_prefix = "anti_");

  const SpacePtr& space() const { return space_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }
  const ConstantSymplectic& omega() const { return omega_; }

private:
  SpacePtr space_;
  std::vector<std::pair<int, int>> pairs_;
  ConstantSymplectic omega_;
};

/// (F, Omega, S): validity at the classical (CME) or quantum (QME) level is
/// established by the checkers below.
struct BVTheory {
  OddSymplecticSpace space;
  GradedPolynomial S;  // degree 0
};

/// Coordinate Lagrangian: per Darboux pair, the member that is set to zero
/// (the other is integrated over).
struct LagrangianSubspace {
  std::vector<int> zeroed;  // coordinate indices, one per pair

  /// Zero the conjugates: integrate every x-member.
  static LagrangianSubspace integrate_fields(const OddSymplecticSpace& sp);
  /// Zero the fields: integrate every conjugate.
  static LagrangianSubspace integrate_conjugates(const OddSymplecticSpace& sp);
  /// Swap the choice on one pair.
  LagrangianSubspace swapped(const OddSymplecticSpace& sp, int pair_index) const;
};

/// Extension of an ambient (space, Q) by auxiliary fields: a degree -1
/// Hamiltonian Q-bundle over the ambient space in Darboux form.
struct PreObservable {
  SpacePtr ambient;
  VectorField Q_ambient;                // over ambient
  OddSymplecticSpace aux;
  SpacePtr total;                       // ambient x aux
  GradedPolynomial S_aux;               // over total, degree 0
  std::optional<BVTheory> ambient_theory;  // required for the quantum level

  static PreObservable make(SpacePtr ambient, VectorField Q, OddSymplecticSpace aux,
                            const GradedPolynomial& s_aux,
                            std::optional<BVTheory> ambient_theory = std::nullopt);
};

enum class PreObservableLevel { Classical, SemiQuantum, Quantum };

/// Delta f = sum_i d_L/dx^i d_L/dxi_i f; squares to zero and satisfies the
/// BV-algebra identity against the induced bracket (docs/CONVENTIONS.md).
/// f may live on a product space containing the Darboux coordinates.
GradedPolynomial bv_laplacian(const GradedPolynomial& f, const OddSymplecticSpace& sp);

/// {S,S}_Omega.
GradedPolynomial check_cme(const BVTheory& t);

/// 1/2 {S,S}_Omega - i Delta S.
GradedPolynomial check_qme(const BVTheory& t);

/// delta_BV(O) = {S,O}_Omega - i Delta O; nilpotent when the QME holds.
GradedPolynomial delta_bv_apply(const BVTheory& t, const GradedPolynomial& O);

struct PreObservableReport {
  GradedPolynomial residual;
  std::vector<std::string> notes;
};

/// Classical:    Q S_aux + 1/2 {S_aux,S_aux}_aux
/// Semi-quantum: classical - i Delta_aux S_aux
/// Quantum:      1/2{T,T}_{amb+aux} - i (Delta_amb + Delta_aux) T,  T = S + S_aux
PreObservableReport check_pre_observable(const PreObservable& p, PreObservableLevel level);

/// Iterated top-coefficient extraction, d v_1 d v_2 ... d v_k with the
/// rightmost measure applied first; int dv v = 1, int dv 1 = 0.
GradedPolynomial berezin_integrate(const GradedPolynomial& f, const std::vector<int>& odd_vars);
GradedPolynomial berezin_integrate(const GradedPolynomial& f,
                                   const std::vector<std::string>& odd_vars);

/// Formal Gaussian average of `prefactor` against exp(i * exponent) over the
/// listed even variables. The exponent's pure quadratic part must have
/// constant invertible coefficients; linear sources are completed by
/// shifting; leftover exponent terms are expanded (and must terminate).
/// Normalization: the prefactor-1 integral is 1; the two-point function is
/// <y^a y^b> = i (A^{-1})_{ab}.
GradedPolynomial wick_gaussian(const GradedPolynomial& exponent, const GradedPolynomial& prefactor,
                               const std::vector<int>& even_vars);

/// Fiber BV integral of prefactor * exp(i * exponent) over the selected
/// pairs restricted to L: Berezin over the odd remaining coordinates (pair
/// declaration order), Wick over the even ones, with the normalization that
/// maps <p, M q> exactly to det M (docs/CONVENTIONS.md).
GradedPolynomial fiber_integral(const GradedPolynomial& exponent, const GradedPolynomial& prefactor,
                                const OddSymplecticSpace& aux, const std::vector<int>& pair_subset,
                                const LagrangianSubspace& L, const SpacePtr& result_space);

/// Push-forward to the ambient theory: O = int_L exp(i S_aux). Requires the
/// semi-quantum master equation; verifies Q(O) = 0 before returning.
GradedPolynomial bv_pushforward(const PreObservable& p, const LagrangianSubspace& L);

struct WitnessResult {
  bool exact = false;
  GradedPolynomial witness;  // Q(witness) = diff when exact
  std::string certificate;   // rank evidence when not exact
};

/// Solves Q(psi) = diff over the monomial basis of internal degree
/// |diff| - 1 and polynomial degree <= degree_bound, exactly.
WitnessResult q_exactness_witness(const VectorField& Q, const GradedPolynomial& diff,
                                  int degree_bound);

}  // namespace gobs
