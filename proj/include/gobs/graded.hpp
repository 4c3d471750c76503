#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gobs/scalar.hpp"

namespace gobs {

class GradedSpace;
using SpacePtr = std::shared_ptr<const GradedSpace>;

/// A homogeneous generator: a coordinate x (form degree 0) or its de Rham
/// differential dx (form degree 1, linked to its parent coordinate).
struct GradedVariable {
  std::string name;
  int internal_degree = 0;
  int form_degree = 0;
  int parent = -1;  // coordinate index for a differential, -1 otherwise

  int total_degree() const { return internal_degree + form_degree; }
  int parity() const { return ((total_degree() % 2) + 2) % 2; }
  bool is_odd() const { return parity() == 1; }
  bool is_differential() const { return form_degree == 1; }
};

/// Finite-dimensional graded vector space presented by its coordinates.
/// Coordinates occupy indices [0, coord_count); the differential of
/// coordinate a sits at index coord_count + a and is named "d<name>".
class GradedSpace {
public:
  static SpacePtr make(const std::vector<std::pair<std::string, int>>& coords);
  /// Product space: coordinates of a followed by coordinates of b.
  /// Names must not collide.
  static SpacePtr product(const SpacePtr& a, const SpacePtr& b);

  int coord_count() const { return ncoords_; }
  int var_count() const { return static_cast<int>(vars_.size()); }
  const GradedVariable& var(int idx) const { return vars_.at(static_cast<size_t>(idx)); }
  int differential_of(int coord) const { return ncoords_ + coord; }

  /// Index lookup; -1 when absent.
  int find(const std::string& name) const;
  int index_of(const std::string& name) const;  // throws when absent

private:
  std::vector<GradedVariable> vars_;
  std::map<std::string, int> index_;
  int ncoords_ = 0;
};

/// Ordered factor list (variable index, exponent) in ascending index order.
/// Odd variables carry exponent exactly 1; the empty list is the unit.
struct Monomial {
  std::vector<std::pair<int, int>> factors;

  bool is_unit() const { return factors.empty(); }
  int exponent_of(int var) const;
  bool operator<(const Monomial& o) const { return factors < o.factors; }
  bool operator==(const Monomial& o) const { return factors == o.factors; }
};

struct DegreeReport {
  bool homogeneous = false;
  int internal_degree = 0;
  int form_degree = 0;
  /// Per-term bidegrees when mixed: (internal, form) -> representative term text.
  std::vector<std::tuple<int, int, std::string>> breakdown;
};

/// Polynomial over a graded space in canonical (Koszul-signed) normal form:
/// a term map Monomial -> nonzero Scalar. Immutable by convention; all
/// operations return fresh values.
class GradedPolynomial {
public:
  GradedPolynomial() = default;
  explicit GradedPolynomial(SpacePtr space) : space_(std::move(space)) {}

  static GradedPolynomial zero(SpacePtr space) { return GradedPolynomial(std::move(space)); }
  static GradedPolynomial constant(SpacePtr space, Scalar c);
  static GradedPolynomial variable(const SpacePtr& space, int var_index);
  static GradedPolynomial variable(const SpacePtr& space, const std::string& name);

  const SpacePtr& space() const { return space_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  /// Adds c * (raw factor sequence); the sequence may be unordered and
  /// may repeat variables. Canonicalization applies the Koszul sign and
  /// drops odd squares.
  void add_term(const std::vector<std::pair<int, int>>& raw_factors, const Scalar& c);

  GradedPolynomial operator-() const;
  GradedPolynomial& operator+=(const GradedPolynomial& o);
  GradedPolynomial& operator-=(const GradedPolynomial& o);
  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const GradedPolynomial& a, const GradedPolynomial& b) { return !(a == b); }

  /// Canonical text, deterministic term order, explicit signs; "0" when zero.
  std::string str() const;

  Scalar coefficient(const Monomial& m) const;

private:
  friend GradedPolynomial mul(const GradedPolynomial&, const GradedPolynomial&);
  friend GradedPolynomial scale(const Scalar&, const GradedPolynomial&);
  friend GradedPolynomial scale_right(const GradedPolynomial&, const Scalar&);
  friend GradedPolynomial left_derivative(const GradedPolynomial&, int);

  void insert(const Monomial& m, const Scalar& c);

  SpacePtr space_;
  std::map<Monomial, Scalar> terms_;
};

/// Koszul-signed product. Coefficients multiply in argument order (matrix
/// coefficients do not commute); graded variables commute with coefficients.
GradedPolynomial mul(const GradedPolynomial& p, const GradedPolynomial& q);

/// c * p with c multiplying every coefficient from the left.
GradedPolynomial scale(const Scalar& c, const GradedPolynomial& p);
GradedPolynomial scale_right(const GradedPolynomial& p, const Scalar& c);

/// Left derivative with respect to variable index v.
GradedPolynomial left_derivative(const GradedPolynomial& p, int v);
GradedPolynomial left_derivative(const GradedPolynomial& p, const std::string& name);

DegreeReport grade_of(const GradedPolynomial& p);

/// True when every term has the stated bidegree (zero is homogeneous of any
/// degree).
bool is_homogeneous(const GradedPolynomial& p, int internal, int form);

/// Total-degree parity when defined (zero polynomial -> 0).
std::optional<int> parity_of(const GradedPolynomial& p);

/// Substitutes Scalar values for coordinates. Every coordinate appearing in
/// p must be assigned, be even, and not be a differential; matrix values are
/// allowed and multiply in canonical variable order.
Scalar eval_numeric(const GradedPolynomial& p, const std::map<std::string, Scalar>& assignment);

/// Rebuilds p over `target`, mapping variables by name (used to promote a
/// factor-space polynomial into a product space).
GradedPolynomial promote(const GradedPolynomial& p, const SpacePtr& target);

/// Simultaneous substitution var -> polynomial (over the same space). Each
/// replacement must be zero or have the parity of the variable it replaces;
/// exponents expand to powers of the replacement in place.
GradedPolynomial substitute(const GradedPolynomial& p,
                            const std::map<int, GradedPolynomial>& subs);

struct GradedError : std::runtime_error {
  explicit GradedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gobs
