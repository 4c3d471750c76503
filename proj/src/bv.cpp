#include "gobs/bv.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gobs {

namespace {

ExactMatrix odd_symplectic_matrix(const SpacePtr& space,
                                  const std::vector<std::pair<int, int>>& pairs) {
  const int n = space->coord_count();
  ExactMatrix w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = GaussianRational(0);
  for (const auto& [x, xi] : pairs) {
    // Omega = sum d(xi) d(x); the pair block is symmetric because the two
    // differentials have opposite parity.
    w(xi, x) = GaussianRational(1);
    w(x, xi) = GaussianRational(1);
  }
  return w;
}

}  // namespace

OddSymplecticSpace::OddSymplecticSpace(SpacePtr space, std::vector<std::pair<int, int>> pairs)
    : space_(std::move(space)),
      pairs_(std::move(pairs)),
      omega_(space_, odd_symplectic_matrix(space_, pairs_), -1) {
  std::vector<bool> used(static_cast<size_t>(space_->coord_count()), false);
  for (const auto& [x, xi] : pairs_) {
    if (space_->var(x).internal_degree + space_->var(xi).internal_degree != -1)
      throw GradedError("Darboux pair degrees must sum to -1: (" + space_->var(x).name + "," +
                        space_->var(xi).name + ")");
    if (used[static_cast<size_t>(x)] || used[static_cast<size_t>(xi)])
      throw GradedError("coordinate used in two Darboux pairs");
    used[static_cast<size_t>(x)] = used[static_cast<size_t>(xi)] = true;
  }
  for (int i = 0; i < space_->coord_count(); ++i)
    if (!used[static_cast<size_t>(i)])
      throw GradedError("coordinate outside every Darboux pair: " + space_->var(i).name);
}

OddSymplecticSpace OddSymplecticSpace::make(const std::vector<std::pair<std::string, int>>& fields,
                                            const std::string& conjugate_prefix) {
  std::vector<std::pair<std::string, int>> coords;
  for (const auto& [name, deg] : fields) {
    coords.emplace_back(name, deg);
    coords.emplace_back(conjugate_prefix + name, -1 - deg);
  }
  SpacePtr sp = GradedSpace::make(coords);
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < fields.size(); ++i)
    pairs.emplace_back(static_cast<int>(2 * i), static_cast<int>(2 * i + 1));
  return OddSymplecticSpace(sp, pairs);
}

LagrangianSubspace LagrangianSubspace::integrate_fields(const OddSymplecticSpace& sp) {
  LagrangianSubspace L;
  for (const auto& [x, xi] : sp.pairs()) L.zeroed.push_back(xi);
  return L;
}

LagrangianSubspace LagrangianSubspace::integrate_conjugates(const OddSymplecticSpace& sp) {
  LagrangianSubspace L;
  for (const auto& [x, xi] : sp.pairs()) L.zeroed.push_back(x);
  return L;
}

LagrangianSubspace LagrangianSubspace::swapped(const OddSymplecticSpace& sp, int pair_index) const {
  LagrangianSubspace L = *this;
  const auto& [x, xi] = sp.pairs().at(static_cast<size_t>(pair_index));
  int& z = L.zeroed.at(static_cast<size_t>(pair_index));
  z = (z == x) ? xi : x;
  return L;
}

PreObservable PreObservable::make(SpacePtr ambient, VectorField Q, OddSymplecticSpace aux,
                                  const GradedPolynomial& s_aux,
                                  std::optional<BVTheory> ambient_theory) {
  SpacePtr total = GradedSpace::product(ambient, aux.space());
  VectorField Qt(total, Q.degree());
  for (const auto& [c, comp] : Q.components())
    Qt.set_component(total->index_of(ambient->var(c).name), promote(comp, total));
  PreObservable p{std::move(ambient), std::move(Qt), std::move(aux), total,
                  promote(s_aux, total), std::move(ambient_theory)};
  if (!is_homogeneous(p.S_aux, 0, 0)) throw GradedError("S_aux must have degree 0");
  return p;
}

GradedPolynomial bv_laplacian(const GradedPolynomial& f, const OddSymplecticSpace& sp) {
  const SpacePtr& ambient = f.space() ? f.space() : sp.space();
  GradedPolynomial r(ambient);
  if (f.is_zero()) return r;
  for (const auto& [x, xi] : sp.pairs()) {
    int xv = ambient == sp.space() ? x : ambient->index_of(sp.space()->var(x).name);
    int xiv = ambient == sp.space() ? xi : ambient->index_of(sp.space()->var(xi).name);
    r += left_derivative(left_derivative(f, xiv), xv);
  }
  return r;
}

GradedPolynomial check_cme(const BVTheory& t) { return poisson_bracket(t.S, t.S, t.space.omega()); }

GradedPolynomial check_qme(const BVTheory& t) {
  GradedPolynomial r = scale(Scalar::fraction(1, 2), check_cme(t));
  r -= scale(Scalar::i(), bv_laplacian(t.S, t.space));
  return r;
}

GradedPolynomial delta_bv_apply(const BVTheory& t, const GradedPolynomial& O) {
  GradedPolynomial r = poisson_bracket(t.S, promote(O, t.S.space()), t.space.omega());
  r -= scale(Scalar::i(), bv_laplacian(promote(O, t.S.space()), t.space));
  return r;
}

PreObservableReport check_pre_observable(const PreObservable& p, PreObservableLevel level) {
  PreObservableReport rep;
  if (level == PreObservableLevel::Quantum) {
    if (!p.ambient_theory)
      throw GradedError("quantum pre-observable check requires the ambient BV theory");
    GradedPolynomial T = promote(p.ambient_theory->S, p.total) + p.S_aux;
    GradedPolynomial r = scale(Scalar::fraction(1, 2),
                               poisson_bracket(T, T, p.ambient_theory->space.omega()) +
                                   poisson_bracket(T, T, p.aux.omega()));
    r -= scale(Scalar::i(), bv_laplacian(T, p.ambient_theory->space) + bv_laplacian(T, p.aux));
    rep.residual = r;
    rep.notes.push_back("quantum master equation for S + S_aux on the product space");
    return rep;
  }
  GradedPolynomial r = vf_apply(p.Q_ambient, p.S_aux) +
                       scale(Scalar::fraction(1, 2), poisson_bracket(p.S_aux, p.S_aux, p.aux.omega()));
  if (level == PreObservableLevel::SemiQuantum) {
    r -= scale(Scalar::i(), bv_laplacian(p.S_aux, p.aux));
    rep.notes.push_back("semi-quantum master equation");
  } else {
    rep.notes.push_back("classical master equation for the auxiliary action");
  }
  rep.residual = r;
  return rep;
}

GradedPolynomial berezin_integrate(const GradedPolynomial& f, const std::vector<int>& odd_vars) {
  GradedPolynomial acc = f;
  for (auto it = odd_vars.rbegin(); it != odd_vars.rend(); ++it) {
    if (!f.space()->var(*it).is_odd())
      throw GradedError("berezin_integrate: variable " + f.space()->var(*it).name + " is even");
    acc = left_derivative(acc, *it);
  }
  return acc;
}

GradedPolynomial berezin_integrate(const GradedPolynomial& f,
                                   const std::vector<std::string>& odd_vars) {
  std::vector<int> idx;
  for (const auto& n : odd_vars) idx.push_back(f.space()->index_of(n));
  return berezin_integrate(f, idx);
}

namespace {

constexpr int kSeriesCap = 48;

struct GaussianKernel {
  std::vector<int> vars;      // even integration variables
  ExactMatrix propagator;     // i * A^{-1} is applied at pairing time
  std::map<int, int> slot;    // variable -> matrix index
};

// Extracts the constant pure quadratic part in `vars` from the exponent and
// returns the matrix A of 1/2 y^T A y; `rest` receives everything else.
ExactMatrix split_quadratic(const GradedPolynomial& exponent, const std::vector<int>& vars,
                            const std::map<int, int>& slot, GradedPolynomial& rest) {
  const int n = static_cast<int>(vars.size());
  ExactMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = GaussianRational(0);
  rest = GradedPolynomial(exponent.space());
  for (const auto& [m, c] : exponent.terms()) {
    int ydeg = 0;
    bool pure = true;
    for (const auto& [v, e] : m.factors) {
      if (slot.count(v))
        ydeg += e;
      else
        pure = false;
    }
    if (ydeg == 2 && pure && !c.is_matrix() && c.is_exact()) {
      if (m.factors.size() == 1) {
        int i = slot.at(m.factors[0].first);
        a(i, i) += c.exact() * GaussianRational(2);
      } else {
        int i = slot.at(m.factors[0].first);
        int j = slot.at(m.factors[1].first);
        a(i, j) += c.exact();
        a(j, i) += c.exact();
      }
      continue;
    }
    GradedPolynomial t(exponent.space());
    t.add_term(m.factors, c);
    rest += t;
  }
  return a;
}

// Wick moment: pairs off the kernel variables in a term, leaving the rest.
// Even variables only, so no Koszul bookkeeping is needed here.
GradedPolynomial wick_term(const Monomial& m, const Scalar& c, const GaussianKernel& k,
                           const SpacePtr& space) {
  std::vector<int> ys;  // kernel variable occurrences, with multiplicity
  std::vector<std::pair<int, int>> others;
  for (const auto& [v, e] : m.factors) {
    if (k.slot.count(v))
      for (int t = 0; t < e; ++t) ys.push_back(v);
    else
      others.emplace_back(v, e);
  }
  GradedPolynomial out(space);
  if (ys.size() % 2 != 0) return out;  // odd moment
  // Recursive pairing of the first occurrence with each later one.
  std::function<Scalar(std::vector<int>&)> moment = [&](std::vector<int>& zs) -> Scalar {
    if (zs.empty()) return Scalar(1);
    Scalar acc(0);
    std::vector<int> rest(zs.begin() + 1, zs.end());
    for (size_t j = 0; j < rest.size(); ++j) {
      Scalar pair_val = Scalar::i() * Scalar(k.propagator(k.slot.at(zs[0]), k.slot.at(rest[j])));
      if (pair_val.is_zero()) continue;
      std::vector<int> next;
      for (size_t t = 0; t < rest.size(); ++t)
        if (t != j) next.push_back(rest[t]);
      acc += pair_val * moment(next);
    }
    return acc;
  };
  Scalar value = moment(ys);
  if (value.is_zero()) return out;
  out.add_term(others, c * value);
  return out;
}

GradedPolynomial wick_integrate(const GradedPolynomial& p, const GaussianKernel& k) {
  GradedPolynomial out(p.space());
  for (const auto& [m, c] : p.terms()) out += wick_term(m, c, k, p.space());
  return out;
}

// exp(i T) * prefactor as a terminating series; throws when the series fails
// to terminate within the cap (non-nilpotent exponent remainder).
GradedPolynomial exp_series(const GradedPolynomial& T, const GradedPolynomial& prefactor) {
  GradedPolynomial acc = prefactor;
  GradedPolynomial power = prefactor;
  Scalar i_over_k(1);
  for (int kk = 1; kk <= kSeriesCap; ++kk) {
    power = mul(T, power);
    if (power.is_zero()) return acc;
    i_over_k = i_over_k * Scalar::i() / Scalar(kk);
    acc += scale(i_over_k, power);
  }
  throw GradedError(
      "exponential series does not terminate: exponent outside the odd-bilinear / "
      "Gaussian-plus-nilpotent classes");
}

struct ShiftResult {
  GradedPolynomial exponent_rest;  // T after completing the square
  GradedPolynomial prefactor;      // shifted prefactor
};

// Completes the square for the linear part of the exponent in the kernel
// variables: y -> y - A^{-1} b, leaving the pure Gaussian plus
// -1/2 b^T A^{-1} b and the shifted remainder.
ShiftResult complete_square(const GradedPolynomial& rest, const GradedPolynomial& prefactor,
                            const GaussianKernel& k, const ExactMatrix& a_inv) {
  const SpacePtr& space = rest.space();
  const int n = static_cast<int>(k.vars.size());
  // Extract b_j: terms with exactly one kernel variable, exponent 1.
  std::vector<GradedPolynomial> b(static_cast<size_t>(n), GradedPolynomial(space));
  GradedPolynomial remainder(space);
  for (const auto& [m, c] : rest.terms()) {
    int ydeg = 0;
    int yvar = -1;
    for (const auto& [v, e] : m.factors)
      if (k.slot.count(v)) {
        ydeg += e;
        yvar = v;
      }
    if (ydeg == 1) {
      std::vector<std::pair<int, int>> others;
      for (const auto& [v, e] : m.factors)
        if (v != yvar) others.emplace_back(v, e);
      GradedPolynomial t(space);
      t.add_term(others, c);  // kernel variables are even: no sign to track
      b[static_cast<size_t>(k.slot.at(yvar))] += t;
    } else {
      GradedPolynomial t(space);
      t.add_term(m.factors, c);
      remainder += t;
    }
  }
  bool have_b = false;
  for (const auto& bj : b)
    if (!bj.is_zero()) have_b = true;
  if (!have_b) return {remainder, prefactor};

  // s_j = sum_k (A^{-1})_{jk} b_k; substitution y_j -> y_j - s_j.
  std::map<int, GradedPolynomial> subs;
  std::vector<GradedPolynomial> s(static_cast<size_t>(n), GradedPolynomial(space));
  for (int j = 0; j < n; ++j) {
    for (int kk = 0; kk < n; ++kk)
      if (!a_inv(j, kk).is_zero())
        s[static_cast<size_t>(j)] += scale(Scalar(a_inv(j, kk)), b[static_cast<size_t>(kk)]);
    GradedPolynomial y = GradedPolynomial::variable(space, k.vars[static_cast<size_t>(j)]);
    subs.emplace(k.vars[static_cast<size_t>(j)], y - s[static_cast<size_t>(j)]);
  }
  // -1/2 b^T A^{-1} b
  GradedPolynomial completion(space);
  for (int j = 0; j < n; ++j)
    if (!b[static_cast<size_t>(j)].is_zero())
      completion += mul(b[static_cast<size_t>(j)], s[static_cast<size_t>(j)]);
  completion = scale(Scalar::fraction(-1, 2), completion);

  ShiftResult out{substitute(remainder, subs) + completion, substitute(prefactor, subs)};
  return out;
}

}  // namespace

GradedPolynomial wick_gaussian(const GradedPolynomial& exponent, const GradedPolynomial& prefactor,
                               const std::vector<int>& even_vars) {
  const SpacePtr& space = exponent.space();
  GaussianKernel k;
  k.vars = even_vars;
  for (size_t i = 0; i < even_vars.size(); ++i) {
    if (space->var(even_vars[i]).is_odd())
      throw GradedError("wick_gaussian: odd variable in the Gaussian kernel");
    k.slot.emplace(even_vars[i], static_cast<int>(i));
  }
  GradedPolynomial rest(space);
  ExactMatrix a = split_quadratic(exponent, even_vars, k.slot, rest);
  ExactMatrix a_inv;
  try {
    a_inv = exact_linalg::inverse(a);
  } catch (const GradedError&) {
    throw GradedError("wick_gaussian: degenerate quadratic form");
  }
  k.propagator = a_inv;
  ShiftResult sh = complete_square(rest, promote(prefactor, space), k, a_inv);
  GradedPolynomial integrand = exp_series(sh.exponent_rest, sh.prefactor);
  return wick_integrate(integrand, k);
}

GradedPolynomial fiber_integral(const GradedPolynomial& exponent, const GradedPolynomial& prefactor,
                                const OddSymplecticSpace& aux, const std::vector<int>& pair_subset,
                                const LagrangianSubspace& L, const SpacePtr& result_space) {
  const SpacePtr& space = exponent.space() ? exponent.space() : aux.space();
  // Zero out the non-integrated members; collect the integrated ones.
  std::map<int, GradedPolynomial> kill;
  std::vector<int> odd_vars, even_vars;
  for (int pi : pair_subset) {
    const auto& [x, xi] = aux.pairs().at(static_cast<size_t>(pi));
    int zero_local = L.zeroed.at(static_cast<size_t>(pi));
    if (zero_local != x && zero_local != xi)
      throw GradedError("Lagrangian selection does not match the Darboux pair");
    int keep_local = (zero_local == x) ? xi : x;
    int zero = space == aux.space() ? zero_local : space->index_of(aux.space()->var(zero_local).name);
    int keep = space == aux.space() ? keep_local : space->index_of(aux.space()->var(keep_local).name);
    kill.emplace(zero, GradedPolynomial::zero(space));
    if (space->var(keep).is_odd())
      odd_vars.push_back(keep);
    else
      even_vars.push_back(keep);
  }
  GradedPolynomial expo = substitute(exponent, kill);
  GradedPolynomial pref = substitute(promote(prefactor, space), kill);

  GaussianKernel k;
  k.vars = even_vars;
  for (size_t i = 0; i < even_vars.size(); ++i) k.slot.emplace(even_vars[i], static_cast<int>(i));
  GradedPolynomial rest(space);
  ExactMatrix a = split_quadratic(expo, even_vars, k.slot, rest);
  ExactMatrix a_inv;
  if (!even_vars.empty()) {
    try {
      a_inv = exact_linalg::inverse(a);
    } catch (const GradedError&) {
      throw GradedError("degenerate gauge fixing: even-even quadratic block not invertible");
    }
    k.propagator = a_inv;
  }
  ShiftResult sh = even_vars.empty() ? ShiftResult{rest, pref}
                                     : complete_square(rest, pref, k, a_inv);
  GradedPolynomial integrand = exp_series(sh.exponent_rest, sh.prefactor);
  GradedPolynomial after_berezin = berezin_integrate(integrand, odd_vars);
  GradedPolynomial after_wick = even_vars.empty() ? after_berezin : wick_integrate(after_berezin, k);

  // Normalization: (1/i)^h (-1)^{h(h-1)/2} with h = floor(n_odd/2) makes the
  // odd-bilinear integral of exp(i<p,Mq>) equal det M exactly (calibrated
  // against the exact determinant; docs/CONVENTIONS.md).
  const long h = static_cast<long>(odd_vars.size() / 2);
  Scalar norm(1);
  for (long t = 0; t < h; ++t) norm = norm / Scalar::i();
  if (((h * (h - 1) / 2) % 2) != 0) norm = -norm;
  GradedPolynomial result = scale(norm, after_wick);
  return promote(result, result_space);
}

GradedPolynomial bv_pushforward(const PreObservable& p, const LagrangianSubspace& L) {
  PreObservableReport pre = check_pre_observable(p, PreObservableLevel::SemiQuantum);
  if (!pre.residual.is_zero())
    throw GradedError("bv_pushforward requires a semi-quantum pre-observable; residual = " +
                      pre.residual.str());
  std::vector<int> all_pairs;
  for (int i = 0; i < p.aux.pair_count(); ++i) all_pairs.push_back(i);
  GradedPolynomial O = fiber_integral(p.S_aux, GradedPolynomial::constant(p.total, Scalar(1)), p.aux,
                                      all_pairs, L, p.ambient);
  VectorField Q_amb(p.ambient, 1);
  for (const auto& [c, comp] : p.Q_ambient.components())
    Q_amb.set_component(p.ambient->index_of(p.total->var(c).name), promote(comp, p.ambient));
  GradedPolynomial gauge = vf_apply(Q_amb, O);
  if (!gauge.is_zero())
    throw GradedError("push-forward failed gauge invariance: Q(O) = " + gauge.str());
  return O;
}

namespace {

void enumerate_monomials(const SpacePtr& space, int coord, int remaining_poly_degree,
                         std::vector<std::pair<int, int>>& current,
                         std::vector<Monomial>& out) {
  if (coord == space->coord_count()) {
    Monomial m;
    m.factors = current;
    out.push_back(m);
    return;
  }
  enumerate_monomials(space, coord + 1, remaining_poly_degree, current, out);
  int max_e = space->var(coord).is_odd() ? 1 : remaining_poly_degree;
  for (int e = 1; e <= max_e && e <= remaining_poly_degree; ++e) {
    current.emplace_back(coord, e);
    enumerate_monomials(space, coord + 1, remaining_poly_degree - e, current, out);
    current.pop_back();
  }
}

int internal_degree_of(const SpacePtr& space, const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m.factors) d += space->var(v).internal_degree * e;
  return d;
}

}  // namespace

WitnessResult q_exactness_witness(const VectorField& Q, const GradedPolynomial& diff,
                                  int degree_bound) {
  const SpacePtr& space = Q.space();
  WitnessResult res;
  GradedPolynomial d = promote(diff, space);
  if (d.is_zero()) {
    res.exact = true;
    res.witness = GradedPolynomial::zero(space);
    return res;
  }
  DegreeReport rep = grade_of(d);
  if (!rep.homogeneous || rep.form_degree != 0)
    throw GradedError("q_exactness_witness: difference must be a homogeneous function");
  const int target = rep.internal_degree - Q.degree();

  std::vector<Monomial> basis_all;
  std::vector<std::pair<int, int>> cur;
  enumerate_monomials(space, 0, degree_bound, cur, basis_all);
  std::vector<Monomial> basis;
  for (const auto& m : basis_all)
    if (internal_degree_of(space, m) == target) basis.push_back(m);

  // Assemble Q(basis_j) into an exact linear system over the row monomials.
  std::map<Monomial, int> rows;
  std::vector<GradedPolynomial> images;
  images.reserve(basis.size());
  for (const auto& m : basis) {
    GradedPolynomial mono(space);
    mono.add_term(m.factors, Scalar(1));
    GradedPolynomial img = vf_apply(Q, mono);
    for (const auto& [rm, c] : img.terms()) rows.try_emplace(rm, static_cast<int>(rows.size()));
    images.push_back(std::move(img));
  }
  for (const auto& [rm, c] : d.terms()) rows.try_emplace(rm, static_cast<int>(rows.size()));

  const int nrows = static_cast<int>(rows.size());
  const int ncols = static_cast<int>(basis.size());
  ExactMatrix A(nrows, ncols);
  for (int r = 0; r < nrows; ++r)
    for (int c2 = 0; c2 < ncols; ++c2) A(r, c2) = GaussianRational(0);
  for (int j = 0; j < ncols; ++j)
    for (const auto& [rm, c] : images[static_cast<size_t>(j)].terms()) {
      if (c.is_matrix()) throw GradedError("q_exactness_witness: matrix coefficients unsupported");
      A(rows.at(rm), j) = c.exact();
    }
  std::vector<GaussianRational> b(static_cast<size_t>(nrows));
  for (const auto& [rm, c] : d.terms()) {
    if (c.is_matrix()) throw GradedError("q_exactness_witness: matrix coefficients unsupported");
    b[static_cast<size_t>(rows.at(rm))] = c.exact();
  }

  auto sol = exact_linalg::solve(A, b);
  if (!sol) {
    ExactMatrix Ab(nrows, ncols + 1);
    for (int r = 0; r < nrows; ++r) {
      for (int c2 = 0; c2 < ncols; ++c2) Ab(r, c2) = A(r, c2);
      Ab(r, ncols) = b[static_cast<size_t>(r)];
    }
    std::ostringstream os;
    os << "NOT_EXACT within degree bound " << degree_bound << ": rank(A) = " << exact_linalg::rank(A)
       << ", rank([A|b]) = " << exact_linalg::rank(Ab) << " over a basis of " << ncols
       << " monomials";
    res.exact = false;
    res.certificate = os.str();
    return res;
  }
  res.exact = true;
  res.witness = GradedPolynomial(space);
  for (int j = 0; j < ncols; ++j)
    if (!(*sol)[static_cast<size_t>(j)].is_zero())
      res.witness.add_term(basis[static_cast<size_t>(j)].factors, Scalar((*sol)[static_cast<size_t>(j)]));
  return res;
}

}  // namespace gobs
