#include "gobs/q_structures.hpp"

#include <sstream>

namespace gobs {

namespace {

ResidualEntry poly_entry(const std::string& name, const GradedPolynomial& residual,
                         bool advisory = false, const std::string& note = "") {
  return {name, residual.is_zero(), advisory, residual.str(), note};
}

ResidualEntry vf_entry(const std::string& name, const VectorField& residual, bool advisory = false,
                       const std::string& note = "") {
  return {name, residual.is_zero(), advisory, residual.str(), note};
}

ResidualEntry degree_entry(const std::string& name, const GradedPolynomial& p, int internal,
                           int form) {
  DegreeReport rep = grade_of(p);
  bool ok = p.is_zero() || (rep.homogeneous && rep.internal_degree == internal &&
                            rep.form_degree == form);
  std::ostringstream os;
  if (!ok) {
    if (!rep.homogeneous)
      os << "mixed degrees";
    else
      os << "(" << rep.internal_degree << "," << rep.form_degree << ")";
    os << ", expected (" << internal << "," << form << ")";
  } else {
    os << "0";
  }
  return {name, ok, false, os.str(), ""};
}

Scalar inv_factorial(int j) {
  long f = 1;
  for (int k = 2; k <= j; ++k) f *= k;
  return Scalar::fraction(1, f);
}

}  // namespace

VerificationReport verify_ham_q_manifold(const HamiltonianQManifold& m) {
  VerificationReport rep;
  rep.warnings = m.warnings;

  rep.entries.push_back(vf_entry("Q^2 = 0", lie_bracket(m.Q, m.Q)));
  rep.entries.push_back(poly_entry("delta(alpha) = omega", de_rham(m.alpha) - m.omega.two_form()));
  rep.entries.push_back(
      vf_entry("hamiltonian_vf(Theta) = Q", hamiltonian_vf(m.theta, m.omega) - m.Q));
  rep.entries.push_back(poly_entry("{Theta,Theta} = 0", poisson_bracket(m.theta, m.theta, m.omega)));
  rep.entries.push_back(poly_entry("L_Q(omega) = 0", lie_derivative(m.Q, m.omega.two_form())));
  rep.entries.push_back(degree_entry("deg(Theta) = n+1", m.theta, m.n + 1, 0));
  rep.entries.push_back(degree_entry("deg(alpha) = (n,1)", m.alpha, m.n, 1));
  {
    ResidualEntry e{"deg(omega) = n", m.omega.degree() == m.n, false, "", ""};
    e.residual = e.ok ? "0" : ("degree " + std::to_string(m.omega.degree()) + " != " + std::to_string(m.n));
    rep.entries.push_back(e);
  }
  return rep;
}

VerificationReport verify_ham_q_bundle(const TrivialHamQBundle& b) {
  VerificationReport rep;
  rep.warnings = b.warnings;

  rep.entries.push_back(vf_entry("Q^2 = 0 (base)", lie_bracket(b.Q, b.Q)));

  VectorField flat = lie_bracket(b.Q, b.A) + scale(Scalar::fraction(1, 2), lie_bracket(b.A, b.A));
  rep.entries.push_back(vf_entry("QA + 1/2[A,A] = 0", flat));

  rep.entries.push_back(vf_entry("A = hamiltonian_vf(Theta', omega')",
                                 hamiltonian_vf(b.theta_prime, b.omega_prime) - b.A));

  GradedPolynomial cme = vf_apply(b.Q, b.theta_prime) +
                         scale(Scalar::fraction(1, 2),
                               poisson_bracket(b.theta_prime, b.theta_prime, b.omega_prime));
  rep.entries.push_back(poly_entry("Q(Theta') + 1/2{Theta',Theta'}_{omega'} = 0", cme));

  GradedPolynomial omega_total = promote(b.omega_prime.two_form(), b.total);
  rep.entries.push_back(poly_entry("delta_vert(alpha') = omega'",
                                   de_rham_vertical(b.alpha_prime, b.fiber_coords) - omega_total));

  rep.entries.push_back(degree_entry("deg(Theta') = n'+1", b.theta_prime, b.n_prime + 1, 0));
  {
    ResidualEntry e{"deg(omega') = n'", b.omega_prime.degree() == b.n_prime, false, "", ""};
    e.residual =
        e.ok ? "0" : ("degree " + std::to_string(b.omega_prime.degree()) + " != " + std::to_string(b.n_prime));
    rep.entries.push_back(e);
  }

  if (b.base_omega) {
    GradedPolynomial base_bracket = poisson_bracket(b.theta_prime, b.theta_prime, *b.base_omega);
    ResidualEntry e = poly_entry("{Theta',Theta'}_omega (base, advisory)", base_bracket, true,
                                 "zero iff S + S_aux solves the CME on the product");
    rep.entries.push_back(e);
  }
  for (const auto& e : b.extra) rep.entries.push_back(e);
  return rep;
}

HamiltonianQManifold make_chern_simons(const LieAlgebra& g, const std::string& coord_prefix) {
  if (!g.antisymmetric()) throw GradedError("chern_simons: structure constants not antisymmetric");
  if (!g.has_pairing()) throw GradedError("chern_simons: a pairing is required");
  const int d = g.dim();

  std::vector<std::pair<std::string, int>> coords;
  for (int a = 0; a < d; ++a) coords.emplace_back(coord_prefix + std::to_string(a + 1), 1);
  SpacePtr sp = GradedSpace::make(coords);

  ConstantSymplectic omega(sp, g.pairing(), 2);  // throws when degenerate

  VectorField Q(sp, 1);
  for (int a = 0; a < d; ++a) {
    GradedPolynomial qa(sp);
    for (int bb = 0; bb < d; ++bb)
      for (int c = 0; c < d; ++c)
        if (!g.f(a, bb, c).is_zero())
          qa.add_term({{bb, 1}, {c, 1}}, Scalar(g.f(a, bb, c)) * Scalar::fraction(1, 2));
    Q.set_component(a, std::move(qa));
  }

  GradedPolynomial alpha(sp);
  for (int a = 0; a < d; ++a)
    for (int bb = 0; bb < d; ++bb)
      if (!g.pairing()(a, bb).is_zero())
        alpha.add_term({{a, 1}, {sp->differential_of(bb), 1}},
                       Scalar(g.pairing()(a, bb)) * Scalar::fraction(1, 2));

  GradedPolynomial theta(sp);
  for (int a = 0; a < d; ++a)
    for (int dd = 0; dd < d; ++dd) {
      if (g.pairing()(a, dd).is_zero()) continue;
      for (int bb = 0; bb < d; ++bb)
        for (int c = 0; c < d; ++c)
          if (!g.f(dd, bb, c).is_zero())
            theta.add_term({{a, 1}, {bb, 1}, {c, 1}},
                           Scalar(g.pairing()(a, dd) * g.f(dd, bb, c)) * Scalar::fraction(1, 6));
    }

  HamiltonianQManifold m{sp, std::move(Q), std::move(omega), std::move(alpha), std::move(theta), 2, {}};
  if (!g.pairing_invariant()) m.warnings.push_back("pairing is not ad-invariant");
  return m;
}

HamiltonianQManifold make_bf(const LieAlgebra& g, int D, const std::string& psi_prefix,
                             const std::string& xi_prefix) {
  if (!g.antisymmetric()) throw GradedError("bf: structure constants not antisymmetric");
  if (D < 0) throw GradedError("bf: D must be non-negative");
  const int d = g.dim();

  std::vector<std::pair<std::string, int>> coords;
  for (int a = 0; a < d; ++a) coords.emplace_back(psi_prefix + std::to_string(a + 1), 1);
  for (int a = 0; a < d; ++a) coords.emplace_back(xi_prefix + std::to_string(a + 1), D - 2);
  SpacePtr sp = GradedSpace::make(coords);
  auto psi = [&](int a) { return a; };
  auto xi = [&](int a) { return d + a; };

  ExactMatrix w(2 * d, 2 * d);
  for (int i = 0; i < 2 * d; ++i)
    for (int j = 0; j < 2 * d; ++j) w(i, j) = GaussianRational(0);
  for (int a = 0; a < d; ++a) {
    // omega = <dxi, dpsi>; dpsi is even, so both index orders carry +1.
    w(xi(a), psi(a)) = GaussianRational(1);
    w(psi(a), xi(a)) = GaussianRational(1);
  }
  ConstantSymplectic omega(sp, std::move(w), D - 1);

  VectorField Q(sp, 1);
  for (int a = 0; a < d; ++a) {
    GradedPolynomial qa(sp);
    for (int bb = 0; bb < d; ++bb)
      for (int c = 0; c < d; ++c)
        if (!g.f(a, bb, c).is_zero())
          qa.add_term({{psi(bb), 1}, {psi(c), 1}}, Scalar(g.f(a, bb, c)) * Scalar::fraction(1, 2));
    Q.set_component(psi(a), std::move(qa));
    // Coadjoint term: Q(xi_a) = (-1)^D f^b_{a d} xi_b psi^d.
    GradedPolynomial qxi(sp);
    Scalar sgn = Scalar(D % 2 == 0 ? 1 : -1);
    for (int bb = 0; bb < d; ++bb)
      for (int dd = 0; dd < d; ++dd)
        if (!g.f(bb, a, dd).is_zero())
          qxi.add_term({{xi(bb), 1}, {psi(dd), 1}}, sgn * Scalar(g.f(bb, a, dd)));
    Q.set_component(xi(a), std::move(qxi));
  }

  GradedPolynomial alpha(sp);
  for (int a = 0; a < d; ++a) alpha.add_term({{xi(a), 1}, {sp->differential_of(psi(a)), 1}}, Scalar(1));

  GradedPolynomial theta(sp);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int bb = 0; bb < d; ++bb)
        if (!g.f(c, a, bb).is_zero())
          theta.add_term({{xi(c), 1}, {psi(a), 1}, {psi(bb), 1}},
                         Scalar(g.f(c, a, bb)) * Scalar::fraction(1, 2));

  HamiltonianQManifold m{sp, std::move(Q), std::move(omega), std::move(alpha), std::move(theta), D - 1, {}};
  if (!g.unimodular())
    m.warnings.push_back("g is not unimodular: quantum master equation claims do not apply");
  return m;
}

HamiltonianQManifold make_poisson_sigma(const ShiftedCotangent& T,
                                        const std::vector<std::vector<GradedPolynomial>>& pi) {
  const int d = T.dim();
  const SpacePtr& sp = T.space();
  auto at = [&](int i, int j) -> GradedPolynomial {
    if (i < static_cast<int>(pi.size()) && j < static_cast<int>(pi[static_cast<size_t>(i)].size()))
      return promote(pi[static_cast<size_t>(i)][static_cast<size_t>(j)], sp);
    return GradedPolynomial::zero(sp);
  };

  GradedPolynomial theta = T.bivector(pi);

  // Q(x^i) = pi^{ij} p_j, Q(p_i) = 1/2 d_i pi^{ab} p_a p_b.
  VectorField Q(sp, 1);
  for (int i = 0; i < d; ++i) {
    GradedPolynomial qx(sp);
    for (int j = 0; j < d; ++j) {
      GradedPolynomial c = at(i, j) - at(j, i);
      if (c.is_zero()) continue;
      qx += scale(Scalar::fraction(1, 2), mul(c, T.pv(j)));
    }
    Q.set_component(T.x(i), std::move(qx));
    GradedPolynomial qp(sp);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        GradedPolynomial dc = left_derivative(at(a, b), T.x(i));
        if (dc.is_zero()) continue;
        qp += scale(Scalar::fraction(1, 2), mul(dc, mul(T.pv(a), T.pv(b))));
      }
    Q.set_component(d + i, std::move(qp));
  }

  GradedPolynomial alpha(sp);
  for (int i = 0; i < d; ++i)
    alpha.add_term({{d + i, 1}, {sp->differential_of(T.x(i)), 1}}, Scalar(1));

  return HamiltonianQManifold{sp, std::move(Q), T.omega(), std::move(alpha), std::move(theta), 1, {}};
}

namespace {

// Shared scaffolding: product of a base space with a fresh fiber space.
struct BundleFrame {
  SpacePtr total;
  std::vector<int> base_coords, fiber_coords;
};

BundleFrame frame(const SpacePtr& base, const SpacePtr& fiber) {
  BundleFrame f;
  f.total = GradedSpace::product(base, fiber);
  for (int i = 0; i < base->coord_count(); ++i) f.base_coords.push_back(i);
  for (int i = 0; i < fiber->coord_count(); ++i) f.fiber_coords.push_back(base->coord_count() + i);
  return f;
}

VectorField lift(const VectorField& X, const SpacePtr& total) {
  VectorField r(total, X.degree());
  for (const auto& [c, comp] : X.components())
    r.set_component(total->index_of(X.space()->var(c).name), promote(comp, total));
  return r;
}

VectorField ce_vector_field(const LieAlgebra& g, const SpacePtr& sp) {
  VectorField Q(sp, 1);
  for (int a = 0; a < g.dim(); ++a) {
    GradedPolynomial qa(sp);
    for (int bb = 0; bb < g.dim(); ++bb)
      for (int c = 0; c < g.dim(); ++c)
        if (!g.f(a, bb, c).is_zero())
          qa.add_term({{bb, 1}, {c, 1}}, Scalar(g.f(a, bb, c)) * Scalar::fraction(1, 2));
    Q.set_component(a, std::move(qa));
  }
  return Q;
}

}  // namespace

TrivialHamQBundle make_orthogonal_module(const LieAlgebra& g, const ExactMatrix& pairing,
                                         const std::vector<ExactMatrix>& rho, int shift,
                                         const std::string& x_prefix) {
  if (!g.antisymmetric()) throw GradedError("module: structure constants not antisymmetric");
  const int r_dim = static_cast<int>(pairing.rows());
  if (static_cast<int>(rho.size()) != g.dim()) throw GradedError("module: one matrix per generator required");
  for (const auto& m : rho)
    if (m.rows() != r_dim || m.cols() != r_dim) throw GradedError("module: representation dimension mismatch");

  const bool odd_shift = ((shift % 2) + 2) % 2 == 1;
  for (int i = 0; i < r_dim; ++i)
    for (int j = 0; j < r_dim; ++j) {
      GaussianRational expect = odd_shift ? pairing(j, i) : -pairing(j, i);
      if (pairing(i, j) != expect)
        throw GradedError(odd_shift ? "module: Euclidean variant needs a symmetric pairing"
                                    : "module: symplectic variant needs an antisymmetric pairing");
    }

  std::vector<std::pair<std::string, int>> base_coords;
  for (int a = 0; a < g.dim(); ++a) base_coords.emplace_back("psi" + std::to_string(a + 1), 1);
  SpacePtr base = GradedSpace::make(base_coords);
  std::vector<std::pair<std::string, int>> fiber_coords;
  for (int i = 0; i < r_dim; ++i) fiber_coords.emplace_back(x_prefix + std::to_string(i + 1), shift);
  SpacePtr fiber = GradedSpace::make(fiber_coords);
  BundleFrame fr = frame(base, fiber);

  TrivialHamQBundle b{fr.total,
                      base,
                      fiber,
                      fr.base_coords,
                      fr.fiber_coords,
                      lift(ce_vector_field(g, base), fr.total),
                      VectorField(fr.total, 1),
                      ConstantSymplectic(fiber, pairing, 2 * shift),
                      GradedPolynomial(fr.total),
                      GradedPolynomial(fr.total),
                      2 * shift,
                      std::nullopt,
                      {},
                      {}};

  auto x = [&](int i) { return fr.fiber_coords[static_cast<size_t>(i)]; };

  // A = <rho(psi) x, d/dx>
  for (int i = 0; i < r_dim; ++i) {
    GradedPolynomial ai(fr.total);
    for (int a = 0; a < g.dim(); ++a)
      for (int j = 0; j < r_dim; ++j)
        if (!rho[static_cast<size_t>(a)](i, j).is_zero())
          ai.add_term({{a, 1}, {x(j), 1}}, Scalar(rho[static_cast<size_t>(a)](i, j)));
    b.A.set_component(x(i), std::move(ai));
  }

  // alpha' = 1/2 (x, dx), Theta' = 1/2 (x, rho(psi) x)
  for (int i = 0; i < r_dim; ++i)
    for (int j = 0; j < r_dim; ++j) {
      if (pairing(i, j).is_zero()) continue;
      b.alpha_prime.add_term({{x(i), 1}, {fr.total->differential_of(x(j)), 1}},
                             Scalar(pairing(i, j)) * Scalar::fraction(1, 2));
      for (int a = 0; a < g.dim(); ++a)
        for (int k = 0; k < r_dim; ++k)
          if (!rho[static_cast<size_t>(a)](j, k).is_zero())
            b.theta_prime.add_term(
                {{x(i), 1}, {a, 1}, {x(k), 1}},
                Scalar(pairing(i, j) * rho[static_cast<size_t>(a)](j, k)) * Scalar::fraction(1, 2));
    }

  bool compatible = true;
  for (int a = 0; a < g.dim(); ++a) {
    // pairing-antisymmetry of rho: P rho + rho^T P = 0
    for (int i = 0; i < r_dim && compatible; ++i)
      for (int j = 0; j < r_dim && compatible; ++j) {
        GaussianRational s;
        for (int k = 0; k < r_dim; ++k)
          s += pairing(i, k) * rho[static_cast<size_t>(a)](k, j) +
               rho[static_cast<size_t>(a)](k, i) * pairing(k, j);
        if (!s.is_zero()) compatible = false;
      }
  }
  if (!compatible) b.warnings.push_back("rho is not antisymmetric with respect to the pairing");
  return b;
}

VectorField linfty_vector_field(const SpacePtr& space, const std::vector<MultilinearOp>& ops) {
  VectorField Q(space, 1);
  std::vector<GradedPolynomial> comps(static_cast<size_t>(space->coord_count()),
                                      GradedPolynomial(space));
  for (const auto& op : ops) {
    Scalar factor = inv_factorial(op.arity);
    for (const auto& [inputs, out] : op.entries) {
      if (static_cast<int>(inputs.size()) != op.arity) throw GradedError("linfty: arity mismatch in entry");
      std::vector<std::pair<int, int>> raw;
      for (int a : inputs) raw.emplace_back(a, 1);
      for (int c = 0; c < space->coord_count() && c < static_cast<int>(out.size()); ++c) {
        if (out[static_cast<size_t>(c)].is_zero()) continue;
        GradedPolynomial term(space);
        term.add_term(raw, factor * Scalar(out[static_cast<size_t>(c)]));
        comps[static_cast<size_t>(c)] += term;
      }
    }
  }
  for (int c = 0; c < space->coord_count(); ++c)
    Q.set_component(c, std::move(comps[static_cast<size_t>(c)]));
  return Q;
}

VerificationReport linfty_relation_report(const SpacePtr& space,
                                          const std::vector<MultilinearOp>& ops) {
  VerificationReport rep;
  int max_arity = 0;
  for (const auto& op : ops) max_arity = std::max(max_arity, op.arity);
  VectorField Q = linfty_vector_field(space, ops);
  VectorField QQ = lie_bracket(Q, Q);

  // Group [Q,Q] components by polynomial degree = relation arity.
  std::map<int, GradedPolynomial> by_arity;
  for (const auto& [c, comp] : QQ.components()) {
    for (const auto& [m, coeff] : comp.terms()) {
      int deg = 0;
      for (const auto& [v, e] : m.factors) deg += e;
      auto [it, fresh] = by_arity.try_emplace(deg, GradedPolynomial(space));
      GradedPolynomial term(space);
      term.add_term(m.factors, coeff);
      // Tag the offending component through the note instead; the residual
      // polynomial aggregates all components of this arity.
      it->second += term;
      (void)fresh;
      (void)c;
    }
  }
  for (int arity = 1; arity <= 2 * max_arity - 1; ++arity) {
    auto it = by_arity.find(arity);
    bool zero = (it == by_arity.end()) || it->second.is_zero();
    ResidualEntry e;
    e.name = "L-infinity relation, arity " + std::to_string(arity);
    e.ok = zero;
    e.residual = zero ? "0" : it->second.str();
    if (arity > max_arity) {
      e.advisory = true;
      e.note = "partial: assumes operations of arity > " + std::to_string(max_arity) + " vanish";
    }
    rep.entries.push_back(e);
  }
  if (max_arity > 0) {
    ResidualEntry e;
    e.name = "L-infinity relations, arity > " + std::to_string(2 * max_arity - 1);
    e.ok = true;
    e.advisory = true;
    e.residual = "0";
    e.note = "unverifiable: would involve operations beyond the supplied arity";
    rep.entries.push_back(e);
  }
  return rep;
}

TrivialHamQBundle make_linfty_module(const SpacePtr& base, const std::vector<MultilinearOp>& l_ops,
                                     const std::vector<std::pair<std::string, int>>& fiber_coords,
                                     const std::vector<MultilinearOp>& rho_ops,
                                     const ExactMatrix& pairing) {
  SpacePtr fiber = GradedSpace::make(fiber_coords);
  const int r_dim = fiber->coord_count();
  if (pairing.rows() != r_dim || pairing.cols() != r_dim)
    throw GradedError("linfty_module: pairing dimension mismatch");
  BundleFrame fr = frame(base, fiber);

  // Degree of the symplectic form: all fiber pairs with nonzero pairing must
  // agree; the ConstantSymplectic constructor enforces the selection rule.
  int degree = 0;
  bool found = false;
  for (int i = 0; i < r_dim && !found; ++i)
    for (int j = 0; j < r_dim && !found; ++j)
      if (!pairing(i, j).is_zero()) {
        degree = fiber->var(i).internal_degree + fiber->var(j).internal_degree;
        found = true;
      }

  TrivialHamQBundle b{fr.total,
                      base,
                      fiber,
                      fr.base_coords,
                      fr.fiber_coords,
                      lift(linfty_vector_field(base, l_ops), fr.total),
                      VectorField(fr.total, 1),
                      ConstantSymplectic(fiber, pairing, degree),
                      GradedPolynomial(fr.total),
                      GradedPolynomial(fr.total),
                      degree,
                      std::nullopt,
                      {},
                      {}};

  auto x = [&](int i) { return fr.fiber_coords[static_cast<size_t>(i)]; };

  std::vector<GradedPolynomial> acomp(static_cast<size_t>(r_dim), GradedPolynomial(fr.total));
  for (const auto& op : rho_ops) {
    if (op.arity < 1) throw GradedError("linfty_module: module operation needs the module slot");
    const int j = op.arity - 1;  // algebra inputs
    Scalar factor = inv_factorial(j);
    for (const auto& [inputs, out] : op.entries) {
      if (static_cast<int>(inputs.size()) != op.arity) throw GradedError("linfty_module: arity mismatch");
      std::vector<std::pair<int, int>> raw;
      for (int k = 0; k < j; ++k) raw.emplace_back(inputs[static_cast<size_t>(k)], 1);
      int module_in = inputs.back();
      raw.emplace_back(x(module_in), 1);
      for (int m = 0; m < r_dim && m < static_cast<int>(out.size()); ++m) {
        if (out[static_cast<size_t>(m)].is_zero()) continue;
        GradedPolynomial term(fr.total);
        term.add_term(raw, factor * Scalar(out[static_cast<size_t>(m)]));
        acomp[static_cast<size_t>(m)] += term;
        // Theta' term: 1/(2 j!) (x_i P_{i m} , rho(...)) with the same inputs.
        for (int i = 0; i < r_dim; ++i) {
          if (pairing(i, m).is_zero()) continue;
          std::vector<std::pair<int, int>> raw2;
          raw2.emplace_back(x(i), 1);
          raw2.insert(raw2.end(), raw.begin(), raw.end());
          GradedPolynomial t2(fr.total);
          t2.add_term(raw2, factor * Scalar::fraction(1, 2) *
                                Scalar(pairing(i, m) * out[static_cast<size_t>(m)]));
          b.theta_prime += t2;
        }
      }
    }
  }
  for (int m = 0; m < r_dim; ++m) b.A.set_component(x(m), std::move(acomp[static_cast<size_t>(m)]));

  for (int i = 0; i < r_dim; ++i)
    for (int j2 = 0; j2 < r_dim; ++j2)
      if (!pairing(i, j2).is_zero())
        b.alpha_prime.add_term({{x(i), 1}, {fr.total->differential_of(x(j2)), 1}},
                               Scalar(pairing(i, j2)) * Scalar::fraction(1, 2));

  VerificationReport lrep = linfty_relation_report(base, l_ops);
  for (auto& e : lrep.entries) {
    e.advisory = true;
    b.extra.push_back(e);
  }
  return b;
}

TrivialHamQBundle make_linfty_ideal(const SpacePtr& h_space, const std::vector<MultilinearOp>& lambda,
                                    const std::vector<int>& ideal, const ExactMatrix& pairing) {
  const int h_dim = h_space->coord_count();
  std::vector<bool> in_ideal(static_cast<size_t>(h_dim), false);
  for (int i : ideal) in_ideal.at(static_cast<size_t>(i)) = true;
  const int i_dim = static_cast<int>(ideal.size());
  if (pairing.rows() != i_dim || pairing.cols() != i_dim)
    throw GradedError("linfty_ideal: pairing must be sized to the ideal");

  // Quotient keeps the non-ideal coordinates, fiber keeps the ideal ones.
  std::vector<std::pair<std::string, int>> qcoords, icoords;
  std::vector<int> quotient;  // h indices
  for (int i = 0; i < h_dim; ++i) {
    if (in_ideal[static_cast<size_t>(i)]) continue;
    quotient.push_back(i);
    qcoords.emplace_back(h_space->var(i).name, h_space->var(i).internal_degree);
  }
  for (int i : ideal) icoords.emplace_back(h_space->var(i).name, h_space->var(i).internal_degree);
  SpacePtr base = GradedSpace::make(qcoords);
  SpacePtr fiber = GradedSpace::make(icoords);
  BundleFrame fr = frame(base, fiber);

  // Positions of h coordinates inside the total space (same names).
  std::vector<int> pos(static_cast<size_t>(h_dim));
  for (int i = 0; i < h_dim; ++i) pos[static_cast<size_t>(i)] = fr.total->index_of(h_space->var(i).name);
  std::vector<int> ideal_slot(static_cast<size_t>(h_dim), -1);
  for (int k = 0; k < i_dim; ++k) ideal_slot[static_cast<size_t>(ideal[static_cast<size_t>(k)])] = k;

  int degree = 0;
  bool found = false;
  for (int i = 0; i < i_dim && !found; ++i)
    for (int j = 0; j < i_dim && !found; ++j)
      if (!pairing(i, j).is_zero()) {
        degree = fiber->var(i).internal_degree + fiber->var(j).internal_degree;
        found = true;
      }

  // Quotient operations: lambda restricted to quotient inputs, ideal outputs
  // projected away. Ideal property: >= 1 ideal input forces an ideal output.
  std::vector<MultilinearOp> qops;
  bool ideal_property = true;
  for (const auto& op : lambda) {
    MultilinearOp q{op.arity, {}};
    for (const auto& [inputs, out] : op.entries) {
      bool any_ideal = false;
      for (int a : inputs)
        if (in_ideal[static_cast<size_t>(a)]) any_ideal = true;
      if (any_ideal) {
        for (int c = 0; c < h_dim && c < static_cast<int>(out.size()); ++c)
          if (!out[static_cast<size_t>(c)].is_zero() && !in_ideal[static_cast<size_t>(c)])
            ideal_property = false;
        continue;
      }
      std::vector<int> qin;
      for (int a : inputs)
        for (size_t k = 0; k < quotient.size(); ++k)
          if (quotient[k] == a) qin.push_back(static_cast<int>(k));
      std::vector<GaussianRational> qout(static_cast<size_t>(base->coord_count()));
      for (size_t k = 0; k < quotient.size(); ++k)
        if (quotient[k] < static_cast<int>(out.size())) qout[k] = out[static_cast<size_t>(quotient[k])];
      q.entries[qin] = qout;
    }
    qops.push_back(std::move(q));
  }

  TrivialHamQBundle b{fr.total,
                      base,
                      fiber,
                      fr.base_coords,
                      fr.fiber_coords,
                      lift(linfty_vector_field(base, qops), fr.total),
                      VectorField(fr.total, 1),
                      ConstantSymplectic(fiber, pairing, degree),
                      GradedPolynomial(fr.total),
                      GradedPolynomial(fr.total),
                      degree,
                      std::nullopt,
                      {},
                      {}};
  if (!ideal_property) b.warnings.push_back("subspace is not an L-infinity ideal");

  // A = sum_{j,k >= 0, j+k >= 1} 1/(j! k!) <P_I lambda_{j+k}(psi..., x...), d/dx>,
  // Theta' = sum 1/(j! (k+1)!) (x, P_I lambda_{j+k}(psi..., x...)).
  // Entries store the graded-symmetric tensor over all slot orderings, so the
  // per-entry weights are 1/m! resp. 1/((k+1) m!): summing the m!/(j!k!) slot
  // patterns of a type (j,k) reproduces the stated coefficients.
  std::vector<GradedPolynomial> acomp(static_cast<size_t>(i_dim), GradedPolynomial(fr.total));
  for (const auto& op : lambda) {
    for (const auto& [inputs, out] : op.entries) {
      int jq = 0, ki = 0;
      std::vector<std::pair<int, int>> raw;
      for (int a : inputs) {
        raw.emplace_back(pos[static_cast<size_t>(a)], 1);
        if (in_ideal[static_cast<size_t>(a)])
          ++ki;
        else
          ++jq;
      }
      if (jq + ki < 1) continue;
      Scalar fa = inv_factorial(jq + ki);
      Scalar ft = fa * Scalar::fraction(1, ki + 1);
      for (int c = 0; c < h_dim && c < static_cast<int>(out.size()); ++c) {
        if (out[static_cast<size_t>(c)].is_zero()) continue;
        int slot = ideal_slot[static_cast<size_t>(c)];
        if (slot < 0) continue;  // P_I kills quotient outputs
        GradedPolynomial term(fr.total);
        term.add_term(raw, fa * Scalar(out[static_cast<size_t>(c)]));
        acomp[static_cast<size_t>(slot)] += term;
        for (int i = 0; i < i_dim; ++i) {
          if (pairing(i, slot).is_zero()) continue;
          std::vector<std::pair<int, int>> raw2;
          raw2.emplace_back(fr.fiber_coords[static_cast<size_t>(i)], 1);
          raw2.insert(raw2.end(), raw.begin(), raw.end());
          GradedPolynomial t2(fr.total);
          t2.add_term(raw2, ft * Scalar(pairing(i, slot) * out[static_cast<size_t>(c)]));
          b.theta_prime += t2;
        }
      }
    }
  }
  for (int m = 0; m < i_dim; ++m)
    b.A.set_component(fr.fiber_coords[static_cast<size_t>(m)], std::move(acomp[static_cast<size_t>(m)]));

  for (int i = 0; i < i_dim; ++i)
    for (int j = 0; j < i_dim; ++j)
      if (!pairing(i, j).is_zero())
        b.alpha_prime.add_term(
            {{fr.fiber_coords[static_cast<size_t>(i)], 1},
             {fr.total->differential_of(fr.fiber_coords[static_cast<size_t>(j)]), 1}},
            Scalar(pairing(i, j)) * Scalar::fraction(1, 2));

  // Cyclicity of the zero-extended pairing, in both readings the definition
  // admits: rotation tuples drawn from I only, or from all of h. Reported
  // separately as advisory entries, no intent guessed.
  auto lowered = [&](int o, const std::vector<GaussianRational>& out) {
    // <lambda(...), e_o>_P with P extended by zero off the ideal.
    GaussianRational v;
    if (ideal_slot[static_cast<size_t>(o)] < 0) return v;
    for (int c = 0; c < h_dim && c < static_cast<int>(out.size()); ++c) {
      int sc = ideal_slot[static_cast<size_t>(c)];
      if (sc < 0 || out[static_cast<size_t>(c)].is_zero()) continue;
      v += out[static_cast<size_t>(c)] * pairing(sc, ideal_slot[static_cast<size_t>(o)]);
    }
    return v;
  };
  auto cyclicity_entry = [&](bool ideal_args_only, const std::string& label) {
    ResidualEntry e{label, true, true, "0",
                    ideal_args_only ? "rotation slots restricted to I"
                                    : "rotation slots over all of h, pairing extended by zero"};
    for (const auto& op : lambda) {
      for (const auto& [inputs, out] : op.entries) {
        if (inputs.empty()) continue;
        for (int o = 0; o < h_dim; ++o) {
          if (ideal_args_only) {
            bool all_ideal = ideal_slot[static_cast<size_t>(o)] >= 0;
            for (int a : inputs)
              if (!in_ideal[static_cast<size_t>(a)]) all_ideal = false;
            if (!all_ideal) continue;
          }
          GaussianRational lhs = lowered(o, out);
          std::vector<int> rot(inputs.begin() + 1, inputs.end());
          rot.push_back(o);
          GaussianRational rhs;
          for (const auto& op2 : lambda) {
            if (op2.arity != op.arity) continue;
            auto it = op2.entries.find(rot);
            if (it != op2.entries.end()) rhs += lowered(inputs[0], it->second);
          }
          int pa1 = h_space->var(inputs[0]).parity();
          int prest = h_space->var(o).parity();
          for (size_t k = 1; k < inputs.size(); ++k)
            prest ^= h_space->var(inputs[k]).parity();
          GaussianRational diff = lhs - ((pa1 & prest & 1) ? -rhs : rhs);
          if (!diff.is_zero()) {
            e.ok = false;
            e.residual = "first violation at op arity " + std::to_string(op.arity);
          }
        }
      }
    }
    return e;
  };
  b.extra.push_back(cyclicity_entry(true, "cyclic pairing on I-arguments (advisory)"));
  b.extra.push_back(cyclicity_entry(false, "cyclic pairing on all of h (advisory)"));

  VerificationReport lrep = linfty_relation_report(h_space, lambda);
  for (auto& e : lrep.entries) {
    e.name = "h " + e.name;
    e.advisory = true;
    b.extra.push_back(e);
  }
  return b;
}

TrivialHamQBundle make_moment_map(const LieAlgebra& g, const SpacePtr& phase_space,
                                  const ExactMatrix& omega_m, const GradedPolynomial& alpha_m,
                                  const std::vector<GradedPolynomial>& mu) {
  if (static_cast<int>(mu.size()) != g.dim()) throw GradedError("moment_map: one component per generator");
  std::vector<std::pair<std::string, int>> base_coords;
  for (int a = 0; a < g.dim(); ++a) base_coords.emplace_back("psi" + std::to_string(a + 1), 1);
  SpacePtr base = GradedSpace::make(base_coords);
  BundleFrame fr = frame(base, phase_space);

  ConstantSymplectic omega_prime(phase_space, omega_m, 0);

  GradedPolynomial theta(fr.total);
  for (int a = 0; a < g.dim(); ++a)
    theta += mul(GradedPolynomial::variable(fr.total, a), promote(mu[static_cast<size_t>(a)], fr.total));

  TrivialHamQBundle b{fr.total,
                      base,
                      phase_space,
                      fr.base_coords,
                      fr.fiber_coords,
                      lift(ce_vector_field(g, base), fr.total),
                      hamiltonian_vf(theta, omega_prime),
                      omega_prime,
                      promote(alpha_m, fr.total),
                      theta,
                      0,
                      std::nullopt,
                      {},
                      {}};

  // Equivariance: {mu_a, mu_b} = f^c_{ab} mu_c.
  for (int a = 0; a < g.dim(); ++a)
    for (int bb = a; bb < g.dim(); ++bb) {
      GradedPolynomial lhs = poisson_bracket(promote(mu[static_cast<size_t>(a)], phase_space),
                                             mu[static_cast<size_t>(bb)], omega_prime);
      GradedPolynomial rhs(phase_space);
      for (int c = 0; c < g.dim(); ++c)
        if (!g.f(c, a, bb).is_zero())
          rhs += scale(Scalar(g.f(c, a, bb)), promote(mu[static_cast<size_t>(c)], phase_space));
      b.extra.push_back(poly_entry(
          "equivariance {mu_" + std::to_string(a + 1) + ",mu_" + std::to_string(bb + 1) + "}",
          lhs - rhs));
    }
  return b;
}

TrivialHamQBundle make_point_fiber(const SpacePtr& base, const VectorField& Q,
                                   const GradedPolynomial& theta, int p,
                                   std::optional<ConstantSymplectic> base_omega) {
  SpacePtr fiber = GradedSpace::make({});
  BundleFrame fr = frame(base, fiber);
  ExactMatrix empty(0, 0);
  TrivialHamQBundle b{fr.total,
                      base,
                      fiber,
                      fr.base_coords,
                      fr.fiber_coords,
                      lift(Q, fr.total),
                      VectorField(fr.total, 1),
                      ConstantSymplectic(fiber, empty, p - 1),
                      GradedPolynomial(fr.total),
                      promote(theta, fr.total),
                      p - 1,
                      std::move(base_omega),
                      {},
                      {}};
  return b;
}

TrivialHamQBundle make_cattaneo_rossi(const LieAlgebra& g, int D) {
  if (!g.antisymmetric()) throw GradedError("cattaneo_rossi: structure constants not antisymmetric");
  HamiltonianQManifold bf = make_bf(g, D);
  const int d = g.dim();

  std::vector<std::pair<std::string, int>> fiber_coords;
  for (int a = 0; a < d; ++a) fiber_coords.emplace_back("q" + std::to_string(a + 1), 0);
  for (int a = 0; a < d; ++a) fiber_coords.emplace_back("p" + std::to_string(a + 1), D - 3);
  SpacePtr fiber = GradedSpace::make(fiber_coords);
  BundleFrame fr = frame(bf.space, fiber);

  auto psi = [&](int a) { return a; };
  auto xi = [&](int a) { return d + a; };
  auto q = [&](int a) { return fr.fiber_coords[static_cast<size_t>(a)]; };
  auto p = [&](int a) { return fr.fiber_coords[static_cast<size_t>(d + a)]; };
  const bool d_even = (D % 2) == 0;

  ExactMatrix w(2 * d, 2 * d);
  for (int i = 0; i < 2 * d; ++i)
    for (int j = 0; j < 2 * d; ++j) w(i, j) = GaussianRational(0);
  for (int a = 0; a < d; ++a) {
    // omega' = <dp, dq>
    w(d + a, a) = GaussianRational(1);
    w(a, d + a) = GaussianRational(d_even ? 1 : -1);
  }
  ConstantSymplectic omega_prime(fiber, std::move(w), D - 3);

  TrivialHamQBundle b{fr.total,
                      bf.space,
                      fiber,
                      fr.base_coords,
                      fr.fiber_coords,
                      lift(bf.Q, fr.total),
                      VectorField(fr.total, 1),
                      std::move(omega_prime),
                      GradedPolynomial(fr.total),
                      GradedPolynomial(fr.total),
                      D - 3,
                      bf.omega,
                      {},
                      {}};

  // Theta' = <p, [psi, q]> + <xi, q>
  for (int a = 0; a < d; ++a) {
    for (int bb = 0; bb < d; ++bb)
      for (int c = 0; c < d; ++c)
        if (!g.f(a, bb, c).is_zero())
          b.theta_prime.add_term({{p(a), 1}, {psi(bb), 1}, {q(c), 1}}, Scalar(g.f(a, bb, c)));
    b.theta_prime.add_term({{xi(a), 1}, {q(a), 1}}, Scalar(1));
  }

  // A(q^a) = [psi,q]^a;  A(p_a) = (-1)^D (<p,[psi,e_a]> + xi_a)
  for (int a = 0; a < d; ++a) {
    GradedPolynomial aq(fr.total);
    for (int bb = 0; bb < d; ++bb)
      for (int c = 0; c < d; ++c)
        if (!g.f(a, bb, c).is_zero()) aq.add_term({{psi(bb), 1}, {q(c), 1}}, Scalar(g.f(a, bb, c)));
    b.A.set_component(q(a), std::move(aq));

    GradedPolynomial ap(fr.total);
    for (int bb = 0; bb < d; ++bb)
      for (int c = 0; c < d; ++c)
        if (!g.f(bb, c, a).is_zero())
          ap.add_term({{p(bb), 1}, {psi(c), 1}}, Scalar(d_even ? g.f(bb, c, a) : -g.f(bb, c, a)));
    ap.add_term({{xi(a), 1}}, Scalar(d_even ? 1 : -1));
    b.A.set_component(p(a), std::move(ap));
  }

  // alpha' = <p, dq>
  for (int a = 0; a < d; ++a)
    b.alpha_prime.add_term({{p(a), 1}, {fr.total->differential_of(q(a)), 1}}, Scalar(1));

  if (!g.unimodular()) b.warnings.push_back("g is not unimodular");
  return b;
}

}  // namespace gobs
