#include "gobs/derivation.hpp"

#include <sstream>

namespace gobs {

VectorField VectorField::make(SpacePtr space, int degree,
                              const std::map<int, GradedPolynomial>& components) {
  VectorField X(space, degree);
  for (const auto& [coord, comp] : components) X.set_component(coord, comp);
  return X;
}

GradedPolynomial VectorField::component(int coord) const {
  auto it = components_.find(coord);
  if (it != components_.end()) return it->second;
  return GradedPolynomial::zero(space_);
}

bool VectorField::is_zero() const {
  for (const auto& [c, p] : components_)
    if (!p.is_zero()) return false;
  return true;
}

void VectorField::set_component(int coord, GradedPolynomial p) {
  if (coord < 0 || coord >= space_->coord_count())
    throw GradedError("vector field component on a non-coordinate");
  if (p.space() != space_) p = promote(p, space_);
  if (p.is_zero()) {
    components_.erase(coord);
    return;
  }
  int want = space_->var(coord).internal_degree + degree_;
  if (!is_homogeneous(p, want, 0))
    throw GradedError("component of d/d" + space_->var(coord).name + " must be homogeneous of degree " +
                      std::to_string(want) + ", got " + p.str());
  components_[coord] = std::move(p);
}

namespace {

// A zero field combines with anything; its formal degree is immaterial.
int combined_degree(const VectorField& a, const VectorField& b, const char* what) {
  if (a.space() != b.space()) throw GradedError(std::string(what) + ": mismatched spaces");
  if (a.degree() == b.degree() || b.is_zero()) return a.degree();
  if (a.is_zero()) return b.degree();
  throw GradedError(std::string(what) + ": mismatched degrees");
}

}  // namespace

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r(a.space_, combined_degree(a, b, "vector field sum"));
  for (const auto& [c, p] : a.components_) r.set_component(c, p);
  for (const auto& [c, p] : b.components_) r.set_component(c, r.component(c) + p);
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r(a.space_, combined_degree(a, b, "vector field difference"));
  for (const auto& [c, p] : a.components_) r.set_component(c, p);
  for (const auto& [c, p] : b.components_) r.set_component(c, r.component(c) - p);
  return r;
}

bool operator==(const VectorField& a, const VectorField& b) {
  if (a.space_ != b.space_) return false;
  for (int c = 0; c < a.space_->coord_count(); ++c)
    if (a.component(c) != b.component(c)) return false;
  return true;
}

std::string VectorField::str() const {
  if (components_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, p] : components_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << p.str() << ")*d/d" << space_->var(c).name;
  }
  return os.str();
}

GradedPolynomial apply_derivation(int parity,
                                  const std::function<const GradedPolynomial*(int)>& images,
                                  const GradedPolynomial& f) {
  const auto& space = f.space();
  GradedPolynomial r(space);
  if (!space) return r;
  for (const auto& [m, c] : f.terms()) {
    int prefix_parity = 0;
    for (size_t i = 0; i < m.factors.size(); ++i) {
      auto [v, e] = m.factors[i];
      const GradedPolynomial* img = images(v);
      if (img && !img->is_zero()) {
        // prefix * D(v) * v^{e-1} * suffix, with the prefix-parity sign.
        GradedPolynomial prefix(space);
        Monomial mp;
        mp.factors.assign(m.factors.begin(), m.factors.begin() + static_cast<long>(i));
        int sgn = parity & prefix_parity & 1;
        Scalar coeff = c * Scalar(e);
        prefix.add_term(mp.factors, sgn ? -coeff : coeff);

        GradedPolynomial rest(space);
        Monomial mr;
        if (e > 1) mr.factors.emplace_back(v, e - 1);
        mr.factors.insert(mr.factors.end(), m.factors.begin() + static_cast<long>(i) + 1,
                          m.factors.end());
        rest.add_term(mr.factors, Scalar(1));

        r += mul(mul(prefix, *img), rest);
      }
      prefix_parity ^= (space->var(v).parity() * e) & 1;
    }
  }
  return r;
}

GradedPolynomial vf_apply(const VectorField& X, const GradedPolynomial& f) {
  GradedPolynomial g = f;
  if (g.space() != X.space()) g = promote(g, X.space());
  const auto& comps = X.components();
  return apply_derivation(X.parity(),
                          [&](int v) -> const GradedPolynomial* {
                            auto it = comps.find(v);
                            return it == comps.end() ? nullptr : &it->second;
                          },
                          g);
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (X.space() != Y.space()) throw GradedError("lie_bracket: different spaces");
  VectorField r(X.space(), X.degree() + Y.degree());
  int sgn = X.parity() & Y.parity() & 1;
  for (int c = 0; c < X.space()->coord_count(); ++c) {
    GradedPolynomial comp = vf_apply(X, Y.component(c));
    GradedPolynomial yx = vf_apply(Y, X.component(c));
    comp -= sgn ? -yx : yx;
    r.set_component(c, std::move(comp));
  }
  return r;
}

GradedPolynomial de_rham(const GradedPolynomial& f) {
  const auto& space = f.space();
  std::vector<GradedPolynomial> imgs;
  imgs.reserve(static_cast<size_t>(space->coord_count()));
  for (int a = 0; a < space->coord_count(); ++a)
    imgs.push_back(GradedPolynomial::variable(space, space->differential_of(a)));
  return apply_derivation(1,
                          [&](int v) -> const GradedPolynomial* {
                            if (v < space->coord_count()) return &imgs[static_cast<size_t>(v)];
                            return nullptr;
                          },
                          f);
}

GradedPolynomial contraction(const VectorField& X, const GradedPolynomial& form) {
  GradedPolynomial g = form;
  if (g.space() != X.space()) g = promote(g, X.space());
  const auto& space = X.space();
  const auto& comps = X.components();
  return apply_derivation((X.parity() + 1) & 1,
                          [&](int v) -> const GradedPolynomial* {
                            const auto& var = space->var(v);
                            if (!var.is_differential()) return nullptr;
                            auto it = comps.find(var.parent);
                            return it == comps.end() ? nullptr : &it->second;
                          },
                          g);
}

GradedPolynomial lie_derivative(const VectorField& X, const GradedPolynomial& form) {
  GradedPolynomial g = form;
  if (g.space() != X.space()) g = promote(g, X.space());
  const auto& space = X.space();
  std::map<int, GradedPolynomial> diff_imgs;
  for (const auto& [c, comp] : X.components()) {
    GradedPolynomial d = de_rham(comp);
    if (X.parity() == 1) d = -d;
    diff_imgs.emplace(space->differential_of(c), std::move(d));
  }
  const auto& comps = X.components();
  return apply_derivation(X.parity(),
                          [&](int v) -> const GradedPolynomial* {
                            const auto& var = space->var(v);
                            if (var.is_differential()) {
                              auto it = diff_imgs.find(v);
                              return it == diff_imgs.end() ? nullptr : &it->second;
                            }
                            auto it = comps.find(v);
                            return it == comps.end() ? nullptr : &it->second;
                          },
                          g);
}

}  // namespace gobs
