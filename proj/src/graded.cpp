#include "gobs/graded.hpp"

#include <algorithm>
#include <sstream>

namespace gobs {

SpacePtr GradedSpace::make(const std::vector<std::pair<std::string, int>>& coords) {
  auto sp = std::make_shared<GradedSpace>();
  sp->ncoords_ = static_cast<int>(coords.size());
  sp->vars_.reserve(coords.size() * 2);
  for (const auto& [name, deg] : coords) sp->vars_.push_back({name, deg, 0, -1});
  for (int a = 0; a < sp->ncoords_; ++a)
    sp->vars_.push_back({"d" + coords[static_cast<size_t>(a)].first,
                         coords[static_cast<size_t>(a)].second, 1, a});
  for (int i = 0; i < sp->var_count(); ++i) {
    auto [it, fresh] = sp->index_.emplace(sp->vars_[static_cast<size_t>(i)].name, i);
    if (!fresh) throw GradedError("duplicate variable name: " + it->first);
  }
  return sp;
}

SpacePtr GradedSpace::product(const SpacePtr& a, const SpacePtr& b) {
  std::vector<std::pair<std::string, int>> coords;
  for (int i = 0; i < a->coord_count(); ++i)
    coords.emplace_back(a->var(i).name, a->var(i).internal_degree);
  for (int i = 0; i < b->coord_count(); ++i)
    coords.emplace_back(b->var(i).name, b->var(i).internal_degree);
  return make(coords);
}

int GradedSpace::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int GradedSpace::index_of(const std::string& name) const {
  int i = find(name);
  if (i < 0) throw GradedError("unknown variable: " + name);
  return i;
}

int Monomial::exponent_of(int var) const {
  for (const auto& [v, e] : factors)
    if (v == var) return e;
  return 0;
}

namespace {

// Canonicalizes a raw factor sequence: sorts by variable index collecting the
// Koszul sign, merges exponents, detects odd squares. Returns false when the
// term vanishes.
bool canonical_factors(const GradedSpace& space, std::vector<std::pair<int, int>> f, Monomial& out,
                       int& sign_parity) {
  sign_parity = 0;
  // Insertion sort; each adjacent swap of blocks (a,ea),(b,eb) contributes
  // parity(a)*ea*parity(b)*eb.
  for (size_t i = 1; i < f.size(); ++i) {
    size_t j = i;
    while (j > 0 && f[j].first < f[j - 1].first) {
      int pa = space.var(f[j - 1].first).parity() * f[j - 1].second;
      int pb = space.var(f[j].first).parity() * f[j].second;
      sign_parity ^= (pa & 1) & (pb & 1);
      std::swap(f[j], f[j - 1]);
      --j;
    }
  }
  out.factors.clear();
  for (const auto& [v, e] : f) {
    if (e == 0) continue;
    if (e < 0) throw GradedError("negative exponent");
    if (!out.factors.empty() && out.factors.back().first == v)
      out.factors.back().second += e;
    else
      out.factors.emplace_back(v, e);
  }
  for (const auto& [v, e] : out.factors)
    if (space.var(v).is_odd() && e > 1) return false;
  return true;
}

}  // namespace

GradedPolynomial GradedPolynomial::constant(SpacePtr space, Scalar c) {
  GradedPolynomial p(std::move(space));
  if (!c.is_zero()) p.terms_.emplace(Monomial{}, std::move(c));
  return p;
}

GradedPolynomial GradedPolynomial::variable(const SpacePtr& space, int var_index) {
  GradedPolynomial p(space);
  if (var_index < 0 || var_index >= space->var_count()) throw GradedError("variable index out of range");
  p.terms_.emplace(Monomial{{{var_index, 1}}}, Scalar(1));
  return p;
}

GradedPolynomial GradedPolynomial::variable(const SpacePtr& space, const std::string& name) {
  return variable(space, space->index_of(name));
}

void GradedPolynomial::insert(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void GradedPolynomial::add_term(const std::vector<std::pair<int, int>>& raw_factors, const Scalar& c) {
  if (!space_) throw GradedError("polynomial without a space");
  if (c.is_zero()) return;
  Monomial m;
  int sgn = 0;
  if (!canonical_factors(*space_, raw_factors, m, sgn)) return;
  insert(m, sgn ? -c : c);
}

GradedPolynomial GradedPolynomial::operator-() const {
  GradedPolynomial r(space_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& o) {
  if (!space_) space_ = o.space_;
  if (o.space_ && space_ != o.space_) throw GradedError("polynomials over different spaces");
  for (const auto& [m, c] : o.terms_) insert(m, c);
  return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& o) {
  if (!space_) space_ = o.space_;
  if (o.space_ && space_ != o.space_) throw GradedError("polynomials over different spaces");
  for (const auto& [m, c] : o.terms_) insert(m, -c);
  return *this;
}

Scalar GradedPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

GradedPolynomial mul(const GradedPolynomial& p, const GradedPolynomial& q) {
  if (p.space_ != q.space_) throw GradedError("mul: polynomials over different spaces");
  GradedPolynomial r(p.space_);
  std::vector<std::pair<int, int>> raw;
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) {
      raw.clear();
      raw.insert(raw.end(), mp.factors.begin(), mp.factors.end());
      raw.insert(raw.end(), mq.factors.begin(), mq.factors.end());
      Monomial m;
      int sgn = 0;
      if (!canonical_factors(*p.space_, raw, m, sgn)) continue;
      Scalar c = cp * cq;
      r.insert(m, sgn ? -c : c);
    }
  }
  return r;
}

GradedPolynomial scale(const Scalar& c, const GradedPolynomial& p) {
  GradedPolynomial r(p.space());
  for (const auto& [m, coeff] : p.terms()) r.insert(m, c * coeff);
  return r;
}

GradedPolynomial scale_right(const GradedPolynomial& p, const Scalar& c) {
  GradedPolynomial r(p.space());
  for (const auto& [m, coeff] : p.terms()) r.insert(m, coeff * c);
  return r;
}

GradedPolynomial left_derivative(const GradedPolynomial& p, int v) {
  const auto& space = p.space();
  if (!space) throw GradedError("derivative of spaceless polynomial");
  const int pv = space->var(v).parity();
  GradedPolynomial r(space);
  for (const auto& [m, c] : p.terms()) {
    int prefix_parity = 0;
    for (size_t i = 0; i < m.factors.size(); ++i) {
      auto [var, exp] = m.factors[i];
      if (var == v) {
        Monomial out;
        out.factors = m.factors;
        if (exp == 1)
          out.factors.erase(out.factors.begin() + static_cast<long>(i));
        else
          out.factors[i].second -= 1;
        int sgn = pv & prefix_parity & 1;
        Scalar coeff = c * Scalar(exp);
        r.insert(out, sgn ? -coeff : coeff);
        break;  // canonical order: each variable appears once
      }
      prefix_parity ^= (space->var(var).parity() * exp) & 1;
    }
  }
  return r;
}

GradedPolynomial left_derivative(const GradedPolynomial& p, const std::string& name) {
  return left_derivative(p, p.space()->index_of(name));
}

DegreeReport grade_of(const GradedPolynomial& p) {
  DegreeReport rep;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    int internal = 0, form = 0;
    for (const auto& [v, e] : m.factors) {
      internal += p.space()->var(v).internal_degree * e;
      form += p.space()->var(v).form_degree * e;
    }
    if (first) {
      rep.internal_degree = internal;
      rep.form_degree = form;
      rep.homogeneous = true;
      first = false;
    } else if (internal != rep.internal_degree || form != rep.form_degree) {
      rep.homogeneous = false;
    }
    bool seen = false;
    for (auto& [bi, bf, txt] : rep.breakdown)
      if (bi == internal && bf == form) seen = true;
    if (!seen) {
      std::ostringstream os;
      bool firstf = true;
      for (const auto& [v, e] : m.factors) {
        if (!firstf) os << "*";
        firstf = false;
        os << p.space()->var(v).name;
        if (e > 1) os << "^" << e;
      }
      if (m.factors.empty()) os << "1";
      rep.breakdown.emplace_back(internal, form, os.str());
    }
  }
  if (first) {
    rep.homogeneous = true;  // zero polynomial
  }
  return rep;
}

bool is_homogeneous(const GradedPolynomial& p, int internal, int form) {
  if (p.is_zero()) return true;
  DegreeReport rep = grade_of(p);
  return rep.homogeneous && rep.internal_degree == internal && rep.form_degree == form;
}

std::optional<int> parity_of(const GradedPolynomial& p) {
  if (p.is_zero()) return 0;
  DegreeReport rep = grade_of(p);
  int par = (((rep.internal_degree + rep.form_degree) % 2) + 2) % 2;
  for (auto& [bi, bf, txt] : rep.breakdown)
    if ((((bi + bf) % 2) + 2) % 2 != par) return std::nullopt;
  return par;
}

Scalar eval_numeric(const GradedPolynomial& p, const std::map<std::string, Scalar>& assignment) {
  std::map<int, Scalar> by_index;
  for (const auto& [name, value] : assignment) {
    int idx = p.space()->find(name);
    if (idx >= 0) by_index.emplace(idx, value);
  }
  Scalar acc(0);
  for (const auto& [m, c] : p.terms()) {
    Scalar term = c;
    for (const auto& [v, e] : m.factors) {
      const auto& var = p.space()->var(v);
      if (var.is_differential()) throw GradedError("eval_numeric: differential variable " + var.name);
      if (var.is_odd()) throw GradedError("eval_numeric: odd variable " + var.name);
      auto it = by_index.find(v);
      if (it == by_index.end()) throw GradedError("eval_numeric: unassigned variable " + var.name);
      for (int k = 0; k < e; ++k) term *= it->second;
    }
    acc += term;
  }
  return acc;
}

GradedPolynomial promote(const GradedPolynomial& p, const SpacePtr& target) {
  if (p.space() == target) return p;
  GradedPolynomial r(target);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::pair<int, int>> raw;
    raw.reserve(m.factors.size());
    for (const auto& [v, e] : m.factors) {
      const auto& var = p.space()->var(v);
      raw.emplace_back(target->index_of(var.name), e);
    }
    r.add_term(raw, c);
  }
  return r;
}

GradedPolynomial substitute(const GradedPolynomial& p, const std::map<int, GradedPolynomial>& subs) {
  const auto& space = p.space();
  for (const auto& [v, repl] : subs) {
    auto par = parity_of(repl);
    if (!par || (!repl.is_zero() && *par != space->var(v).parity()))
      throw GradedError("substitute: replacement parity mismatch for " + space->var(v).name);
  }
  GradedPolynomial r(space);
  for (const auto& [m, c] : p.terms()) {
    GradedPolynomial acc = GradedPolynomial::constant(space, c);
    for (const auto& [v, e] : m.factors) {
      auto it = subs.find(v);
      if (it == subs.end()) {
        GradedPolynomial var(space);
        var.add_term({{v, e}}, Scalar(1));
        acc = mul(acc, var);
      } else {
        for (int k = 0; k < e && !acc.is_zero(); ++k) acc = mul(acc, it->second);
      }
      if (acc.is_zero()) break;
    }
    r += acc;
  }
  return r;
}

std::string GradedPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    if (!first) {
      if (!cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos &&
          !c.is_matrix()) {
        os << " - ";
        cs = cs.substr(1);
      } else {
        os << " + ";
      }
    }
    first = false;
    if (cs == "-1" && !m.is_unit()) {
      os << "-";
      cs = "1";
    }
    bool unit_coeff = (cs == "1") && !m.is_unit();
    bool needs_parens = cs.find_first_of("+-", 1) != std::string::npos && !m.is_unit();
    if (!unit_coeff) {
      if (needs_parens)
        os << "(" << cs << ")";
      else
        os << cs;
      if (!m.is_unit()) os << "*";
    }
    bool firstf = true;
    for (const auto& [v, e] : m.factors) {
      if (!firstf) os << "*";
      firstf = false;
      os << space_->var(v).name;
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace gobs
