#include "gobs/lie.hpp"

namespace gobs {

LieAlgebra::LieAlgebra(int dim, std::string name)
    : dim_(dim), name_(std::move(name)), f_(static_cast<size_t>(dim * dim * dim)) {}

void LieAlgebra::set_f(int c, int a, int b, GaussianRational v) {
  f_[static_cast<size_t>((c * dim_ + a) * dim_ + b)] = std::move(v);
}

void LieAlgebra::set_pairing(ExactMatrix kappa) {
  if (kappa.rows() != dim_ || kappa.cols() != dim_) throw GradedError("pairing dimension mismatch");
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      if (kappa(a, b) != kappa(b, a)) throw GradedError("pairing must be symmetric");
  kappa_ = std::move(kappa);
  has_pairing_ = true;
}

bool LieAlgebra::antisymmetric() const {
  for (int c = 0; c < dim_; ++c)
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        if (f(c, a, b) != -f(c, b, a)) return false;
  return true;
}

bool LieAlgebra::jacobi() const {
  // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 componentwise.
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c)
        for (int d = 0; d < dim_; ++d) {
          GaussianRational s;
          for (int e = 0; e < dim_; ++e) {
            s += f(d, e, c) * f(e, a, b);
            s += f(d, e, a) * f(e, b, c);
            s += f(d, e, b) * f(e, c, a);
          }
          if (!s.is_zero()) return false;
        }
  return true;
}

bool LieAlgebra::pairing_invariant() const {
  if (!has_pairing_) return false;
  for (int x = 0; x < dim_; ++x)
    for (int y = 0; y < dim_; ++y)
      for (int z = 0; z < dim_; ++z) {
        GaussianRational s;
        for (int c = 0; c < dim_; ++c) {
          s += f(c, x, y) * kappa_(c, z);
          s += f(c, x, z) * kappa_(y, c);
        }
        if (!s.is_zero()) return false;
      }
  return true;
}

bool LieAlgebra::unimodular() const {
  for (int a = 0; a < dim_; ++a) {
    GaussianRational tr;
    for (int b = 0; b < dim_; ++b) tr += f(b, a, b);
    if (!tr.is_zero()) return false;
  }
  return true;
}

std::vector<GradedPolynomial> LieAlgebra::bracket(const std::vector<GradedPolynomial>& x,
                                                  const std::vector<GradedPolynomial>& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    throw GradedError("bracket: component count mismatch");
  std::vector<GradedPolynomial> r;
  r.reserve(static_cast<size_t>(dim_));
  for (int c = 0; c < dim_; ++c) {
    GradedPolynomial acc(x[0].space());
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) {
        if (f(c, a, b).is_zero()) continue;
        acc += scale(Scalar(f(c, a, b)), mul(x[static_cast<size_t>(a)], y[static_cast<size_t>(b)]));
      }
    r.push_back(std::move(acc));
  }
  return r;
}

std::vector<ExactMatrix> LieAlgebra::adjoint_matrices() const {
  std::vector<ExactMatrix> ms;
  for (int a = 0; a < dim_; ++a) {
    ExactMatrix m(dim_, dim_);
    for (int c = 0; c < dim_; ++c)
      for (int b = 0; b < dim_; ++b) m(c, b) = f(c, a, b);
    ms.push_back(std::move(m));
  }
  return ms;
}

namespace {

LieAlgebra eps_algebra(const std::string& name) {
  LieAlgebra g(3, name);
  int eps[3][3][3] = {};
  eps[0][1][2] = eps[1][2][0] = eps[2][0][1] = 1;
  eps[0][2][1] = eps[2][1][0] = eps[1][0][2] = -1;
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (eps[c][a][b]) g.set_f(c, a, b, GaussianRational(eps[c][a][b]));
  ExactMatrix kappa(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) kappa(i, j) = GaussianRational(i == j ? 1 : 0);
  g.set_pairing(std::move(kappa));
  return g;
}

}  // namespace

LieAlgebra su2() { return eps_algebra("su2"); }
LieAlgebra so3() { return eps_algebra("so3"); }

LieAlgebra abelian(int dim) {
  LieAlgebra g(dim, "abelian" + std::to_string(dim));
  ExactMatrix kappa(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) kappa(i, j) = GaussianRational(i == j ? 1 : 0);
  g.set_pairing(std::move(kappa));
  return g;
}

}  // namespace gobs
