#include "gobs/symplectic.hpp"

namespace gobs {

namespace exact_linalg {

namespace {

int find_pivot(const ExactMatrix& m, int col, int from_row) {
  for (int r = from_row; r < m.rows(); ++r)
    if (!m(r, col).is_zero()) return r;
  return -1;
}

}  // namespace

ExactMatrix inverse(const ExactMatrix& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw GradedError("inverse: matrix not square");
  ExactMatrix a = m;
  ExactMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = GaussianRational(i == j ? 1 : 0);
  for (int col = 0; col < n; ++col) {
    int piv = find_pivot(a, col, col);
    if (piv < 0) throw GradedError("inverse: singular matrix");
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      inv.row(piv).swap(inv.row(col));
    }
    GaussianRational d = a(col, col).inverse();
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * d;
      inv(col, j) = inv(col, j) * d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      GaussianRational f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

GaussianRational determinant(ExactMatrix m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw GradedError("determinant: matrix not square");
  GaussianRational det(1);
  for (int col = 0; col < n; ++col) {
    int piv = find_pivot(m, col, col);
    if (piv < 0) return GaussianRational(0);
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    GaussianRational d = m(col, col).inverse();
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      GaussianRational f = m(r, col) * d;
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

int rank(ExactMatrix m) {
  int rk = 0;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = find_pivot(m, col, row);
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    GaussianRational d = m(row, col).inverse();
    for (int r = row + 1; r < m.rows(); ++r) {
      if (m(r, col).is_zero()) continue;
      GaussianRational f = m(r, col) * d;
      for (int j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    ++row;
    ++rk;
  }
  return rk;
}

std::optional<std::vector<GaussianRational>> solve(ExactMatrix a, std::vector<GaussianRational> b) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  if (static_cast<int>(b.size()) != rows) throw GradedError("solve: size mismatch");
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = find_pivot(a, col, row);
    if (piv < 0) continue;
    if (piv != row) {
      a.row(piv).swap(a.row(row));
      std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(row)]);
    }
    GaussianRational d = a(row, col).inverse();
    for (int j = col; j < cols; ++j) a(row, j) *= d;
    b[static_cast<size_t>(row)] *= d;
    for (int r = 0; r < rows; ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      GaussianRational f = a(r, col);
      for (int j = col; j < cols; ++j) a(r, j) -= f * a(row, j);
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(row)];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int r = row; r < rows; ++r)
    if (!b[static_cast<size_t>(r)].is_zero()) return std::nullopt;
  std::vector<GaussianRational> x(static_cast<size_t>(cols));
  for (int r = 0; r < row; ++r) x[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = b[static_cast<size_t>(r)];
  return x;
}

}  // namespace exact_linalg

ConstantSymplectic::ConstantSymplectic(SpacePtr space, ExactMatrix entries, int degree)
    : space_(std::move(space)), matrix_(std::move(entries)), degree_(degree) {
  const int n = space_->coord_count();
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw GradedError("symplectic matrix must be coord_count x coord_count");
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (matrix_(a, b).is_zero()) continue;
      const auto& va = space_->var(a);
      const auto& vb = space_->var(b);
      if (va.internal_degree + vb.internal_degree != degree_)
        throw GradedError("symplectic entry (" + va.name + "," + vb.name +
                          ") violates the degree selection rule");
      int sgn = ((va.parity() + 1) % 2) & ((vb.parity() + 1) % 2);
      GaussianRational expect = sgn ? -matrix_(a, b) : matrix_(a, b);
      if (matrix_(b, a) != expect)
        throw GradedError("symplectic matrix breaks graded antisymmetry at (" + va.name + "," +
                          vb.name + ")");
    }
  }
  inverse_ = exact_linalg::inverse(matrix_);  // throws when degenerate
}

GradedPolynomial ConstantSymplectic::two_form() const {
  GradedPolynomial w(space_);
  const int n = space_->coord_count();
  Scalar half = Scalar::fraction(1, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (matrix_(a, b).is_zero()) continue;
      w.add_term({{space_->differential_of(a), 1}, {space_->differential_of(b), 1}},
                 half * Scalar(matrix_(a, b)));
    }
  return w;
}

namespace {

int sign_exponent(int pb, int pf) { return ((pb + 1) * (pf + pb)) & 1; }

// Resolves omega's coordinates inside the ambient space (identity when the
// spaces coincide).
std::vector<int> coord_map(const ConstantSymplectic& omega, const SpacePtr& ambient) {
  std::vector<int> map(static_cast<size_t>(omega.space()->coord_count()));
  for (int b = 0; b < omega.space()->coord_count(); ++b)
    map[static_cast<size_t>(b)] =
        ambient == omega.space() ? b : ambient->index_of(omega.space()->var(b).name);
  return map;
}

}  // namespace

GradedPolynomial poisson_bracket(const GradedPolynomial& f, const GradedPolynomial& g,
                                 const ConstantSymplectic& omega) {
  const SpacePtr& ambient = f.space() ? f.space() : omega.space();
  if (f.is_zero() || g.is_zero()) return GradedPolynomial::zero(ambient);
  GradedPolynomial gg = promote(g, ambient);
  auto pf = parity_of(f);
  if (!pf) throw GradedError("poisson_bracket: first argument has mixed parity");
  const auto& inv = omega.inverse_matrix();
  const int n = omega.space()->coord_count();
  const std::vector<int> cmap = coord_map(omega, ambient);
  GradedPolynomial r(ambient);
  std::vector<GradedPolynomial> df(static_cast<size_t>(n)), dg(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    df[static_cast<size_t>(a)] = left_derivative(f, cmap[static_cast<size_t>(a)]);
    dg[static_cast<size_t>(a)] = left_derivative(gg, cmap[static_cast<size_t>(a)]);
  }
  for (int b = 0; b < n; ++b) {
    if (df[static_cast<size_t>(b)].is_zero()) continue;
    int pb = omega.space()->var(b).parity();
    int sgn = sign_exponent(pb, *pf);
    for (int a = 0; a < n; ++a) {
      if (inv(b, a).is_zero() || dg[static_cast<size_t>(a)].is_zero()) continue;
      GradedPolynomial term = mul(df[static_cast<size_t>(b)], dg[static_cast<size_t>(a)]);
      term = scale(Scalar(sgn ? -inv(b, a) : inv(b, a)), term);
      r += term;
    }
  }
  return r;
}

VectorField hamiltonian_vf(const GradedPolynomial& f, const ConstantSymplectic& omega) {
  const SpacePtr& ambient = f.space() ? f.space() : omega.space();
  if (f.is_zero()) return VectorField::zero(ambient, 0);
  DegreeReport rep = grade_of(f);
  if (!rep.homogeneous) throw GradedError("hamiltonian_vf: inhomogeneous Hamiltonian");
  const int pf = ((rep.internal_degree + rep.form_degree) % 2 + 2) % 2;
  const auto& inv = omega.inverse_matrix();
  const int n = omega.space()->coord_count();
  const std::vector<int> cmap = coord_map(omega, ambient);
  VectorField X(ambient, rep.internal_degree - omega.degree());
  for (int a = 0; a < n; ++a) {
    GradedPolynomial comp(ambient);
    for (int b = 0; b < n; ++b) {
      if (inv(b, a).is_zero()) continue;
      GradedPolynomial db = left_derivative(f, cmap[static_cast<size_t>(b)]);
      if (db.is_zero()) continue;
      int sgn = sign_exponent(omega.space()->var(b).parity(), pf);
      comp += scale_right(db, Scalar(sgn ? -inv(b, a) : inv(b, a)));
    }
    X.set_component(cmap[static_cast<size_t>(a)], std::move(comp));
  }
  return X;
}

GradedPolynomial de_rham_vertical(const GradedPolynomial& f, const std::vector<int>& coords) {
  const auto& space = f.space();
  std::map<int, GradedPolynomial> imgs;
  for (int a : coords)
    imgs.emplace(a, GradedPolynomial::variable(space, space->differential_of(a)));
  return apply_derivation(1,
                          [&](int v) -> const GradedPolynomial* {
                            auto it = imgs.find(v);
                            return it == imgs.end() ? nullptr : &it->second;
                          },
                          f);
}

VectorField scale(const Scalar& c, const VectorField& X) {
  VectorField r(X.space(), X.degree());
  for (const auto& [coord, comp] : X.components()) r.set_component(coord, scale(c, comp));
  return r;
}

}  // namespace gobs
