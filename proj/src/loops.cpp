#include "gobs/loops.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <fstream>
#include <sstream>

namespace gobs {

Representation::Representation(const LieAlgebra& g, std::vector<Scalar> matrices, double tol)
    : matrices_(std::move(matrices)) {
  if (static_cast<int>(matrices_.size()) != g.dim())
    throw GradedError("representation: one matrix per basis element required");
  if (matrices_.empty()) throw GradedError("representation: empty basis");
  dim_ = matrices_[0].dim();
  exact_ = true;
  for (const auto& m : matrices_) {
    if (!m.is_matrix() || m.dim() != dim_) throw GradedError("representation: dimension mismatch");
    if (!m.is_exact()) exact_ = false;
  }
  // rho([e_a, e_b]) = [rho_a, rho_b]
  for (int a = 0; a < g.dim(); ++a)
    for (int b = 0; b < g.dim(); ++b) {
      Scalar comm = matrices_[static_cast<size_t>(a)] * matrices_[static_cast<size_t>(b)] -
                    matrices_[static_cast<size_t>(b)] * matrices_[static_cast<size_t>(a)];
      Scalar expect(0);
      for (int c = 0; c < g.dim(); ++c)
        if (!g.f(c, a, b).is_zero())
          expect += Scalar(g.f(c, a, b)) * matrices_[static_cast<size_t>(c)];
      Scalar diff = comm - expect;
      if (exact_) {
        if (!diff.is_zero()) throw GradedError("representation: not a Lie algebra homomorphism");
      } else {
        if (diff.complex_matrix().norm() > tol)
          throw GradedError("representation: not a Lie algebra homomorphism (norm residual)");
      }
    }
  traceless_ = true;
  for (const auto& m : matrices_) {
    Scalar tr = m.trace();
    bool zero = tr.is_exact() ? tr.exact().is_zero() : std::abs(tr.complex_value()) <= tol;
    if (!zero) traceless_ = false;
  }
}

ComplexMatrix Representation::evaluate(const std::vector<std::complex<double>>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != algebra_dim())
    throw GradedError("representation: coefficient count mismatch");
  ComplexMatrix m = ComplexMatrix::Zero(dim_, dim_);
  for (size_t a = 0; a < coeffs.size(); ++a) m += coeffs[a] * matrices_[a].complex_matrix();
  return m;
}

Representation spin_representation(const LieAlgebra& su2_algebra, int two_j) {
  if (two_j < 1) throw GradedError("spin_representation: two_j must be >= 1");
  if (two_j == 1) {
    // t_a = -(i/2) sigma_a, entries in Q(i).
    GaussianRational half(mpq_class(1, 2)), mhalf(mpq_class(-1, 2));
    GaussianRational ih(mpq_class(0), mpq_class(1, 2)), mih(mpq_class(0), mpq_class(-1, 2));
    ExactMatrix t1(2, 2), t2(2, 2), t3(2, 2);
    t1 << GaussianRational(0), mih, mih, GaussianRational(0);
    t2 << GaussianRational(0), mhalf, half, GaussianRational(0);
    t3 << mih, GaussianRational(0), GaussianRational(0), ih;
    return Representation(su2_algebra, {Scalar(t1), Scalar(t2), Scalar(t3)});
  }
  if (two_j == 2) {
    // Adjoint: integer entries (ad_a)^c_b = f^c_{ab}.
    auto ad = su2_algebra.adjoint_matrices();
    return Representation(su2_algebra, {Scalar(ad[0]), Scalar(ad[1]), Scalar(ad[2])});
  }
  // General spin-j from ladder operators: J3 = diag(j..-j),
  // (J+)_{m',m} = sqrt(j(j+1)-m(m+1)) for m' = m+1; t_a = -i J_a.
  const int n = two_j + 1;
  const double j = two_j / 2.0;
  ComplexMatrix jp = ComplexMatrix::Zero(n, n), j3 = ComplexMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    double m = j - r;
    j3(r, r) = m;
    if (r > 0) jp(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  ComplexMatrix jm = jp.adjoint();
  std::complex<double> mi(0.0, -1.0);
  ComplexMatrix t1 = mi * 0.5 * (jp + jm);
  ComplexMatrix t2 = mi * std::complex<double>(0.0, -0.5) * (jp - jm);
  ComplexMatrix t3 = mi * j3;
  return Representation(su2_algebra, {Scalar(t1), Scalar(t2), Scalar(t3)});
}

LatticeLoop LatticeLoop::rotated(int shift) const {
  const int n = edges();
  LatticeLoop out;
  out.samples.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    out.samples[static_cast<size_t>(k)] = samples[static_cast<size_t>((k + shift) % n)];
  return out;
}

ComplexMatrix holonomy(const LatticeLoop& loop, const Representation& rho) {
  if (loop.edges() < 1) throw GradedError("holonomy: loop needs at least one edge");
  ComplexMatrix w = ComplexMatrix::Identity(rho.dim(), rho.dim());
  for (int k = 0; k < loop.edges(); ++k) {
    ComplexMatrix u = rho.evaluate(loop.samples[static_cast<size_t>(k)]).exp();
    w = u * w;  // edge N ends leftmost
  }
  return w;
}

std::complex<double> wilson_loop_pexp(const LatticeLoop& loop, const Representation& rho) {
  return holonomy(loop, rho).trace();
}

ComplexMatrix gauge_transformed_holonomy(const LatticeLoop& loop, const Representation& rho,
                                         const std::vector<ComplexMatrix>& site_elements) {
  const int n = loop.edges();
  if (static_cast<int>(site_elements.size()) != n)
    throw GradedError("gauge transformation: one site element per edge required");
  ComplexMatrix w = ComplexMatrix::Identity(rho.dim(), rho.dim());
  for (int k = 0; k < n; ++k) {
    ComplexMatrix u = rho.evaluate(loop.samples[static_cast<size_t>(k)]).exp();
    const ComplexMatrix& g_here = site_elements[static_cast<size_t>(k)];
    const ComplexMatrix& g_next = site_elements[static_cast<size_t>((k + 1) % n)];
    w = (g_next * u * g_here.inverse()) * w;
  }
  return w;
}

namespace {

// Block matrix D_{k,l} = delta_{l,k+1 mod N} Id - delta_{k,l} U_k; its
// determinant carries the Berezin evaluation of the discretized action
// sum_k <p_k, q_{k+1} - U_k q_k>.
ComplexMatrix block_circulant(const std::vector<ComplexMatrix>& transports) {
  const int n = static_cast<int>(transports.size());
  const int d = static_cast<int>(transports[0].rows());
  ComplexMatrix m = ComplexMatrix::Zero(n * d, n * d);
  for (int k = 0; k < n; ++k) {
    m.block(k * d, ((k + 1) % n) * d, d, d) = ComplexMatrix::Identity(d, d);
    m.block(k * d, k * d, d, d) -= transports[static_cast<size_t>(k)];
  }
  return m;
}

ExactMatrix block_circulant_exact(const std::vector<ExactMatrix>& transports) {
  const int n = static_cast<int>(transports.size());
  const int d = static_cast<int>(transports[0].rows());
  ExactMatrix m(n * d, n * d);
  for (int i = 0; i < n * d; ++i)
    for (int j = 0; j < n * d; ++j) m(i, j) = GaussianRational(0);
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < d; ++r) {
      m(k * d + r, ((k + 1) % n) * d + r) += GaussianRational(1);
      for (int c = 0; c < d; ++c) m(k * d + r, k * d + c) -= transports[static_cast<size_t>(k)](r, c);
    }
  return m;
}

int lattice_sign(int n, int d) { return ((n * d) % 2 == 0) ? 1 : -1; }

}  // namespace

TorsionResult torsion_1d(const LatticeLoop& loop, const Representation& rho, double tol) {
  TorsionResult res;
  const int n = loop.edges();
  const int d = rho.dim();
  std::vector<ComplexMatrix> transports;
  transports.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    transports.push_back(rho.evaluate(loop.samples[static_cast<size_t>(k)]).exp());
  ComplexMatrix w = ComplexMatrix::Identity(d, d);
  for (const auto& u : transports) w = u * w;
  res.direct = (w - ComplexMatrix::Identity(d, d)).determinant();
  res.lattice = static_cast<double>(lattice_sign(n, d)) * block_circulant(transports).determinant();
  double scale = std::max(1.0, std::max(std::abs(res.direct), std::abs(res.lattice)));
  res.match = std::abs(res.direct - res.lattice) <= tol * scale;
  return res;
}

ExactTorsionResult torsion_1d_exact(const std::vector<ExactMatrix>& transports) {
  if (transports.empty()) throw GradedError("torsion_1d_exact: empty loop");
  const int n = static_cast<int>(transports.size());
  const int d = static_cast<int>(transports[0].rows());
  ExactTorsionResult res;
  ExactMatrix w(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) w(i, j) = GaussianRational(i == j ? 1 : 0);
  for (const auto& u : transports) w = (u * w).eval();
  for (int i = 0; i < d; ++i) w(i, i) -= GaussianRational(1);
  res.direct_det = exact_linalg::determinant(w);
  GaussianRational latt = exact_linalg::determinant(block_circulant_exact(transports));
  res.lattice_det = lattice_sign(n, d) == 1 ? latt : -latt;
  res.match = (res.direct_det == res.lattice_det);
  return res;
}

GradedPolynomial check_quantized_fiber(const QuantizedFiber& qf) {
  DegreeReport rep = grade_of(qf.theta_hat);
  if (!qf.theta_hat.is_zero() && (!rep.homogeneous || rep.internal_degree != 1 || rep.form_degree != 0))
    throw GradedError("quantized fiber: Theta_hat must have internal degree 1");
  GradedPolynomial r = vf_apply(qf.Q, qf.theta_hat);
  r += scale(Scalar::i(), mul(qf.theta_hat, qf.theta_hat));
  return r;
}

QuantizedFiber make_quantized_moment_fiber(const LieAlgebra& g, const Representation& rho) {
  std::vector<std::pair<std::string, int>> coords;
  for (int a = 0; a < g.dim(); ++a) coords.emplace_back("psi" + std::to_string(a + 1), 1);
  SpacePtr sp = GradedSpace::make(coords);
  VectorField Q(sp, 1);
  for (int a = 0; a < g.dim(); ++a) {
    GradedPolynomial qa(sp);
    for (int bb = 0; bb < g.dim(); ++bb)
      for (int c = 0; c < g.dim(); ++c)
        if (!g.f(a, bb, c).is_zero())
          qa.add_term({{bb, 1}, {c, 1}}, Scalar(g.f(a, bb, c)) * Scalar::fraction(1, 2));
    Q.set_component(a, std::move(qa));
  }
  GradedPolynomial theta_hat(sp);
  for (int a = 0; a < g.dim(); ++a) {
    GradedPolynomial term(sp);
    term.add_term({{a, 1}}, Scalar::i() * rho.matrix(a));
    theta_hat += term;
  }
  return QuantizedFiber{sp, std::move(Q), rho.dim(), std::move(theta_hat)};
}

GradedPolynomial check_psm_f_hat(const ShiftedCotangent& T,
                                 const std::vector<std::vector<GradedPolynomial>>& pi,
                                 const GradedPolynomial& f_hat) {
  GradedPolynomial theta_pi = T.bivector(pi);
  GradedPolynomial r = schouten(theta_pi, f_hat, T);
  r += scale(Scalar::i(), mul(promote(f_hat, T.space()), promote(f_hat, T.space())));
  return r;
}

GradedPolynomial make_psm_wilson_f_hat(const ShiftedCotangent& T, const Representation& rho) {
  if (rho.algebra_dim() != T.dim())
    throw GradedError("psm wilson: representation rank must match the base dimension");
  GradedPolynomial f(T.space());
  for (int a = 0; a < T.dim(); ++a) {
    GradedPolynomial term(T.space());
    term.add_term({{T.p(a), 1}}, Scalar::i() * rho.matrix(a));
    f += term;
  }
  return f;
}

PointObservableResult point_observable(const SpacePtr& base, const VectorField& Q,
                                       const GradedPolynomial& theta,
                                       const std::map<std::string, Scalar>& assignment) {
  PointObservableResult res;
  GradedPolynomial th = promote(theta, base);
  res.gauge_ok = vf_apply(Q, th).is_zero();
  // Numeric value of exp(i theta) on the degree-0 part of the assignment.
  GradedPolynomial deg0(base);
  for (const auto& [m, c] : th.terms()) {
    bool even_only = true;
    for (const auto& [v, e] : m.factors)
      if (base->var(v).is_odd() || base->var(v).is_differential()) even_only = false;
    if (!even_only) continue;
    GradedPolynomial t(base);
    t.add_term(m.factors, c);
    deg0 += t;
  }
  Scalar v = eval_numeric(deg0, assignment);
  std::complex<double> z = v.is_matrix() ? v.trace().complex_value() : v.complex_value();
  res.value = std::exp(std::complex<double>(0.0, 1.0) * z);
  return res;
}

std::complex<double> trace_observable(const GradedPolynomial& f, const std::string& var,
                                      const Scalar& matrix_value) {
  Scalar v = eval_numeric(f, {{var, matrix_value}});
  return v.is_matrix() ? v.trace().complex_value() : v.complex_value() * double(matrix_value.dim());
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::complex<double> parse_complex(const std::string& text) {
  // forms: "1.5", "2i", "1+2i", "0.5-0.25i", "i", "-i"
  std::string t = trim(text);
  if (t.empty()) throw GradedError("empty numeric entry");
  if (t.back() != 'i') return {std::stod(t), 0.0};
  t.pop_back();
  // find the split between real and imaginary parts
  size_t pos = std::string::npos;
  for (size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      pos = k;
      break;
    }
  }
  if (pos == std::string::npos) {
    if (t.empty() || t == "+") return {0.0, 1.0};
    if (t == "-") return {0.0, -1.0};
    return {0.0, std::stod(t)};
  }
  double re = std::stod(t.substr(0, pos));
  std::string im = t.substr(pos);
  if (im == "+") return {re, 1.0};
  if (im == "-") return {re, -1.0};
  return {re, std::stod(im)};
}

GaussianRational parse_exact_entry(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw GradedError("empty numeric entry");
  if (t.back() != 'i') return GaussianRational(parse_rational(t));
  t.pop_back();
  size_t pos = std::string::npos;
  for (size_t k = t.size(); k-- > 1;)
    if (t[k] == '+' || t[k] == '-') {
      pos = k;
      break;
    }
  if (pos == std::string::npos) {
    if (t.empty() || t == "+") return GaussianRational(mpq_class(0), mpq_class(1));
    if (t == "-") return GaussianRational(mpq_class(0), mpq_class(-1));
    return GaussianRational(mpq_class(0), parse_rational(t));
  }
  mpq_class re = parse_rational(t.substr(0, pos));
  std::string im = t.substr(pos);
  mpq_class imq = (im == "+") ? mpq_class(1) : (im == "-") ? mpq_class(-1) : parse_rational(im);
  return GaussianRational(re, imq);
}

}  // namespace

LatticeLoop read_loop_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GradedError("cannot open loop file: " + path);
  LatticeLoop loop;
  std::string line;
  size_t width = 0;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::complex<double>> edge;
    for (const auto& f : split(t, ',')) edge.push_back(parse_complex(f));
    if (width == 0) width = edge.size();
    if (edge.size() != width) throw GradedError("loop file: inconsistent coefficient count");
    loop.samples.push_back(std::move(edge));
  }
  if (loop.samples.empty()) throw GradedError("loop file: no edges");
  return loop;
}

std::vector<Scalar> read_matrix_blocks(const std::string& path, bool exact) {
  std::ifstream in(path);
  if (!in) throw GradedError("cannot open matrix file: " + path);
  std::string line;
  int dim = 0;
  std::vector<std::vector<std::string>> rows;
  std::vector<Scalar> blocks;
  auto flush = [&]() {
    if (rows.empty()) return;
    if (static_cast<int>(rows.size()) != dim) throw GradedError("matrix file: incomplete block");
    if (exact) {
      ExactMatrix m(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = parse_exact_entry(rows[static_cast<size_t>(r)][static_cast<size_t>(c)]);
      blocks.emplace_back(std::move(m));
    } else {
      ComplexMatrix m(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = parse_complex(rows[static_cast<size_t>(r)][static_cast<size_t>(c)]);
      blocks.emplace_back(std::move(m));
    }
    rows.clear();
  };
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') {
      continue;
    }
    if (t.rfind("dim", 0) == 0) {
      dim = std::stoi(t.substr(3));
      if (dim <= 0) throw GradedError("matrix file: bad dimension");
      continue;
    }
    if (dim == 0) throw GradedError("matrix file: missing 'dim' header");
    auto fields = split(t, ',');
    if (static_cast<int>(fields.size()) != dim) throw GradedError("matrix file: row width mismatch");
    std::vector<std::string> row;
    for (auto& f : fields) row.push_back(trim(f));
    rows.push_back(std::move(row));
    if (static_cast<int>(rows.size()) == dim) flush();
  }
  flush();
  if (blocks.empty()) throw GradedError("matrix file: no blocks");
  return blocks;
}

}  // namespace gobs
