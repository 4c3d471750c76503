#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gobs {

/// Parse or resolution failure with source position and a one-line hint.
struct ModelError : std::runtime_error {
  ModelError(const std::string& msg, int line, int col, const std::string& hint = "")
      : std::runtime_error(format(msg, line, col, hint)), line(line), col(col) {}
  int line, col;

  static std::string format(const std::string& msg, int line, int col, const std::string& hint) {
    std::string s = "line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
    if (!hint.empty()) s += "\n  hint: " + hint;
    return s;
  }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression AST: literals, references, arithmetic, the pairing and bracket
/// shorthands, de Rham and left-derivative nodes.
struct Expr {
  enum class Kind {
    Number,     // rational literal (integers; fractions arise via Div)
    Imaginary,  // i
    Ref,        // coordinate, family, or let-name
    Add,
    Sub,
    Neg,
    Mul,
    Div,
    Pow,
    Pair,     // <u, v>
    Bracket,  // [u, v]
    DeRham,   // d(u)
    Deriv     // dd(u, var)
  };
  Kind kind;
  mpq_class number;
  std::string name;  // Ref target or Deriv variable
  std::vector<ExprPtr> args;
  int power = 0;
  int line = 0, col = 0;
};

struct CoordDecl {
  std::string name;
  int degree = 0;
  int count = 0;  // 0: scalar coordinate; >=1: family name1..nameN
  int line = 0, col = 0;
};

struct SpaceDecl {
  std::string name;
  std::vector<CoordDecl> coords;
};

struct AlgebraDecl {
  std::string name;
  std::string builtin;  // su2 | so3 | abelian
  int abelian_dim = 0;
  // Antisymmetric updates f[c,a,b] += v (and f[c,b,a] -= v).
  struct Bump {
    int c, a, b;
    mpq_class v;
  };
  std::vector<Bump> bumps;
};

struct RepDecl {
  std::string name;
  std::string kind;  // spin | adjoint
  std::string algebra;
  int two_j = 0;
};

struct LetDecl {
  std::string name;
  std::string over;  // space or target name
  std::optional<int> degree;
  ExprPtr value;
  int line = 0, col = 0;
};

struct TargetDecl {
  std::string name;
  std::string kind;  // chern_simons | bf | poisson_sigma
  std::string algebra;
  int D = 0;        // bf
  int psm_dim = 0;  // poisson_sigma
  struct PiEntry {
    int i, j;
    ExprPtr value;
  };
  std::vector<PiEntry> pi;  // antisymmetrized automatically
};

struct FieldDecl {
  std::string name;
  int degree = 0;
};

struct MomentBody {
  std::vector<CoordDecl> fiber;
  struct OmegaEntry {
    int i, j;
    mpq_class v;
  };
  std::vector<OmegaEntry> omega;
  ExprPtr alpha;
  std::vector<ExprPtr> mu;  // one per generator
};

struct BundleDecl {
  std::string name;
  std::string kind;  // orthogonal_module | linfty_module | linfty_ideal |
                     // moment_map | point_fiber | cattaneo_rossi
  std::string algebra;
  std::string rep;
  int shift = 0;  // orthogonal/linfty module
  int D = 0;      // cattaneo_rossi
  std::string target;      // point_fiber ambient
  std::string theta_name;  // point_fiber let-name
  std::optional<MomentBody> moment;
  int line = 0, col = 0;
};

struct BVDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  ExprPtr action;
};

struct PreObsDecl {
  std::string name;
  std::string ambient;  // target name
  std::vector<FieldDecl> aux;
  ExprPtr action;
};

struct QFiberDecl {
  std::string name;
  std::string algebra;
  std::string rep;
};

struct CheckDecl {
  std::string kind;  // target | bundle | cme | qme | preobs | qfiber | schouten | psm_fhat | point
  std::string subject;
  std::string arg;    // level for preobs; rep for psm_fhat; theta for point
  int line = 0, col = 0;
};

struct PushforwardDecl {
  std::string preobs;
  std::string lagrangian;  // fields | conjugates
  int swap_pair = -1;      // >= 0: swap that pair afterwards
  int line = 0, col = 0;
};

/// A parsed model file: declarations and directives in source order.
struct ModelFile {
  struct Statement {
    enum class Kind {
      Algebra,
      Space,
      Rep,
      Let,
      Target,
      Bundle,
      BV,
      PreObs,
      QFiber,
      Check,
      Pushforward
    };
    Kind kind;
    size_t index = 0;  // into the per-kind vector below
  };
  std::vector<Statement> order;
  std::vector<AlgebraDecl> algebras;
  std::vector<SpaceDecl> spaces;
  std::vector<RepDecl> reps;
  std::vector<LetDecl> lets;
  std::vector<TargetDecl> targets;
  std::vector<BundleDecl> bundles;
  std::vector<BVDecl> bvs;
  std::vector<PreObsDecl> preobs;
  std::vector<QFiberDecl> qfibers;
  std::vector<CheckDecl> checks;
  std::vector<PushforwardDecl> pushforwards;
  std::vector<std::string> load_warnings;  // e.g. odd squares
};

/// Parses UTF-8 model text; throws ModelError with position and hint.
ModelFile parse_model(const std::string& text);

/// Canonical rendering; parse(print(parse(text))) equals print(parse(text)).
std::string print_model(const ModelFile& m);

std::string print_expr(const ExprPtr& e);

}  // namespace gobs
