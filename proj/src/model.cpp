#include "gobs/model.hpp"

#include <cctype>
#include <sstream>

namespace gobs {

namespace {

struct Token {
  enum class Kind { Ident, Number, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
        continue;
      }
      break;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Kind::Ident;
      tok_.text = text_.substr(start, pos_ - start);
      col_ += static_cast<int>(tok_.text.size());
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_.kind = Token::Kind::Number;
      tok_.text = text_.substr(start, pos_ - start);
      col_ += static_cast<int>(tok_.text.size());
      return;
    }
    // multi-char symbols
    if (c == '+' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      tok_.kind = Token::Kind::Symbol;
      tok_.text = "+=";
      pos_ += 2;
      col_ += 2;
      return;
    }
    tok_.kind = Token::Kind::Symbol;
    tok_.text = std::string(1, c);
    ++pos_;
    ++col_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ModelFile parse() {
    ModelFile m;
    while (lex_.peek().kind != Token::Kind::End) {
      const Token& t = lex_.peek();
      if (t.kind != Token::Kind::Ident)
        fail("expected a declaration keyword", "statements start with algebra/space/rep/let/target/"
                                               "bundle/bv/preobs/qfiber/check/pushforward");
      const std::string kw = t.text;
      if (kw == "algebra")
        add(m, ModelFile::Statement::Kind::Algebra, m.algebras, parse_algebra());
      else if (kw == "space")
        add(m, ModelFile::Statement::Kind::Space, m.spaces, parse_space());
      else if (kw == "rep")
        add(m, ModelFile::Statement::Kind::Rep, m.reps, parse_rep());
      else if (kw == "let")
        add(m, ModelFile::Statement::Kind::Let, m.lets, parse_let(m));
      else if (kw == "target")
        add(m, ModelFile::Statement::Kind::Target, m.targets, parse_target());
      else if (kw == "bundle")
        add(m, ModelFile::Statement::Kind::Bundle, m.bundles, parse_bundle());
      else if (kw == "bv")
        add(m, ModelFile::Statement::Kind::BV, m.bvs, parse_bv());
      else if (kw == "preobs")
        add(m, ModelFile::Statement::Kind::PreObs, m.preobs, parse_preobs());
      else if (kw == "qfiber")
        add(m, ModelFile::Statement::Kind::QFiber, m.qfibers, parse_qfiber());
      else if (kw == "check")
        add(m, ModelFile::Statement::Kind::Check, m.checks, parse_check());
      else if (kw == "pushforward")
        add(m, ModelFile::Statement::Kind::Pushforward, m.pushforwards, parse_pushforward());
      else
        fail("unknown keyword '" + kw + "'", "statements start with algebra/space/rep/let/target/"
                                             "bundle/bv/preobs/qfiber/check/pushforward");
    }
    return m;
  }

 private:
  template <typename V, typename D>
  void add(ModelFile& m, ModelFile::Statement::Kind k, V& vec, D&& decl) {
    vec.push_back(std::forward<D>(decl));
    m.order.push_back({k, vec.size() - 1});
  }

  [[noreturn]] void fail(const std::string& msg, const std::string& hint = "") {
    const Token& t = lex_.peek();
    throw ModelError(msg, t.line, t.col, hint);
  }

  Token expect_ident() {
    if (lex_.peek().kind != Token::Kind::Ident) fail("expected an identifier");
    return lex_.next();
  }

  Token expect_symbol(const std::string& s, const std::string& hint = "") {
    if (lex_.peek().kind != Token::Kind::Symbol || lex_.peek().text != s)
      fail("expected '" + s + "'", hint);
    return lex_.next();
  }

  bool try_symbol(const std::string& s) {
    if (lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == s) {
      lex_.next();
      return true;
    }
    return false;
  }

  bool try_keyword(const std::string& s) {
    if (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == s) {
      lex_.next();
      return true;
    }
    return false;
  }

  void expect_keyword(const std::string& s, const std::string& hint = "") {
    if (!try_keyword(s)) fail("expected '" + s + "'", hint);
  }

  long expect_int() {
    bool neg = try_symbol("-");
    if (lex_.peek().kind != Token::Kind::Number) fail("expected an integer");
    long v = std::stol(lex_.next().text);
    return neg ? -v : v;
  }

  mpq_class expect_rational() {
    bool neg = try_symbol("-");
    if (lex_.peek().kind != Token::Kind::Number) fail("expected a number");
    mpq_class num(lex_.next().text, 10);
    if (try_symbol("/")) {
      if (lex_.peek().kind != Token::Kind::Number) fail("expected a denominator");
      mpq_class den(lex_.next().text, 10);
      num /= den;
    }
    num.canonicalize();
    return neg ? mpq_class(-num) : num;
  }

  AlgebraDecl parse_algebra() {
    expect_keyword("algebra");
    AlgebraDecl a;
    a.name = expect_ident().text;
    expect_symbol("=");
    Token b = expect_ident();
    if (b.text == "su2" || b.text == "so3") {
      a.builtin = b.text;
    } else if (b.text == "abelian") {
      a.builtin = "abelian";
      expect_symbol("(");
      a.abelian_dim = static_cast<int>(expect_int());
      expect_symbol(")");
    } else {
      throw ModelError("unknown algebra '" + b.text + "'", b.line, b.col,
                       "builtins: su2, so3, abelian(n)");
    }
    if (try_symbol("{")) {
      while (!try_symbol("}")) {
        expect_keyword("f", "algebra bodies hold perturbations: f[c,a,b] += q;");
        expect_symbol("[");
        int c = static_cast<int>(expect_int());
        expect_symbol(",");
        int ai = static_cast<int>(expect_int());
        expect_symbol(",");
        int bi = static_cast<int>(expect_int());
        expect_symbol("]");
        expect_symbol("+=");
        mpq_class v = expect_rational();
        expect_symbol(";");
        a.bumps.push_back({c, ai, bi, v});
      }
    }
    expect_symbol(";");
    return a;
  }

  SpaceDecl parse_space() {
    expect_keyword("space");
    SpaceDecl s;
    s.name = expect_ident().text;
    expect_symbol("{");
    while (!try_symbol("}")) s.coords.push_back(parse_coord());
    return s;
  }

  CoordDecl parse_coord() {
    CoordDecl c;
    c.line = lex_.peek().line;
    c.col = lex_.peek().col;
    if (try_keyword("coords")) {
      c.name = expect_ident().text;
      expect_symbol("[");
      c.count = static_cast<int>(expect_int());
      expect_symbol("]");
    } else if (try_keyword("coord")) {
      c.name = expect_ident().text;
      c.count = 0;
    } else {
      fail("expected 'coord' or 'coords'");
    }
    expect_symbol(":");
    c.degree = static_cast<int>(expect_int());
    expect_symbol(";");
    return c;
  }

  RepDecl parse_rep() {
    expect_keyword("rep");
    RepDecl r;
    r.name = expect_ident().text;
    expect_symbol("=");
    Token k = expect_ident();
    if (k.text == "spin") {
      r.kind = "spin";
      expect_symbol("(");
      r.algebra = expect_ident().text;
      expect_symbol(",");
      r.two_j = static_cast<int>(expect_int());
      expect_symbol(")");
    } else if (k.text == "adjoint") {
      r.kind = "adjoint";
      expect_symbol("(");
      r.algebra = expect_ident().text;
      expect_symbol(")");
    } else {
      throw ModelError("unknown representation '" + k.text + "'", k.line, k.col,
                       "use spin(g, two_j) or adjoint(g)");
    }
    expect_symbol(";");
    return r;
  }

  LetDecl parse_let(const ModelFile&) {
    Token kw = lex_.next();  // let
    LetDecl l;
    l.line = kw.line;
    l.col = kw.col;
    l.name = expect_ident().text;
    expect_keyword("over", "let <name> over <space-or-target> [degree n] = <expr>;");
    l.over = expect_ident().text;
    if (try_keyword("degree")) l.degree = static_cast<int>(expect_int());
    expect_symbol("=");
    l.value = parse_expr();
    expect_symbol(";");
    return l;
  }

  TargetDecl parse_target() {
    expect_keyword("target");
    TargetDecl t;
    t.name = expect_ident().text;
    expect_symbol("=");
    Token k = expect_ident();
    t.kind = k.text;
    if (t.kind == "chern_simons") {
      expect_symbol("(");
      t.algebra = expect_ident().text;
      expect_symbol(")");
    } else if (t.kind == "bf") {
      expect_symbol("(");
      t.algebra = expect_ident().text;
      expect_symbol(",");
      t.D = static_cast<int>(expect_int());
      expect_symbol(")");
    } else if (t.kind == "poisson_sigma") {
      expect_symbol("(");
      t.psm_dim = static_cast<int>(expect_int());
      expect_symbol(")");
      expect_symbol("{");
      while (!try_symbol("}")) {
        expect_keyword("pi", "poisson_sigma bodies hold bivector entries: pi[i,j] = <expr>;");
        expect_symbol("[");
        int i = static_cast<int>(expect_int());
        expect_symbol(",");
        int j = static_cast<int>(expect_int());
        expect_symbol("]");
        expect_symbol("=");
        ExprPtr v = parse_expr();
        expect_symbol(";");
        t.pi.push_back({i, j, v});
      }
    } else {
      throw ModelError("unknown target kind '" + t.kind + "'", k.line, k.col,
                       "kinds: chern_simons, bf, poisson_sigma");
    }
    expect_symbol(";");
    return t;
  }

  BundleDecl parse_bundle() {
    Token kw = lex_.next();  // bundle
    BundleDecl b;
    b.line = kw.line;
    b.col = kw.col;
    b.name = expect_ident().text;
    expect_symbol("=");
    Token k = expect_ident();
    b.kind = k.text;
    if (b.kind == "orthogonal_module" || b.kind == "linfty_module") {
      expect_symbol("(");
      b.algebra = expect_ident().text;
      expect_symbol(",");
      b.rep = expect_ident().text;
      expect_symbol(",");
      b.shift = static_cast<int>(expect_int());
      expect_symbol(")");
      expect_symbol(";");
    } else if (b.kind == "linfty_ideal") {
      expect_symbol("(");
      b.algebra = expect_ident().text;
      expect_symbol(",");
      b.rep = expect_ident().text;
      expect_symbol(")");
      expect_symbol(";");
    } else if (b.kind == "cattaneo_rossi") {
      expect_symbol("(");
      b.algebra = expect_ident().text;
      expect_symbol(",");
      b.D = static_cast<int>(expect_int());
      expect_symbol(")");
      expect_symbol(";");
    } else if (b.kind == "point_fiber") {
      expect_symbol("(");
      b.target = expect_ident().text;
      expect_symbol(",");
      b.theta_name = expect_ident().text;
      expect_symbol(")");
      expect_symbol(";");
    } else if (b.kind == "moment_map") {
      expect_symbol("(");
      b.algebra = expect_ident().text;
      expect_symbol(")");
      expect_symbol("{");
      MomentBody body;
      while (!try_symbol("}")) {
        if (try_keyword("fiber")) {
          expect_symbol("{");
          while (!try_symbol("}")) body.fiber.push_back(parse_coord());
        } else if (try_keyword("omega")) {
          expect_symbol("[");
          int i = static_cast<int>(expect_int());
          expect_symbol(",");
          int j = static_cast<int>(expect_int());
          expect_symbol("]");
          expect_symbol("=");
          mpq_class v = expect_rational();
          expect_symbol(";");
          body.omega.push_back({i, j, v});
        } else if (try_keyword("alpha")) {
          expect_symbol("=");
          body.alpha = parse_expr();
          expect_symbol(";");
        } else if (try_keyword("mu")) {
          expect_symbol("[");
          size_t idx = static_cast<size_t>(expect_int());
          expect_symbol("]");
          expect_symbol("=");
          if (body.mu.size() < idx) body.mu.resize(idx);
          body.mu[idx - 1] = parse_expr();
          expect_symbol(";");
        } else {
          fail("expected fiber/omega/alpha/mu in a moment_map body");
        }
      }
      expect_symbol(";");
      b.moment = std::move(body);
    } else {
      throw ModelError("unknown bundle kind '" + b.kind + "'", k.line, k.col,
                       "kinds: orthogonal_module, linfty_module, linfty_ideal, moment_map, "
                       "point_fiber, cattaneo_rossi");
    }
    return b;
  }

  BVDecl parse_bv() {
    expect_keyword("bv");
    BVDecl b;
    b.name = expect_ident().text;
    expect_symbol("{");
    expect_keyword("fields", "bv bodies: fields { name : degree; ... } action = <expr>;");
    expect_symbol("{");
    while (!try_symbol("}")) {
      FieldDecl f;
      f.name = expect_ident().text;
      expect_symbol(":");
      f.degree = static_cast<int>(expect_int());
      expect_symbol(";");
      b.fields.push_back(f);
    }
    expect_keyword("action");
    expect_symbol("=");
    b.action = parse_expr();
    expect_symbol(";");
    expect_symbol("}");
    return b;
  }

  PreObsDecl parse_preobs() {
    expect_keyword("preobs");
    PreObsDecl p;
    p.name = expect_ident().text;
    expect_symbol("{");
    expect_keyword("ambient", "preobs bodies: ambient <target>; aux { ... } action = <expr>;");
    p.ambient = expect_ident().text;
    expect_symbol(";");
    expect_keyword("aux");
    expect_symbol("{");
    while (!try_symbol("}")) {
      FieldDecl f;
      f.name = expect_ident().text;
      expect_symbol(":");
      f.degree = static_cast<int>(expect_int());
      expect_symbol(";");
      p.aux.push_back(f);
    }
    expect_keyword("action");
    expect_symbol("=");
    p.action = parse_expr();
    expect_symbol(";");
    expect_symbol("}");
    return p;
  }

  QFiberDecl parse_qfiber() {
    expect_keyword("qfiber");
    QFiberDecl q;
    q.name = expect_ident().text;
    expect_symbol("=");
    expect_keyword("moment", "qfiber <name> = moment(<algebra>, <rep>);");
    expect_symbol("(");
    q.algebra = expect_ident().text;
    expect_symbol(",");
    q.rep = expect_ident().text;
    expect_symbol(")");
    expect_symbol(";");
    return q;
  }

  CheckDecl parse_check() {
    Token kw = lex_.next();  // check
    CheckDecl c;
    c.line = kw.line;
    c.col = kw.col;
    Token k = expect_ident();
    c.kind = k.text;
    if (c.kind == "target" || c.kind == "bundle" || c.kind == "cme" || c.kind == "qme" ||
        c.kind == "qfiber" || c.kind == "schouten") {
      c.subject = expect_ident().text;
    } else if (c.kind == "preobs") {
      c.subject = expect_ident().text;
      Token lvl = expect_ident();
      if (lvl.text != "classical" && lvl.text != "semiquantum" && lvl.text != "quantum")
        throw ModelError("unknown pre-observable level '" + lvl.text + "'", lvl.line, lvl.col,
                         "levels: classical, semiquantum, quantum");
      c.arg = lvl.text;
    } else if (c.kind == "psm_fhat" || c.kind == "point") {
      c.subject = expect_ident().text;
      c.arg = expect_ident().text;
    } else {
      throw ModelError("unknown check kind '" + c.kind + "'", k.line, k.col,
                       "kinds: target, bundle, cme, qme, preobs, qfiber, schouten, psm_fhat, point");
    }
    expect_symbol(";");
    return c;
  }

  PushforwardDecl parse_pushforward() {
    Token kw = lex_.next();  // pushforward
    PushforwardDecl p;
    p.line = kw.line;
    p.col = kw.col;
    p.preobs = expect_ident().text;
    expect_keyword("lagrangian", "pushforward <preobs> lagrangian fields|conjugates [swap k];");
    Token l = expect_ident();
    if (l.text != "fields" && l.text != "conjugates")
      throw ModelError("unknown lagrangian '" + l.text + "'", l.line, l.col,
                       "use 'fields' or 'conjugates'");
    p.lagrangian = l.text;
    if (try_keyword("swap")) p.swap_pair = static_cast<int>(expect_int());
    expect_symbol(";");
    return p;
  }

  // Expression grammar: expr := term (('+'|'-') term)*, term := factor
  // (('*'|'/') factor)*, factor := '-'? power, power := atom ('^' int)?.
  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    for (;;) {
      if (try_symbol("+")) {
        auto n = node(Expr::Kind::Add);
        n->args = {e, parse_term()};
        e = n;
      } else if (lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == "-") {
        lex_.next();
        auto n = node(Expr::Kind::Sub);
        n->args = {e, parse_term()};
        e = n;
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    for (;;) {
      if (try_symbol("*")) {
        auto n = node(Expr::Kind::Mul);
        n->args = {e, parse_factor()};
        e = n;
      } else if (try_symbol("/")) {
        auto n = node(Expr::Kind::Div);
        n->args = {e, parse_factor()};
        e = n;
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_factor() {
    if (try_symbol("-")) {
      auto n = node(Expr::Kind::Neg);
      n->args = {parse_factor()};
      return n;
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (try_symbol("^")) {
      auto n = node(Expr::Kind::Pow);
      n->args = {base};
      n->power = static_cast<int>(expect_int());
      if (n->power < 0) fail("negative exponent", "polynomials only; use positive powers");
      return n;
    }
    return base;
  }

  std::shared_ptr<Expr> node(Expr::Kind k) {
    auto n = std::make_shared<Expr>();
    n->kind = k;
    n->line = lex_.peek().line;
    n->col = lex_.peek().col;
    return n;
  }

  ExprPtr parse_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Number) {
      auto n = node(Expr::Kind::Number);
      n->number = mpq_class(lex_.next().text, 10);
      return n;
    }
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      lex_.next();
      ExprPtr e = parse_expr();
      expect_symbol(")");
      return e;
    }
    if (t.kind == Token::Kind::Symbol && t.text == "<") {
      auto n = node(Expr::Kind::Pair);
      lex_.next();
      n->args.push_back(parse_expr());
      expect_symbol(",");
      n->args.push_back(parse_expr());
      expect_symbol(">");
      return n;
    }
    if (t.kind == Token::Kind::Symbol && t.text == "[") {
      auto n = node(Expr::Kind::Bracket);
      lex_.next();
      n->args.push_back(parse_expr());
      expect_symbol(",");
      n->args.push_back(parse_expr());
      expect_symbol("]");
      return n;
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "i") {
        lex_.next();
        return node(Expr::Kind::Imaginary);
      }
      if (t.text == "d") {
        auto n = node(Expr::Kind::DeRham);
        lex_.next();
        expect_symbol("(");
        n->args.push_back(parse_expr());
        expect_symbol(")");
        return n;
      }
      if (t.text == "dd") {
        auto n = node(Expr::Kind::Deriv);
        lex_.next();
        expect_symbol("(");
        n->args.push_back(parse_expr());
        expect_symbol(",");
        n->name = expect_ident().text;
        expect_symbol(")");
        return n;
      }
      auto n = node(Expr::Kind::Ref);
      n->name = lex_.next().text;
      return n;
    }
    fail("expected an expression");
  }

  Lexer lex_;
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_expr_rec(std::ostringstream& os, const ExprPtr& e, int parent_prec) {
  int prec = precedence(e->kind);
  bool paren = prec < parent_prec;
  if (paren) os << "(";
  switch (e->kind) {
    case Expr::Kind::Number:
      os << e->number.get_str();
      break;
    case Expr::Kind::Imaginary:
      os << "i";
      break;
    case Expr::Kind::Ref:
      os << e->name;
      break;
    case Expr::Kind::Add:
      print_expr_rec(os, e->args[0], prec);
      os << " + ";
      print_expr_rec(os, e->args[1], prec + 1);
      break;
    case Expr::Kind::Sub:
      print_expr_rec(os, e->args[0], prec);
      os << " - ";
      print_expr_rec(os, e->args[1], prec + 1);
      break;
    case Expr::Kind::Neg:
      os << "-";
      print_expr_rec(os, e->args[0], prec);
      break;
    case Expr::Kind::Mul:
      print_expr_rec(os, e->args[0], prec);
      os << "*";
      print_expr_rec(os, e->args[1], prec + 1);
      break;
    case Expr::Kind::Div:
      print_expr_rec(os, e->args[0], prec);
      os << "/";
      print_expr_rec(os, e->args[1], prec + 1);
      break;
    case Expr::Kind::Pow:
      print_expr_rec(os, e->args[0], prec + 1);
      os << "^" << e->power;
      break;
    case Expr::Kind::Pair:
      os << "<";
      print_expr_rec(os, e->args[0], 0);
      os << ", ";
      print_expr_rec(os, e->args[1], 0);
      os << ">";
      break;
    case Expr::Kind::Bracket:
      os << "[";
      print_expr_rec(os, e->args[0], 0);
      os << ", ";
      print_expr_rec(os, e->args[1], 0);
      os << "]";
      break;
    case Expr::Kind::DeRham:
      os << "d(";
      print_expr_rec(os, e->args[0], 0);
      os << ")";
      break;
    case Expr::Kind::Deriv:
      os << "dd(";
      print_expr_rec(os, e->args[0], 0);
      os << ", " << e->name << ")";
      break;
  }
  if (paren) os << ")";
}

}  // namespace

ModelFile parse_model(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  print_expr_rec(os, e, 0);
  return os.str();
}

namespace {

void print_coord(std::ostringstream& os, const CoordDecl& c, const char* indent) {
  if (c.count > 0)
    os << indent << "coords " << c.name << "[" << c.count << "] : " << c.degree << ";\n";
  else
    os << indent << "coord " << c.name << " : " << c.degree << ";\n";
}

}  // namespace

std::string print_model(const ModelFile& m) {
  std::ostringstream os;
  for (const auto& st : m.order) {
    switch (st.kind) {
      case ModelFile::Statement::Kind::Algebra: {
        const auto& a = m.algebras[st.index];
        os << "algebra " << a.name << " = " << a.builtin;
        if (a.builtin == "abelian") os << "(" << a.abelian_dim << ")";
        if (!a.bumps.empty()) {
          os << " {\n";
          for (const auto& b : a.bumps)
            os << "  f[" << b.c << ", " << b.a << ", " << b.b << "] += " << b.v.get_str() << ";\n";
          os << "}";
        }
        os << ";\n";
        break;
      }
      case ModelFile::Statement::Kind::Space: {
        const auto& s = m.spaces[st.index];
        os << "space " << s.name << " {\n";
        for (const auto& c : s.coords) print_coord(os, c, "  ");
        os << "}\n";
        break;
      }
      case ModelFile::Statement::Kind::Rep: {
        const auto& r = m.reps[st.index];
        os << "rep " << r.name << " = " << r.kind << "(" << r.algebra;
        if (r.kind == "spin") os << ", " << r.two_j;
        os << ");\n";
        break;
      }
      case ModelFile::Statement::Kind::Let: {
        const auto& l = m.lets[st.index];
        os << "let " << l.name << " over " << l.over;
        if (l.degree) os << " degree " << *l.degree;
        os << " = " << print_expr(l.value) << ";\n";
        break;
      }
      case ModelFile::Statement::Kind::Target: {
        const auto& t = m.targets[st.index];
        os << "target " << t.name << " = " << t.kind;
        if (t.kind == "chern_simons")
          os << "(" << t.algebra << ")";
        else if (t.kind == "bf")
          os << "(" << t.algebra << ", " << t.D << ")";
        else {
          os << "(" << t.psm_dim << ") {\n";
          for (const auto& p : t.pi)
            os << "  pi[" << p.i << ", " << p.j << "] = " << print_expr(p.value) << ";\n";
          os << "}";
        }
        os << ";\n";
        break;
      }
      case ModelFile::Statement::Kind::Bundle: {
        const auto& b = m.bundles[st.index];
        os << "bundle " << b.name << " = " << b.kind;
        if (b.kind == "orthogonal_module" || b.kind == "linfty_module")
          os << "(" << b.algebra << ", " << b.rep << ", " << b.shift << ");\n";
        else if (b.kind == "linfty_ideal")
          os << "(" << b.algebra << ", " << b.rep << ");\n";
        else if (b.kind == "cattaneo_rossi")
          os << "(" << b.algebra << ", " << b.D << ");\n";
        else if (b.kind == "point_fiber")
          os << "(" << b.target << ", " << b.theta_name << ");\n";
        else {  // moment_map
          os << "(" << b.algebra << ") {\n  fiber {\n";
          for (const auto& c : b.moment->fiber) print_coord(os, c, "    ");
          os << "  }\n";
          for (const auto& w : b.moment->omega)
            os << "  omega[" << w.i << ", " << w.j << "] = " << w.v.get_str() << ";\n";
          if (b.moment->alpha) os << "  alpha = " << print_expr(b.moment->alpha) << ";\n";
          for (size_t k = 0; k < b.moment->mu.size(); ++k)
            if (b.moment->mu[k])
              os << "  mu[" << (k + 1) << "] = " << print_expr(b.moment->mu[k]) << ";\n";
          os << "};\n";
        }
        break;
      }
      case ModelFile::Statement::Kind::BV: {
        const auto& b = m.bvs[st.index];
        os << "bv " << b.name << " {\n  fields {\n";
        for (const auto& f : b.fields) os << "    " << f.name << " : " << f.degree << ";\n";
        os << "  }\n  action = " << print_expr(b.action) << ";\n}\n";
        break;
      }
      case ModelFile::Statement::Kind::PreObs: {
        const auto& p = m.preobs[st.index];
        os << "preobs " << p.name << " {\n  ambient " << p.ambient << ";\n  aux {\n";
        for (const auto& f : p.aux) os << "    " << f.name << " : " << f.degree << ";\n";
        os << "  }\n  action = " << print_expr(p.action) << ";\n}\n";
        break;
      }
      case ModelFile::Statement::Kind::QFiber: {
        const auto& q = m.qfibers[st.index];
        os << "qfiber " << q.name << " = moment(" << q.algebra << ", " << q.rep << ");\n";
        break;
      }
      case ModelFile::Statement::Kind::Check: {
        const auto& c = m.checks[st.index];
        os << "check " << c.kind << " " << c.subject;
        if (!c.arg.empty()) os << " " << c.arg;
        os << ";\n";
        break;
      }
      case ModelFile::Statement::Kind::Pushforward: {
        const auto& p = m.pushforwards[st.index];
        os << "pushforward " << p.preobs << " lagrangian " << p.lagrangian;
        if (p.swap_pair >= 0) os << " swap " << p.swap_pair;
        os << ";\n";
        break;
      }
    }
  }
  return os.str();
}

}  // namespace gobs
