#include "paramech/dsl.hpp"

#include <cctype>
#include <cmath>
#include <regex>

#include "json.hpp"

namespace paramech {

namespace {

using nlohmann::json;

constexpr int kMaxDepth = 256;
constexpr int kMaxExponent = 64;

enum class Tok { Number, Ident, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() && digit(pos_ + 1))) {
      t.kind = Tok::Number;
      t.text = number();
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        t.text += advance();
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      t.kind = Tok::Op;
      t.text = advance();
    } else {
      throw ParseError(line_, col_, "unexpected character", std::string(1, c));
    }
    return t;
  }

 private:
  bool digit(std::size_t p) const { return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p])); }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string number() {
    std::string s;
    while (digit(pos_)) s += advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      s += advance();
      while (digit(pos_)) s += advance();
    }
    // An exponent only when digits follow, so "2e" stays a number and an identifier.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (digit(p)) {
        while (pos_ < p) s += advance();
        while (digit(pos_)) s += advance();
      }
    }
    return s;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_builtin(const std::string& name) { return builtin_from_name(name).has_value(); }

/// Matches z<i> / zb<i>; returns the index and whether it is a conjugate.
std::optional<std::pair<long, bool>> coordinate_name(const std::string& name) {
  static const std::regex re("(zb|z)([0-9]+)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) return std::nullopt;
  const std::string digits = m[2].str();
  long i = digits.size() > 6 ? 1000000 : std::stol(digits);
  return std::make_pair(i, m[1].str() == "zb");
}

class Parser {
 public:
  Parser(std::string_view src, int dim, const std::set<std::string>& params)
      : lex_(src), dim_(dim), params_(params) {
    tok_ = lex_.next();
  }

  Expr parse() {
    Expr e = sum();
    if (tok_.kind != Tok::End) fail("unexpected token");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(tok_.line, tok_.col, message, tok_.text); }
  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(at.line, at.col, message, at.text);
  }

  bool is_op(const char* op) const { return tok_.kind == Tok::Op && tok_.text == op; }

  Token take() {
    Token t = tok_;
    tok_ = lex_.next();
    return t;
  }

  void expect(const char* op) {
    if (!is_op(op)) fail(std::string("expected '") + op + "'");
    take();
  }

  struct Depth {
    explicit Depth(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) p_.fail("expression nested too deeply");
    }
    ~Depth() { --p_.depth_; }
    Parser& p_;
  };

  /// Runs an algebraic step, reporting library errors (0^-1, 1/0) at `at`.
  template <class F>
  Expr guarded(const Token& at, F&& f) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }

  Expr sum() {
    Depth guard(*this);
    Expr e = product();
    while (is_op("+") || is_op("-")) {
      Token op = take();
      Expr rhs = product();
      e = op.text == "+" ? e + rhs : e - rhs;
    }
    return e;
  }

  Expr product() {
    Expr e = unary();
    while (is_op("*") || is_op("/")) {
      Token op = take();
      Expr rhs = unary();
      if (op.text == "/" && rhs.is_zero()) fail(op, "division by zero");
      e = op.text == "*" ? e * rhs : guarded(op, [&] { return e / rhs; });
    }
    return e;
  }

  Expr unary() {
    Depth guard(*this);
    if (is_op("-")) {
      take();
      return -unary();
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!is_op("^")) return base;
    Token op = take();
    long k = exponent();
    if (std::abs(k) > kMaxExponent) fail(op, "exponent out of range");
    if (k < 0 && base.is_zero()) fail(op, "division by zero");
    return guarded(op, [&] { return pow(base, static_cast<int>(k)); });
  }

  /// ['-'] (integer | '(' exponent ')') ['^' exponent], folded right to left.
  long exponent() {
    Depth guard(*this);
    bool negative = false;
    if (is_op("-")) {
      take();
      negative = true;
    }
    long base;
    if (is_op("(")) {
      take();
      base = exponent();
      expect(")");
    } else if (tok_.kind == Tok::Number) {
      Token t = take();
      if (t.text.find_first_not_of("0123456789") != std::string::npos) fail(t, "exponent must be an integer");
      if (t.text.size() > 4) fail(t, "exponent out of range");
      base = std::stol(t.text);
    } else {
      fail("expected an integer exponent");
    }
    if (is_op("^")) {
      Token op = take();
      long k = exponent();
      if (k < 0 && std::abs(base) != 1) fail(op, "exponent must be an integer");
      long r = 1;
      for (long i = 0; i < std::abs(k); ++i) {
        r *= base;
        if (std::abs(r) > kMaxExponent) fail(op, "exponent out of range");
      }
      base = r;
    }
    return negative ? -base : base;
  }

  Expr atom() {
    if (tok_.kind == Tok::Number) {
      Token t = take();
      return guarded(t, [&] { return Expr(ExactPara(rational_from_decimal(t.text), Rational(0))); });
    }
    if (is_op("(")) {
      take();
      Expr e = sum();
      expect(")");
      return e;
    }
    if (tok_.kind != Tok::Ident) fail(tok_.kind == Tok::End ? "unexpected end of input" : "expected an operand");
    Token t = take();
    if (t.text == "j") return Expr::j();
    if (t.text == "t") return Expr(Symbol::time());
    if (auto f = builtin_from_name(t.text)) {
      if (!is_op("(")) fail("expected '(' after " + t.text);
      take();
      Expr arg = sum();
      expect(")");
      return Expr::apply(*f, std::move(arg));
    }
    if (auto c = coordinate_name(t.text)) {
      if (c->first < 1 || c->first > dim_)
        fail(t, "coordinate index out of range (dimension " + std::to_string(dim_) + ")");
      int i = static_cast<int>(c->first);
      return Expr(c->second ? Symbol::zb(i) : Symbol::z(i));
    }
    if (params_.count(t.text)) return Expr(Symbol::param(t.text));
    fail(t, "undeclared symbol");
  }

  Lexer lex_;
  int dim_;
  const std::set<std::string>& params_;
  Token tok_;
  int depth_ = 0;
};

// ---- model documents ---------------------------------------------------------------

std::string join_path(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

void reject_unknown_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ModelError(join_path(path, it.key()), "unknown key");
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ModelError(join_path(path, key), "missing required key");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ModelError(path, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) throw ModelError(path, "expected a finite number");
  return x;
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) throw ModelError(path, "expected a string");
  return v.get<std::string>();
}

bool reserved_name(const std::string& name) {
  return name == "j" || name == "t" || is_builtin(name) || coordinate_name(name).has_value();
}

ExactPara param_value(const json& v, const std::string& path) {
  if (v.is_number()) return ExactPara(rational_from_double(number(v, path)), Rational(0));
  if (v.is_string()) {
    try {
      return parse_constant(v.get<std::string>());
    } catch (const Error& e) {
      throw ModelError(path, e.what());
    }
  }
  if (v.is_array() && v.size() == 2)
    return ExactPara(rational_from_double(number(v[0], path + "[0]")), rational_from_double(number(v[1], path + "[1]")));
  throw ModelError(path, "expected a number, a [re, im] pair or a constant expression string");
}

json param_json(const ExactPara& v) {
  auto exact_double = [](const Rational& q) { return rational_from_double(q.get_d()) == q; };
  if (exact_double(v.re()) && exact_double(v.im())) {
    if (v.im() == 0) return v.re().get_d();
    return json::array({v.re().get_d(), v.im().get_d()});
  }
  return to_string(v);
}

}  // namespace

Expr parse_expression(std::string_view src, int dim, const std::set<std::string>& params) {
  return Parser(src, dim, params).parse();
}

ExactPara parse_constant(std::string_view src) {
  Expr e = parse_expression(src, 0);
  if (!free_symbols(e).empty()) throw UsageError("not a constant: '" + std::string(src) + "'");
  return evaluate(e, Environment<Rational>{});
}

LagrangianModel ModelDocument::lagrangian() const {
  if (kind != ModelKind::Lagrangian) throw UsageError("model is not Lagrangian");
  return {dim, expr, params, identify_conjugate_velocity};
}

HamiltonianModel ModelDocument::hamiltonian() const {
  if (kind != ModelKind::Hamiltonian) throw UsageError("model is not Hamiltonian");
  return {dim, expr, params};
}

ModelDocument parse_model(std::string_view doc) {
  json root;
  try {
    root = json::parse(doc);
  } catch (const json::parse_error& e) {
    throw ModelError("", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ModelError("", "model document must be a JSON object");
  reject_unknown_keys(root, "",
                      {"kind", "dim", "function", "params", "initial", "time", "integrator", "rtol", "output",
                       "identify_conjugate_velocity"});

  ModelDocument d;
  std::string kind = text(require(root, "", "kind"), "kind");
  if (kind == "lagrangian") {
    d.kind = ModelKind::Lagrangian;
  } else if (kind == "hamiltonian") {
    d.kind = ModelKind::Hamiltonian;
  } else {
    throw ModelError("kind", "expected \"lagrangian\" or \"hamiltonian\"");
  }

  const json& dim = require(root, "", "dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 1 || dim.get<long long>() > 64)
    throw ModelError("dim", "expected an integer in [1, 64]");
  d.dim = static_cast<int>(dim.get<long long>());

  if (auto it = root.find("params"); it != root.end()) {
    if (!it->is_object()) throw ModelError("params", "expected an object");
    for (auto p = it->begin(); p != it->end(); ++p) {
      std::string path = "params." + p.key();
      static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
      if (!std::regex_match(p.key(), ident)) throw ModelError(path, "parameter name is not an identifier");
      if (reserved_name(p.key())) throw ModelError(path, "parameter name is reserved");
      d.params[p.key()] = param_value(p.value(), path);
    }
  }

  d.function = text(require(root, "", "function"), "function");
  std::set<std::string> names;
  for (const auto& [name, v] : d.params) names.insert(name);
  try {
    d.expr = parse_expression(d.function, d.dim, names);
  } catch (const ParseError& e) {
    throw ModelError("function", e.what());
  }

  if (auto it = root.find("initial"); it != root.end()) {
    if (!it->is_array()) throw ModelError("initial", "expected an array of [z_re, z_im, zb_re, zb_im]");
    if (static_cast<int>(it->size()) != d.dim)
      throw ModelError("initial", "expected " + std::to_string(d.dim) + " entries, got " + std::to_string(it->size()));
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string path = "initial[" + std::to_string(i) + "]";
      const json& q = (*it)[i];
      if (!q.is_array() || q.size() != 4) throw ModelError(path, "expected [z_re, z_im, zb_re, zb_im]");
      InitialPair v;
      for (std::size_t k = 0; k < 4; ++k) v[k] = number(q[k], path + "[" + std::to_string(k) + "]");
      d.initial.push_back(v);
    }
  }

  if (auto it = root.find("time"); it != root.end()) {
    if (!it->is_object()) throw ModelError("time", "expected {t0, t1, dt}");
    reject_unknown_keys(*it, "time", {"t0", "t1", "dt"});
    TimeSpan ts;
    ts.t0 = number(require(*it, "time", "t0"), "time.t0");
    ts.t1 = number(require(*it, "time", "t1"), "time.t1");
    ts.dt = number(require(*it, "time", "dt"), "time.dt");
    if (!(ts.dt > 0)) throw ModelError("time.dt", "must be positive");
    if (ts.t1 < ts.t0) throw ModelError("time.t1", "must not precede time.t0");
    d.time = ts;
  }

  if (auto it = root.find("integrator"); it != root.end()) {
    d.integrator = text(*it, "integrator");
    if (d.integrator != "rk4" && d.integrator != "rk45") throw ModelError("integrator", "expected \"rk4\" or \"rk45\"");
  }
  if (auto it = root.find("rtol"); it != root.end()) {
    d.rtol = number(*it, "rtol");
    if (!(d.rtol > 0)) throw ModelError("rtol", "must be positive");
  }
  if (auto it = root.find("output"); it != root.end()) {
    d.output = text(*it, "output");
    if (d.output.empty()) throw ModelError("output", "must not be empty");
  }
  if (auto it = root.find("identify_conjugate_velocity"); it != root.end()) {
    if (!it->is_boolean()) throw ModelError("identify_conjugate_velocity", "expected true or false");
    d.identify_conjugate_velocity = it->get<bool>();
  }
  return d;
}

std::string to_json(const ModelDocument& d, int indent) {
  json out = json::object();
  out["kind"] = d.kind == ModelKind::Lagrangian ? "lagrangian" : "hamiltonian";
  out["dim"] = d.dim;
  out["function"] = d.function;
  if (!d.params.empty()) {
    json p = json::object();
    for (const auto& [name, v] : d.params) p[name] = param_json(v);
    out["params"] = p;
  }
  if (!d.initial.empty()) {
    json init = json::array();
    for (const InitialPair& q : d.initial) init.push_back(json::array({q[0], q[1], q[2], q[3]}));
    out["initial"] = init;
  }
  if (d.time) out["time"] = {{"t0", d.time->t0}, {"t1", d.time->t1}, {"dt", d.time->dt}};
  out["integrator"] = d.integrator;
  out["rtol"] = d.rtol;
  out["output"] = d.output;
  out["identify_conjugate_velocity"] = d.identify_conjugate_velocity;
  return out.dump(indent);
}

}  // namespace paramech
