#include <sstream>

#include "paramech/expr.hpp"

namespace paramech {

namespace {

enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

struct Piece {
  std::string text;
  int prec;
};

const char* channel_suffix(Channel ch) {
  switch (ch) {
    case Channel::Plus: return "+";
    case Channel::Minus: return "-";
    default: return "";
  }
}

bool is_negative(const ExactPara& c) { return c.re() < 0 || (c.re() == 0 && c.im() < 0); }

ExactPara leading_coefficient(const Expr& t) {
  if (t.kind() == Expr::Kind::Const) return t.value();
  if (t.kind() == Expr::Kind::Product && t.args()[0].kind() == Expr::Kind::Const) return t.args()[0].value();
  return ExactPara::one();
}

// Plain-text and LaTeX renderers share the layout logic and differ in tokens.
struct Style {
  bool latex = false;

  std::string symbol(const Symbol& s) const {
    const char* ch = channel_suffix(s.channel);
    std::string idx = std::to_string(s.index);
    if (!latex) {
      switch (s.kind) {
        case Symbol::Kind::Coordinate: return "z" + idx + ch;
        case Symbol::Kind::Conjugate: return "zb" + idx + ch;
        case Symbol::Kind::Time: return "t";
        case Symbol::Kind::Parameter: return s.name + ch;
        case Symbol::Kind::Unknown: return s.name + idx + ch;
        case Symbol::Kind::Velocity: return "dz" + idx + ch + "/dt";
        case Symbol::Kind::ConjugateVelocity: return "dzb" + idx + ch + "/dt";
      }
      return "?";
    }
    std::string sup = *ch ? std::string("^{") + ch + "}" : std::string();
    switch (s.kind) {
      case Symbol::Kind::Coordinate: return "z" + sup + "_{" + idx + "}";
      case Symbol::Kind::Conjugate: return "\\bar{z}" + sup + "_{" + idx + "}";
      case Symbol::Kind::Time: return "t";
      case Symbol::Kind::Parameter: return (s.name.size() == 1 ? s.name : "\\mathrm{" + s.name + "}") + sup;
      case Symbol::Kind::Unknown: {
        std::string base = s.name == "xi" ? "\\xi" : s.name == "xib" ? "\\bar{\\xi}" : s.name == "Zb" ? "\\bar{Z}" : s.name;
        return base + "^{" + idx + ch + "}";
      }
      case Symbol::Kind::Velocity: return "\\dot{z}" + sup + "_{" + idx + "}";
      case Symbol::Kind::ConjugateVelocity: return "\\dot{\\bar{z}}" + sup + "_{" + idx + "}";
    }
    return "?";
  }

  std::string rational(const Rational& q) const {
    if (!latex || q.get_den() == 1) return to_string(q);
    std::string sign = q < 0 ? "-" : "";
    mpz_class num = abs(q.get_num());
    return sign + "\\frac{" + num.get_str() + "}{" + q.get_den().get_str() + "}";
  }

  std::string j() const { return latex ? "\\mathbf{j}" : "j"; }
  std::string times() const { return latex ? " " : "*"; }
  std::string open() const { return latex ? "\\left(" : "("; }
  std::string close() const { return latex ? "\\right)" : ")"; }

  Piece constant(const ExactPara& c) const {
    const Rational& re = c.re();
    const Rational& im = c.im();
    if (im == 0) {
      bool frac = re.get_den() != 1;
      if (re < 0) return {rational(re), kUnary};
      return {rational(re), frac && !latex ? kProduct : kAtom};
    }
    std::string jpart;
    int jprec = kAtom;
    if (im == 1 || im == -1) {
      jpart = j();
    } else {
      Rational a = abs(im);
      jpart = rational(a) + times() + j();
      jprec = kProduct;
    }
    if (re == 0) {
      if (im < 0) return {"-" + jpart, kUnary};
      return {jpart, jprec};
    }
    return {rational(re) + (im < 0 ? " - " : " + ") + jpart, kSum};
  }

  std::string wrap(const Piece& p, int min_prec) const {
    if (p.prec >= min_prec) return p.text;
    return open() + p.text + close();
  }

  Piece product(const Expr& e) const {
    ExactPara coeff = ExactPara::one();
    std::vector<Piece> num;
    std::vector<Piece> den;
    for (const Expr& f : e.args()) {
      if (f.kind() == Expr::Kind::Const) {
        coeff *= f.value();
      } else if (f.kind() == Expr::Kind::Power && f.exponent() < 0) {
        den.push_back(-f.exponent() == 1 ? render(f.args()[0])
                                         : power_piece(f.args()[0], -f.exponent()));
      } else {
        num.push_back(render(f));
      }
    }
    std::string text;
    if (num.empty()) {
      text = wrap(constant(coeff), kProduct);
    } else {
      if (coeff == -ExactPara::one()) {
        text = "-";
      } else if (coeff != ExactPara::one()) {
        Piece c = constant(coeff);
        text = (c.prec == kSum ? wrap(c, kProduct) : c.text) + times();
      }
      for (std::size_t i = 0; i < num.size(); ++i) {
        if (i) text += times();
        text += wrap(num[i], kProduct + 1);
      }
    }
    if (den.empty()) return {text, kProduct};
    std::string d;
    if (den.size() == 1) {
      d = den[0].text;
      if (!latex) d = wrap(den[0], kProduct + 1);
    } else {
      for (std::size_t i = 0; i < den.size(); ++i) {
        if (i) d += times();
        d += wrap(den[i], kProduct + 1);
      }
      if (!latex) d = open() + d + close();
    }
    if (latex) {
      bool neg = !text.empty() && text[0] == '-';
      std::string n = neg ? text.substr(1) : text;
      if (n.empty()) n = "1";
      return {std::string(neg ? "-" : "") + "\\frac{" + n + "}{" + d + "}", kProduct};
    }
    if (text == "-") text = "-1";
    return {text + "/" + d, kProduct};
  }

  Piece power_piece(const Expr& base, int k) const {
    Piece b = render(base);
    std::string exp = latex ? "^{" + std::to_string(k) + "}" : "^" + std::to_string(k);
    return {wrap(b, kAtom) + exp, kPower};
  }

  Piece render(const Expr& e) const {
    switch (e.kind()) {
      case Expr::Kind::Const: return constant(e.value());
      case Expr::Kind::Var: {
        const Symbol& s = e.symbol();
        bool slash = !latex && (s.kind == Symbol::Kind::Velocity || s.kind == Symbol::Kind::ConjugateVelocity);
        return {symbol(s), slash ? kProduct : kAtom};
      }
      case Expr::Kind::Apply: {
        std::string name = builtin_name(e.builtin());
        if (latex) name = "\\" + name;
        return {name + open() + render(e.args()[0]).text + close(), kAtom};
      }
      case Expr::Kind::Power: {
        int k = e.exponent();
        if (k >= 0) return power_piece(e.args()[0], k);
        Piece d = k == -1 ? render(e.args()[0]) : power_piece(e.args()[0], -k);
        if (latex) return {"\\frac{1}{" + d.text + "}", kProduct};
        return {"1/" + wrap(d, kProduct + 1), kProduct};
      }
      case Expr::Kind::Product: return product(e);
      case Expr::Kind::Quotient: {
        Piece a = render(e.args()[0]);
        Piece b = render(e.args()[1]);
        if (latex) return {"\\frac{" + a.text + "}{" + b.text + "}", kProduct};
        return {wrap(a, kProduct) + "/" + wrap(b, kProduct + 1), kProduct};
      }
      case Expr::Kind::Sum: {
        std::string text;
        bool first = true;
        for (const Expr& t : e.args()) {
          bool canonical_term = t.kind() == Expr::Kind::Const || t.kind() == Expr::Kind::Product;
          if (!first && canonical_term && is_negative(leading_coefficient(t))) {
            text += " - " + wrap(render(-t), kSum + 1);
          } else {
            if (!first) text += " + ";
            Piece p = render(t);
            text += first ? p.text : wrap(p, kSum);
          }
          first = false;
        }
        return {text, kSum};
      }
    }
    return {"?", kAtom};
  }
};

}  // namespace

std::string to_string(const Symbol& s) { return Style{false}.symbol(s); }

std::string to_string(const Expr& e) { return Style{false}.render(e).text; }

std::string to_latex(const Expr& e) { return Style{true}.render(e).text; }

}  // namespace paramech
