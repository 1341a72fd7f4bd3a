#include "rqa/expr.hpp"

#include <cctype>
#include <optional>

namespace rqa {

namespace {

struct Token {
  enum Kind { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
  std::string text;
  int pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    int pos = static_cast<int>(i_);
    if (i_ >= src_.size()) {
      tok_ = {Token::End, "", pos};
      return;
    }
    char c = src_[i_];
    auto one = [&](Token::Kind k) {
      ++i_;
      tok_ = {k, std::string(1, c), pos};
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      tok_ = {Token::Int, src_.substr(i_, j - i_), pos};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      if (j < src_.size() && src_[j] == '\'') ++j;  // primed names
      tok_ = {Token::Ident, src_.substr(i_, j - i_), pos};
      i_ = j;
      return;
    }
    switch (c) {
      case '+': one(Token::Plus); return;
      case '-': one(Token::Minus); return;
      case '*': one(Token::Star); return;
      case '^': one(Token::Caret); return;
      case '(': one(Token::LParen); return;
      case ')': one(Token::RParen); return;
      default:
        fail(errs::ParseError,
             "unexpected character '" + std::string(1, c) + "' at position " +
                 std::to_string(pos));
    }
  }

  const std::string& src_;
  size_t i_ = 0;
  Token tok_;
};

[[noreturn]] void parse_fail(const Token& t, const std::string& msg) {
  fail(errs::ParseError, msg + " at position " + std::to_string(t.pos));
}

// A parsed value: either a form of degree 0..2 over a ring, or a Weyl
// element (noncommuting mode).
struct Val {
  std::optional<DiffForm> form;
  std::optional<WeylElement> weyl;

  int degree() const { return form ? form->degree() : 0; }
};

class Parser {
 public:
  Parser(const std::string& src, RingPtr ring, WeylPtr weyl)
      : lex_(src), ring_(std::move(ring)), weyl_(std::move(weyl)) {}

  Val parse() {
    Val v = expr();
    if (lex_.peek().kind != Token::End) parse_fail(lex_.peek(), "trailing input");
    return v;
  }

 private:
  bool weyl_mode() const { return weyl_ != nullptr; }

  Val make_scalar(const TruncPoly& f) const {
    Val v;
    v.form = DiffForm::function(ring_, f);
    return v;
  }

  Val expr() {
    bool neg = false;
    if (lex_.peek().kind == Token::Minus) {
      lex_.take();
      neg = true;
    }
    Val acc = term();
    if (neg) acc = negate(acc);
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      Token op = lex_.take();
      Val rhs = term();
      if (op.kind == Token::Minus) rhs = negate(rhs);
      acc = add(acc, rhs, op);
    }
    return acc;
  }

  Val term() {
    Val acc = factor();
    while (true) {
      Token t = lex_.peek();
      bool starts_atom = t.kind == Token::Int || t.kind == Token::Ident ||
                         t.kind == Token::LParen;
      if (t.kind == Token::Star) {
        lex_.take();
        acc = mul(acc, factor(), t);
      } else if (starts_atom) {
        acc = mul(acc, factor(), t);
      } else {
        break;
      }
    }
    return acc;
  }

  Val factor() {
    Val base = atom();
    while (lex_.peek().kind == Token::Caret) {
      Token caret = lex_.take();
      Token t = lex_.peek();
      if (t.kind == Token::Int || t.kind == Token::Minus) {
        bool neg = t.kind == Token::Minus;
        if (neg) lex_.take();
        Token e = lex_.take();
        if (e.kind != Token::Int) parse_fail(e, "expected an integer exponent");
        int exp = std::stoi(e.text);
        base = power(base, neg ? -exp : exp, caret);
      } else if (t.kind == Token::Ident && !weyl_mode()) {
        // wedge of differentials
        Val rhs = atom();
        base = mul(base, rhs, caret);
      } else {
        parse_fail(t, "expected an exponent or differential after '^'");
      }
    }
    return base;
  }

  Val atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Int: {
        int v = std::stoi(t.text);
        if (weyl_mode()) {
          Val r;
          r.weyl = WeylElement::constant(weyl_, v);
          return r;
        }
        return make_scalar(TruncPoly::constant(ring_, v));
      }
      case Token::LParen: {
        Val v = expr();
        Token close = lex_.take();
        if (close.kind != Token::RParen) parse_fail(close, "expected ')'");
        return v;
      }
      case Token::Ident:
        return ident_atom(t);
      default:
        parse_fail(t, "expected a value");
    }
  }

  Val ident_atom(const Token& t) {
    const std::string& name = t.text;
    if (name == "h") {
      if (weyl_mode()) {
        Val r;
        r.weyl = WeylElement::h(weyl_);
        return r;
      }
      return make_scalar(TruncPoly::constant(ring_, hs_h(ring_->p, ring_->htrunc)));
    }
    if (weyl_mode()) {
      // x<i> / y<i> generators
      if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1) {
        int idx = -1;
        try {
          idx = std::stoi(name.substr(1)) - 1;
        } catch (...) {
        }
        if (idx >= 0 && idx < weyl_->n) {
          Val r;
          r.weyl = name[0] == 'x' ? WeylElement::x(weyl_, idx) : WeylElement::y(weyl_, idx);
          return r;
        }
      }
      parse_fail(t, "unknown generator '" + name + "'");
    }
    int vi = ring_->index_of(name);
    if (vi >= 0) return make_scalar(TruncPoly::variable(ring_, vi));
    if (name == "d" && lex_.peek().kind == Token::LParen) {
      lex_.take();
      Val inner = expr();
      Token close = lex_.take();
      if (close.kind != Token::RParen) parse_fail(close, "expected ')'");
      if (!inner.form || inner.degree() > 1) parse_fail(t, "d() needs a form of degree <= 1");
      Val r;
      r.form = d(*inner.form);
      return r;
    }
    if (name.size() > 1 && name[0] == 'd') {
      int di = ring_->index_of(name.substr(1));
      if (di >= 0) {
        Val r;
        r.form = DiffForm::d_coordinate(ring_, di);
        return r;
      }
    }
    parse_fail(t, "unknown name '" + name + "'");
  }

  Val negate(Val v) {
    if (v.weyl) {
      v.weyl = -*v.weyl;
      return v;
    }
    v.form = -*v.form;
    return v;
  }

  Val add(Val a, Val b, const Token& at) {
    if (weyl_mode()) {
      a.weyl = *a.weyl + *b.weyl;
      return a;
    }
    if (a.degree() != b.degree()) {
      // adding zero across degrees is fine (e.g. "0 + dx1")
      if (a.form->is_zero()) return b;
      if (b.form->is_zero()) return a;
      parse_fail(at, "cannot add forms of different degree");
    }
    a.form = *a.form + *b.form;
    return a;
  }

  Val mul(Val a, Val b, const Token& at) {
    if (weyl_mode()) {
      a.weyl = *a.weyl * *b.weyl;
      return a;
    }
    int da = a.degree(), db = b.degree();
    if (da + db > 2) parse_fail(at, "product exceeds degree 2");
    Val r;
    if (da == 0 && db == 0) {
      r.form = DiffForm::function(ring_, a.form->scalar() * b.form->scalar());
    } else if (da == 0) {
      r.form = b.form->scaled(a.form->scalar());
    } else if (db == 0) {
      r.form = a.form->scaled(b.form->scalar());
    } else {
      r.form = wedge(*a.form, *b.form);
    }
    return r;
  }

  Val power(Val a, int e, const Token& at) {
    if (weyl_mode()) {
      if (e < 0) parse_fail(at, "negative powers are not defined here");
      a.weyl = a.weyl->pow(e);
      return a;
    }
    if (a.degree() != 0) parse_fail(at, "only scalars take integer powers");
    TruncPoly f = a.form->scalar();
    TruncPoly r =
        e >= 0 ? f.pow(e) : f.invert_unit().pow(-e);
    a.form = DiffForm::function(ring_, r);
    return a;
  }

  Lexer lex_;
  RingPtr ring_;
  WeylPtr weyl_;
};

}  // namespace

TruncPoly parse_poly(const std::string& src, const RingPtr& ring) {
  Val v = Parser(src, ring, nullptr).parse();
  require(v.form && v.degree() == 0, errs::ParseError, "expected a scalar expression");
  return v.form->scalar();
}

DiffForm parse_form(const std::string& src, const RingPtr& ring) {
  Val v = Parser(src, ring, nullptr).parse();
  require(v.form.has_value(), errs::ParseError, "expected a form expression");
  return *v.form;
}

WeylElement parse_weyl(const std::string& src, const WeylPtr& W) {
  Val v = Parser(src, nullptr, W).parse();
  require(v.weyl.has_value(), errs::ParseError, "expected a Weyl expression");
  return *v.weyl;
}

}  // namespace rqa
