#include "cmv/expr_parser.hpp"

#include "cmv/errors.hpp"

#include <cctype>
#include <optional>
#include <utility>

namespace cmv {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char ch = src[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", 0, col);
    }
    out.push_back({kind, std::string(1, ch), col});
    ++i;
  }
  out.push_back({Tok::End, "", src.size() + 1});
  return out;
}

// A parsed subexpression: a scalar, or a vector of basis coefficients.
struct Value {
  bool is_vector = false;
  ScalarExpr scalar;
  std::vector<ScalarExpr> vec;
};

class Parser {
 public:
  Parser(std::string_view src, const Chart& chart, std::span<const std::string> basis,
         bool allow_trig)
      : tokens_(tokenize(src)), chart_(chart), basis_(basis), allow_trig_(allow_trig) {}

  Value parse() {
    Value v = expression();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 0, peek().column); }
  [[noreturn]] static void fail_at(const std::string& msg, std::size_t col) {
    throw ParseError(msg, 0, col);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    advance();
  }

  Value zero_vector() const {
    Value v;
    v.is_vector = true;
    v.vec.assign(basis_.size(), ScalarExpr());
    return v;
  }

  // A scalar literal 0 may stand in for the zero vector.
  Value as_vector(const Value& v, std::size_t col) const {
    if (v.is_vector) return v;
    if (v.scalar.is_zero()) return zero_vector();
    fail_at("cannot mix scalars and vector fields in a sum", col);
  }

  Value expression() {
    Value lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token op = advance();
      Value rhs = term();
      if (lhs.is_vector || rhs.is_vector) {
        lhs = as_vector(lhs, op.column);
        rhs = as_vector(rhs, op.column);
        for (std::size_t i = 0; i < lhs.vec.size(); ++i) {
          if (op.kind == Tok::Plus) {
            lhs.vec[i] += rhs.vec[i];
          } else {
            lhs.vec[i] -= rhs.vec[i];
          }
        }
      } else if (op.kind == Tok::Plus) {
        lhs.scalar += rhs.scalar;
      } else {
        lhs.scalar -= rhs.scalar;
      }
    }
    return lhs;
  }

  Value term() {
    Value lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = advance();
      Value rhs = unary();
      if (op.kind == Tok::Star) {
        lhs = multiply(lhs, rhs, op.column);
      } else {
        if (rhs.is_vector) fail_at("cannot divide by a vector field", op.column);
        if (rhs.scalar.is_zero()) fail_at("division by zero", op.column);
        if (lhs.is_vector) {
          for (auto& c : lhs.vec) c /= rhs.scalar;
        } else {
          lhs.scalar /= rhs.scalar;
        }
      }
    }
    return lhs;
  }

  static Value multiply(const Value& a, const Value& b, std::size_t col) {
    if (a.is_vector && b.is_vector) fail_at("cannot multiply two vector fields", col);
    if (!a.is_vector && !b.is_vector) {
      Value v;
      v.scalar = a.scalar * b.scalar;
      return v;
    }
    Value v = a.is_vector ? a : b;
    const ScalarExpr& s = a.is_vector ? b.scalar : a.scalar;
    for (auto& c : v.vec) c *= s;
    return v;
  }

  Value unary() {
    if (peek().kind == Tok::Minus) {
      advance();
      Value v = unary();
      if (v.is_vector) {
        for (auto& c : v.vec) c = -c;
      } else {
        v.scalar = -v.scalar;
      }
      return v;
    }
    return power();
  }

  Value power() {
    Value base = primary();
    if (peek().kind == Tok::Caret) {
      const Token caret = advance();
      if (base.is_vector) fail_at("cannot raise a vector field to a power", caret.column);
      if (peek().kind != Tok::Number) fail("expected a nonnegative integer exponent");
      const Token& num = advance();
      if (num.text.size() > 4) fail_at("exponent too large", num.column);
      const int e = std::stoi(num.text);
      ScalarExpr result(1);
      for (int k = 0; k < e; ++k) result *= base.scalar;
      base.scalar = result;
    }
    return base;
  }

  Value primary() {
    const Token tok = peek();
    switch (tok.kind) {
      case Tok::Number: {
        advance();
        Value v;
        v.scalar = ScalarExpr(mpq_class(tok.text, 10));
        return v;
      }
      case Tok::LParen: {
        advance();
        Value v = expression();
        expect(Tok::RParen, "')'");
        return v;
      }
      case Tok::Ident:
        return identifier();
      default:
        if (tok.kind == Tok::End) fail("unexpected end of expression");
        fail("unexpected '" + tok.text + "'");
    }
  }

  Value identifier() {
    const Token tok = advance();
    if ((tok.text == "sin" || tok.text == "cos") && peek().kind == Tok::LParen) {
      if (!allow_trig_) fail_at("sin/cos require the trig extension", tok.column);
      advance();
      if (peek().kind != Tok::Ident) fail("sin/cos take a single coordinate");
      const Token arg = advance();
      auto idx = chart_.find(arg.text);
      if (!idx) fail_at("unknown coordinate '" + arg.text + "'", arg.column);
      expect(Tok::RParen, "')' after a single coordinate");
      Value v;
      v.scalar = tok.text == "sin" ? ScalarExpr::sine(*idx) : ScalarExpr::cosine(*idx);
      return v;
    }
    if (auto idx = chart_.find(tok.text)) {
      Value v;
      v.scalar = ScalarExpr::coordinate(*idx);
      return v;
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] == tok.text) {
        Value v = zero_vector();
        v.vec[i] = ScalarExpr(1);
        return v;
      }
    }
    fail_at("unknown identifier '" + tok.text + "'", tok.column);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Chart& chart_;
  std::span<const std::string> basis_;
  bool allow_trig_;
};

}  // namespace

ScalarExpr parse_scalar(std::string_view text, const Chart& chart, bool allow_trig) {
  Parser parser(text, chart, {}, allow_trig);
  return parser.parse().scalar;
}

std::vector<ScalarExpr> parse_linear_combination(std::string_view text, const Chart& chart,
                                                 std::span<const std::string> basis,
                                                 bool allow_trig) {
  Parser parser(text, chart, basis, allow_trig);
  Value v = parser.parse();
  if (v.is_vector) return v.vec;
  if (v.scalar.is_zero()) return std::vector<ScalarExpr>(basis.size());
  throw ParseError("expected a combination of frame fields", 0, 1);
}

}  // namespace cmv
