#include <mfour/error.hpp>
#include <mfour/parse.hpp>

#include <cctype>
#include <functional>
#include <optional>

namespace mfour {

namespace {

constexpr unsigned max_exponent = 256;

template <class Op>
class Parser {
 public:
  using AtomFn = std::function<std::optional<Op>(const std::string&)>;
  using ConstFn = std::function<Op(const Rational&)>;

  Parser(const std::string& text, AtomFn atom, ConstFn constant, std::string algebra)
      : text_(text), atom_(std::move(atom)), constant_(std::move(constant)), algebra_(std::move(algebra)) {}

  Op run() {
    skip();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    Op v = expr();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Op expr() {
    Op v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }

  Op term() {
    Op v = unary();
    while (eat('*')) v = v * unary();
    return v;
  }

  Op unary() {
    if (eat('-')) return -unary();
    return power();
  }

  Op power() {
    Op base = primary();
    if (!eat('^')) return base;
    skip();
    std::size_t at = pos_;
    if (at >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[at])))
      throw SyntaxError(at, "expected nonnegative integer exponent");
    BigInt e(digits());
    if (e > max_exponent) fail(ErrorCode::size_guard, "exponent above " + std::to_string(max_exponent));
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Op primary() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Op v = expr();
      if (!eat(')')) throw SyntaxError(pos_, "expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value{BigInt(digits())};
      std::size_t save = pos_;
      skip();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          throw SyntaxError(pos_, "expected denominator");
        std::size_t den_at = pos_;
        BigInt den(digits());
        if (den == 0) throw SyntaxError(den_at, "zero denominator");
        value /= Rational(den);
      } else {
        pos_ = save;
      }
      return constant_(value);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      if (auto v = atom_(name)) return *v;
      throw SyntaxError(start, "unknown atom '" + name + "' for " + algebra_);
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  const std::string& text_;
  AtomFn atom_;
  ConstFn constant_;
  std::string algebra_;
  std::size_t pos_ = 0;
};

// Index suffix of x<k> / dx<k>, 1-based; 0 when absent, -1 when malformed.
int index_suffix(const std::string& name, std::size_t from) {
  if (from == name.size()) return 0;
  if (name[from] == '0') return -1;
  int v = 0;
  for (std::size_t i = from; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i])) || v > 1000) return -1;
    v = v * 10 + (name[i] - '0');
  }
  return v;
}

}  // namespace

ShiftOp parse_shift(const std::string& text) {
  auto atom = [](const std::string& n) -> std::optional<ShiftOp> {
    if (n == "s") return ShiftOp::s();
    if (n == "T") return ShiftOp::T(1);
    if (n == "Ti") return ShiftOp::T(-1);
    return std::nullopt;
  };
  return Parser<ShiftOp>(text, atom, [](const Rational& c) { return ShiftOp(Poly(c)); }, "shift").run();
}

WeylOp parse_weyl(const std::string& text, int rank) {
  if (rank < 1) fail(ErrorCode::invalid_argument, "Weyl rank must be positive");
  auto atom = [rank](const std::string& n) -> std::optional<WeylOp> {
    bool is_d = n.rfind("dx", 0) == 0;
    if (!is_d && (n.empty() || n[0] != 'x')) return std::nullopt;
    int idx = index_suffix(n, is_d ? 2 : 1);
    if (idx < 0 || idx > rank || (idx == 0 && rank != 1)) return std::nullopt;
    int i = idx == 0 ? 0 : idx - 1;
    return is_d ? WeylOp::d(rank, i) : WeylOp::x(rank, i);
  };
  return Parser<WeylOp>(text, atom, [rank](const Rational& c) { return WeylOp::constant(rank, c); }, "weyl").run();
}

LaurentWeylOp parse_laurent(const std::string& text) {
  auto atom = [](const std::string& n) -> std::optional<LaurentWeylOp> {
    if (n == "x") return LaurentWeylOp::x(1);
    if (n == "xi") return LaurentWeylOp::x(-1);
    if (n == "dx") return LaurentWeylOp::d();
    return std::nullopt;
  };
  return Parser<LaurentWeylOp>(text, atom, [](const Rational& c) { return LaurentWeylOp::constant(c); }, "laurent-weyl")
      .run();
}

Operator parse_operator(const std::string& text, Algebra algebra, int rank) {
  switch (algebra) {
    case Algebra::shift: return parse_shift(text);
    case Algebra::weyl: return parse_weyl(text, rank);
    case Algebra::laurent_weyl: return parse_laurent(text);
  }
  fail(ErrorCode::invalid_argument, "unknown algebra");
}

}  // namespace mfour
