#include "bungee/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace bungee {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <class T>
NodePtr make(T payload) {
  return std::make_shared<const Node>(Node{std::move(payload)});
}

NodePtr variable_node() {
  static const NodePtr z = make(node::Variable{});
  return z;
}

// ---------------------------------------------------------------- lexing

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::size_t pos;  // 0-based
  std::string_view text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, src_.size(), {}});
        return out;
      }
      const char c = src_[i_];
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && i_ + 1 < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
        out.push_back(number());
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = i_;
        while (i_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
          ++i_;
        out.push_back({Tok::Ident, start, src_.substr(start, i_ - start)});
      } else {
        Tok kind;
        switch (c) {
          case '+': kind = Tok::Plus; break;
          case '-': kind = Tok::Minus; break;
          case '*': kind = Tok::Star; break;
          case '/': kind = Tok::Slash; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          case ',': kind = Tok::Comma; break;
          default:
            throw ParseError(i_ + 1, "expression",
                             std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, i_, src_.substr(i_, 1)});
        ++i_;
      }
    }
  }

 private:
  void skip_space() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  bool digit_at(std::size_t k) const {
    return k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]));
  }

  Token number() {
    const std::size_t start = i_;
    while (digit_at(i_)) ++i_;
    if (i_ < src_.size() && src_[i_] == '.') {
      ++i_;
      while (digit_at(i_)) ++i_;
    }
    // An exponent only when digits follow; otherwise `e` is left for the
    // identifier lexer (and then rejected as juxtaposition).
    if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
      std::size_t k = i_ + 1;
      if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
      if (digit_at(k)) {
        i_ = k;
        while (digit_at(i_)) ++i_;
      }
    }
    const std::string_view text = src_.substr(start, i_ - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
      throw ParseError(start + 1, "number", "numeric literal out of range");
    return {Tok::Number, start, text, value};
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------- parsing

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  NodePtr run() {
    NodePtr e = expr();
    if (peek().kind == Tok::RParen) fail("operator or end of input", "unmatched ')'");
    if (peek().kind != Tok::End)
      fail("operator or end of input", "unexpected " + describe(peek()) + " (multiplication must be explicit)");
    return e;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& advance() { return toks_[k_++]; }

  [[noreturn]] void fail(const std::string& expected, const std::string& msg) const {
    throw ParseError(peek().pos + 1, expected, msg);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail(what, std::string("expected \"") + what + "\" but found " + describe(peek()));
    ++k_;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const BinaryOp op = advance().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make(node::Binary{op, lhs, term()});
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const BinaryOp op = advance().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      lhs = make(node::Binary{op, lhs, factor()});
    }
    return lhs;
  }

  NodePtr factor() {
    if (peek().kind == Tok::Minus) {
      ++k_;
      return make(node::Negate{factor()});
    }
    return atom();
  }

  NodePtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        ++k_;
        return make(node::Constant{Complex(t.number, 0.0)});
      case Tok::LParen: {
        ++k_;
        NodePtr inner = expr();
        expect(Tok::RParen, ")");
        return inner;
      }
      case Tok::Ident:
        return identifier();
      default:
        fail("expression", "expected an expression but found " + describe(t));
    }
  }

  NodePtr identifier() {
    const Token& t = advance();
    const std::string_view name = t.text;
    if (name == "z") return variable_node();
    if (name == "i") return make(node::Named{NamedConstant::I});
    if (name == "pi") return make(node::Named{NamedConstant::Pi});
    if (name == "e") return make(node::Named{NamedConstant::E});

    std::optional<UnaryFn> fn;
    if (name == "exp") fn = UnaryFn::Exp;
    if (name == "sin") fn = UnaryFn::Sin;
    if (name == "cos") fn = UnaryFn::Cos;
    if (fn) {
      expect(Tok::LParen, "(");
      NodePtr arg = expr();
      expect(Tok::RParen, ")");
      return make(node::Call{*fn, arg});
    }
    if (name == "pow") {
      expect(Tok::LParen, "(");
      NodePtr base = expr();
      expect(Tok::Comma, ",");
      const int n = exponent();
      expect(Tok::RParen, ")");
      return make(node::Power{base, n});
    }
    --k_;
    fail("expression", "unknown identifier '" + std::string(name) + "'");
  }

  int exponent() {
    const Token& t = peek();
    constexpr const char* kExpected = "positive integer";
    if (t.kind != Tok::Number)
      fail(kExpected, "exponent must be a positive integer literal");
    for (char c : t.text)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        fail(kExpected, "exponent must be a positive integer literal");
    int n = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
    if (ec != std::errc() || n < 1) fail(kExpected, "exponent must be a positive integer literal");
    ++k_;
    return n;
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
};

// ---------------------------------------------------------------- formatting

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecAtom = 3;

struct Rendered {
  std::string text;
  int prec;
};

std::string paren_if(const Rendered& r, bool wrap) {
  return wrap ? "(" + r.text + ")" : r.text;
}

Rendered render(const Node& n, const std::string& var);

Rendered render_constant(Complex c) {
  if (c.imag() == 0.0) {
    if (std::signbit(c.real())) return {"(" + format_number(c.real()) + ")", kPrecAtom};
    return {format_number(c.real()), kPrecAtom};
  }
  std::string s = "(" + format_number(c.real());
  if (std::signbit(c.imag()))
    s += "-" + format_number(-c.imag());
  else
    s += "+" + format_number(c.imag());
  s += "*i)";
  return {s, kPrecAtom};
}

Rendered render(const Node& n, const std::string& var) {
  return std::visit(
      Overloaded{
          [&](const node::Variable&) { return Rendered{var, kPrecAtom}; },
          [&](const node::Constant& c) { return render_constant(c.value); },
          [&](const node::Named& c) {
            switch (c.which) {
              case NamedConstant::Pi: return Rendered{"pi", kPrecAtom};
              case NamedConstant::E: return Rendered{"e", kPrecAtom};
              case NamedConstant::I: break;
            }
            return Rendered{"i", kPrecAtom};
          },
          [&](const node::Negate& u) {
            const Rendered r = render(*u.operand, var);
            return Rendered{"-" + paren_if(r, r.prec < kPrecAtom), kPrecAtom};
          },
          [&](const node::Binary& b) {
            const int prec = (b.op == BinaryOp::Add || b.op == BinaryOp::Sub) ? kPrecAdd : kPrecMul;
            const char* sym = "+";
            switch (b.op) {
              case BinaryOp::Add: sym = "+"; break;
              case BinaryOp::Sub: sym = "-"; break;
              case BinaryOp::Mul: sym = "*"; break;
              case BinaryOp::Div: sym = "/"; break;
            }
            const Rendered l = render(*b.lhs, var);
            const Rendered r = render(*b.rhs, var);
            return Rendered{paren_if(l, l.prec < prec) + sym + paren_if(r, r.prec <= prec), prec};
          },
          [&](const node::Power& p) {
            return Rendered{"pow(" + render(*p.base, var).text + "," + std::to_string(p.exponent) + ")",
                            kPrecAtom};
          },
          [&](const node::Call& c) {
            const char* name = c.fn == UnaryFn::Exp ? "exp" : c.fn == UnaryFn::Sin ? "sin" : "cos";
            return Rendered{std::string(name) + "(" + render(*c.arg, var).text + ")", kPrecAtom};
          },
          [&](const node::Apply& a) {
            const std::string inner = "(" + render(*a.inner, var).text + ")";
            return render(*a.outer, inner);
          },
      },
      n.data);
}

// ---------------------------------------------------------------- evaluation

inline bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

class Evaluator {
 public:
  enum class Event { None, Infinity, Pole };

  // Returns false when an event was raised; the event is then recorded.
  bool eval(const Node& n, Complex z, Complex& out) {
    bool ok = std::visit(
        Overloaded{
            [&](const node::Variable&) {
              out = z;
              return true;
            },
            [&](const node::Constant& c) {
              out = c.value;
              return true;
            },
            [&](const node::Named& c) {
              switch (c.which) {
                case NamedConstant::Pi: out = Complex(std::numbers::pi, 0.0); break;
                case NamedConstant::E: out = Complex(std::numbers::e, 0.0); break;
                case NamedConstant::I: out = Complex(0.0, 1.0); break;
              }
              return true;
            },
            [&](const node::Negate& u) {
              if (!eval(*u.operand, z, out)) return false;
              out = -out;
              return true;
            },
            [&](const node::Binary& b) {
              Complex l, r;
              if (!eval(*b.lhs, z, l) || !eval(*b.rhs, z, r)) return false;
              switch (b.op) {
                case BinaryOp::Add: out = l + r; break;
                case BinaryOp::Sub: out = l - r; break;
                case BinaryOp::Mul: out = mul(l, r); break;
                case BinaryOp::Div:
                  if (r.real() == 0.0 && r.imag() == 0.0) return raise(Event::Pole, n);
                  out = l / r;
                  break;
              }
              return true;
            },
            [&](const node::Power& p) {
              Complex base;
              if (!eval(*p.base, z, base)) return false;
              Complex acc(1.0, 0.0);
              for (int e = p.exponent; e > 0; e >>= 1) {
                if (e & 1) acc = mul(acc, base);
                if (e > 1) base = mul(base, base);
              }
              out = acc;
              return true;
            },
            [&](const node::Call& c) {
              Complex a;
              if (!eval(*c.arg, z, a)) return false;
              switch (c.fn) {
                case UnaryFn::Exp:
                  if (a.real() > kExpArgumentLimit) return raise(Event::Infinity, n);
                  out = std::exp(a);
                  break;
                case UnaryFn::Sin:
                  if (std::abs(a.imag()) > kExpArgumentLimit) return raise(Event::Infinity, n);
                  out = std::sin(a);
                  break;
                case UnaryFn::Cos:
                  if (std::abs(a.imag()) > kExpArgumentLimit) return raise(Event::Infinity, n);
                  out = std::cos(a);
                  break;
              }
              return true;
            },
            [&](const node::Apply& a) {
              Complex inner;
              if (!eval(*a.inner, z, inner)) return false;
              return eval(*a.outer, inner, out);
            },
        },
        n.data);
    if (ok && !is_finite(out)) return raise(Event::Infinity, n);
    return ok;
  }

  Event event = Event::None;
  const Node* at = nullptr;

 private:
  bool raise(Event e, const Node& n) {
    if (event == Event::None) {
      event = e;
      at = &n;
    }
    return false;
  }
};

std::size_t count_nodes(const Node& n) {
  return std::visit(
      Overloaded{
          [](const node::Negate& u) { return 1 + count_nodes(*u.operand); },
          [](const node::Binary& b) { return 1 + count_nodes(*b.lhs) + count_nodes(*b.rhs); },
          [](const node::Power& p) { return 1 + count_nodes(*p.base); },
          [](const node::Call& c) { return 1 + count_nodes(*c.arg); },
          [](const node::Apply& a) { return 1 + count_nodes(*a.outer) + count_nodes(*a.inner); },
          [](const auto&) -> std::size_t { return 1; },
      },
      n.data);
}

void require_nonzero(Complex a) {
  if (a == Complex(0.0, 0.0)) throw std::invalid_argument("affine coefficient a must be nonzero");
}

}  // namespace

FunctionExpr::FunctionExpr() : root_(variable_node()) {}

FunctionExpr::FunctionExpr(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("FunctionExpr requires a root node");
}

std::size_t FunctionExpr::size() const { return count_nodes(*root_); }

bool operator==(const FunctionExpr& a, const FunctionExpr& b) {
  return structurally_equal(a.root(), b.root());
}

bool structurally_equal(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      Overloaded{
          [](const node::Variable&, const node::Variable&) { return true; },
          [](const node::Constant& x, const node::Constant& y) { return x.value == y.value; },
          [](const node::Named& x, const node::Named& y) { return x.which == y.which; },
          [](const node::Negate& x, const node::Negate& y) {
            return structurally_equal(*x.operand, *y.operand);
          },
          [](const node::Binary& x, const node::Binary& y) {
            return x.op == y.op && structurally_equal(*x.lhs, *y.lhs) &&
                   structurally_equal(*x.rhs, *y.rhs);
          },
          [](const node::Power& x, const node::Power& y) {
            return x.exponent == y.exponent && structurally_equal(*x.base, *y.base);
          },
          [](const node::Call& x, const node::Call& y) {
            return x.fn == y.fn && structurally_equal(*x.arg, *y.arg);
          },
          [](const node::Apply& x, const node::Apply& y) {
            return structurally_equal(*x.outer, *y.outer) && structurally_equal(*x.inner, *y.inner);
          },
          [](const auto&, const auto&) { return false; },
      },
      a.data, b.data);
}

ParseError::ParseError(std::size_t offset, std::string expected, std::string message)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset),
      expected_(std::move(expected)) {}

FunctionExpr parse(std::string_view text) {
  Parser p(Lexer(text).run());
  return FunctionExpr(p.run());
}

std::string format(const FunctionExpr& f) { return render(f.root(), "z").text; }

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

EvalResult evaluate(const FunctionExpr& f, Complex z) {
  Evaluator ev;
  Complex out;
  if (ev.eval(f.root(), z, out)) return out;
  if (ev.event == Evaluator::Event::Pole) return PoleEvent{ev.at};
  return InfinityEvent{ev.at};
}

FunctionExpr compose(const FunctionExpr& f, const FunctionExpr& g) {
  return FunctionExpr(make(node::Apply{f.root_ptr(), g.root_ptr()}));
}

FunctionExpr affine_post(const FunctionExpr& f, Complex a, Complex b) {
  require_nonzero(a);
  NodePtr scaled = make(node::Binary{BinaryOp::Mul, make(node::Constant{a}), f.root_ptr()});
  return FunctionExpr(make(node::Binary{BinaryOp::Add, scaled, make(node::Constant{b})}));
}

FunctionExpr conjugate(const FunctionExpr& f, Complex a, Complex b) {
  require_nonzero(a);
  NodePtr shifted = make(node::Binary{BinaryOp::Sub, variable_node(), make(node::Constant{b})});
  NodePtr inverse = make(node::Binary{BinaryOp::Div, shifted, make(node::Constant{a})});
  return affine_post(FunctionExpr(make(node::Apply{f.root_ptr(), inverse})), a, b);
}

}  // namespace bungee
