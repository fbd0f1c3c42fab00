#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace bungee {

using Complex = std::complex<double>;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class NamedConstant { Pi, E, I };
enum class BinaryOp { Add, Sub, Mul, Div };
enum class UnaryFn { Exp, Sin, Cos };

namespace node {
struct Variable {};
struct Constant {
  Complex value;
};
struct Named {
  NamedConstant which;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Power {
  NodePtr base;
  int exponent;  // >= 1
};
struct Call {
  UnaryFn fn;
  NodePtr arg;
};
// outer evaluated at the value of inner
struct Apply {
  NodePtr outer;
  NodePtr inner;
};
}  // namespace node

struct Node {
  std::variant<node::Variable, node::Constant, node::Named, node::Negate,
               node::Binary, node::Power, node::Call, node::Apply>
      data;
};

/// Immutable expression tree for a complex function of one variable `z`.
///
/// Copies share the underlying tree. All operations are free of side
/// effects, so a FunctionExpr may be evaluated from any number of threads.
class FunctionExpr {
 public:
  /// The identity map `z`.
  FunctionExpr();
  explicit FunctionExpr(NodePtr root);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }

  /// Number of nodes in the tree.
  std::size_t size() const;

  friend bool operator==(const FunctionExpr& a, const FunctionExpr& b);

 private:
  NodePtr root_;
};

/// Structural equality of two trees (constants compared exactly).
bool structurally_equal(const Node& a, const Node& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string expected, std::string message);

  /// 1-based byte position of the offending token (end of input counts as
  /// length + 1).
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Parses the expression grammar:
///
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | atom
///   atom   := number | "z" | "i" | "pi" | "e"
///           | ("exp"|"sin"|"cos") "(" expr ")"
///           | "pow" "(" expr "," integer ")" | "(" expr ")"
///
/// Juxtaposition is not multiplication; `2z` is a syntax error.
FunctionExpr parse(std::string_view text);

/// Renders an expression in the grammar accepted by parse(). For trees
/// produced by parse() the output reparses to a structurally equal tree.
/// Apply nodes are rendered by textual substitution.
std::string format(const FunctionExpr& f);

/// Shortest decimal representation that reads back to the same double.
std::string format_number(double value);

struct InfinityEvent {
  const Node* at = nullptr;  // node whose value left the double range
};
struct PoleEvent {
  const Node* at = nullptr;  // division node with a zero denominator
};

class EvalResult {
 public:
  EvalResult(Complex value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  EvalResult(InfinityEvent e) : v_(e) {}    // NOLINT(google-explicit-constructor)
  EvalResult(PoleEvent e) : v_(e) {}        // NOLINT(google-explicit-constructor)

  bool finite() const { return std::holds_alternative<Complex>(v_); }
  bool infinite() const { return std::holds_alternative<InfinityEvent>(v_); }
  bool pole() const { return std::holds_alternative<PoleEvent>(v_); }

  /// Precondition: finite().
  Complex value() const { return std::get<Complex>(v_); }
  const InfinityEvent& infinity() const { return std::get<InfinityEvent>(v_); }
  const PoleEvent& pole_event() const { return std::get<PoleEvent>(v_); }

 private:
  std::variant<Complex, InfinityEvent, PoleEvent> v_;
};

/// Real part above which exp(), and imaginary part magnitude above which
/// sin()/cos(), are reported as an InfinityEvent without being computed.
inline constexpr double kExpArgumentLimit = 700.0;

EvalResult evaluate(const FunctionExpr& f, Complex z);

/// f(g(z)).
FunctionExpr compose(const FunctionExpr& f, const FunctionExpr& g);

/// phi o f o phi^-1 with phi(z) = a*z + b. Throws std::invalid_argument if
/// a == 0.
FunctionExpr conjugate(const FunctionExpr& f, Complex a, Complex b);

/// a*f(z) + b. Throws std::invalid_argument if a == 0.
FunctionExpr affine_post(const FunctionExpr& f, Complex a, Complex b);

}  // namespace bungee
