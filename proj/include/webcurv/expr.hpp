#ifndef WEBCURV_EXPR_HPP
#define WEBCURV_EXPR_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "webcurv/geometry.hpp"
#include "webcurv/rational.hpp"

namespace webcurv {

enum class Var { x, y, alpha };
enum class NamedConst { e, pi };
enum class UnaryOp { neg, exp, ln, sin, cos, sqrt };
enum class BinaryOp { add, sub, mul, div, pow };

std::string_view name_of(Var v);
std::string_view name_of(NamedConst c);
std::string_view name_of(UnaryOp op);

struct Node;

/// Immutable symbolic expression over the chart variables x, y, alpha.
///
/// An Expr is a cheap handle to a shared, never-mutated tree, so copies are
/// O(1) and concurrent reads from several threads are safe.
///
/// Two families of constructors exist. The raw ones (`unary`, `binary`) build
/// exactly the node requested; the parser uses them so that parse() returns
/// the literal syntax tree. The arithmetic operators fold constants and the
/// trivial 0/1 identities as they go, which keeps derivatives readable.
class Expr {
public:
    Expr();  // the constant 0

    static Expr constant(Rational value);
    static Expr integer(std::int64_t value) { return constant(Rational(value)); }
    static Expr named(NamedConst which);
    static Expr variable(Var which);
    static Expr unary(UnaryOp op, Expr child);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

    const Node& node() const { return *node_; }

    std::optional<Rational> as_rational() const;
    bool is_zero() const;
    bool is_one() const;
    bool mentions(Var v) const;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct ConstantNode {
    Rational value;
};
struct NamedNode {
    NamedConst which;
};
struct VariableNode {
    Var which;
};
struct UnaryNode {
    UnaryOp op;
    Expr child;
};
struct BinaryNode {
    BinaryOp op;
    Expr lhs;
    Expr rhs;
};

struct Node {
    std::variant<ConstantNode, NamedNode, VariableNode, UnaryNode, BinaryNode> v;
};

// Folding constructors.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);

/// Structural (syntactic) equality.
bool same(const Expr& a, const Expr& b);

// ---------------------------------------------------------------------------
// Errors

/// Malformed input text. `offset` is a byte offset into the source.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, std::string found);
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifier : public std::runtime_error {
public:
    UnknownIdentifier(std::size_t offset, std::string name);
    std::size_t offset() const { return offset_; }
    const std::string& name() const { return name_; }

private:
    std::size_t offset_;
    std::string name_;
};

/// Evaluation left the domain of an elementary function (ln of a non-positive
/// number, division by zero, fractional power of a negative base, overflow).
class DomainError : public std::runtime_error {
public:
    DomainError(std::string subexpr, Point at, std::string reason);
    const std::string& subexpr() const { return subexpr_; }
    const Point& at() const { return at_; }

private:
    std::string subexpr_;
    Point at_;
};

// ---------------------------------------------------------------------------
// Operations

/// Parses
///   expr   := term (("+"|"-") term)*
///   term   := unary (("*"|"/") unary)*
///   unary  := "-" unary | power
///   power  := atom ("^" unary)?
///   atom   := NUMBER | x | y | alpha | e | pi | FUNC "(" expr ")" | "(" expr ")"
/// so "^" is right-associative and binds tighter than unary minus.
Expr parse(std::string_view source);

double eval(const Expr& e, const Point& p);

Expr differentiate(const Expr& e, Var v);

/// Rewrites into a canonical rational form over the "atoms" of the
/// expression (variables, e, pi, and irreducible calls such as exp(..)).
/// Numerators are expanded, denominators are kept as products of primitive
/// polynomial factors, and factors dividing the numerator exactly are
/// cancelled. exp(ln(u)) and ln(exp(u)) collapse to u, which extends the
/// domain to wherever u itself is defined.
Expr simplify(const Expr& e);

std::string format(const Expr& e);

enum class ZeroTest { yes, no, unknown };

struct ZeroTestResult {
    ZeroTest verdict = ZeroTest::unknown;
    std::optional<Point> witness;   // set when verdict == no
    double witness_value = 0.0;
    std::size_t samples = 0;        // points actually evaluated
    std::size_t domain_errors = 0;  // interior points that failed to evaluate
};

struct ZeroTestOptions {
    std::uint64_t seed = 42;
    double tolerance = 1e-10;
    int grid = 17;          // grid x grid deterministic points, boundary included
    int random_points = 64;
    double alpha = 1.0;     // value used for the alpha coordinate
};

/// Tri-state zero test: literal zero after simplify, otherwise sampling.
///
/// Sampling order is: lattice points with integer coordinates inside `dom`
/// (smallest |x|+|y| first), the closed grid, then seeded uniform points.
/// The first sample with |e| > tol*(1 + scale) is returned as the witness,
/// where scale is the sum of magnitudes of the top-level additive terms.
/// Failures to evaluate on the boundary are ignored (the domain is open);
/// interior failures without a witness yield `unknown`.
ZeroTestResult is_identically_zero(const Expr& e, const Rect& dom, const ZeroTestOptions& opts = {});

/// Central difference of `e` along `v` at `p` (test oracle helper, also used
/// by the self-test suites).
double central_difference(const Expr& e, Var v, const Point& p, double h = 1e-5);

}  // namespace webcurv

#endif
