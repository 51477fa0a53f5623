#include <cctype>

#include "webcurv/expr.hpp"

namespace webcurv {

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse_all() {
        skip_ws();
        if (pos_ >= src_.size()) fail({"expression"});
        Expr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) fail({"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
        throw ParseError(pos_, std::move(expected), std::move(found));
    }

    void expect(char c) {
        if (peek() != c) fail({std::string(1, c)});
        ++pos_;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            Expr rhs = parse_term();
            lhs = Expr::binary(c == '+' ? BinaryOp::add : BinaryOp::sub, lhs, rhs);
        }
        return lhs;
    }

    Expr parse_term() {
        Expr lhs = parse_unary();
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            ++pos_;
            Expr rhs = parse_unary();
            lhs = Expr::binary(c == '*' ? BinaryOp::mul : BinaryOp::div, lhs, rhs);
        }
        return lhs;
    }

    Expr parse_unary() {
        if (peek() == '-') {
            ++pos_;
            return Expr::unary(UnaryOp::neg, parse_unary());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (peek() == '^') {
            ++pos_;
            return Expr::binary(BinaryOp::pow, base, parse_unary());
        }
        return base;
    }

    Expr parse_atom() {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (peek() != ')') fail({")", "+", "-", "*", "/", "^"});
            ++pos_;
            return inner;
        }
        fail({"number", "x", "y", "alpha", "e", "pi", "exp", "ln", "sin", "cos", "sqrt", "(", "-"});
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        const std::string text(src_.substr(start, pos_ - start));
        try {
            return Expr::constant(Rational::from_decimal(text));
        } catch (const std::exception&) {
            pos_ = start;
            fail({"number"});
        }
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return Expr::variable(Var::x);
        if (name == "y") return Expr::variable(Var::y);
        if (name == "alpha") return Expr::variable(Var::alpha);
        if (name == "e") return Expr::named(NamedConst::e);
        if (name == "pi") return Expr::named(NamedConst::pi);

        static constexpr std::pair<std::string_view, UnaryOp> funcs[] = {
            {"exp", UnaryOp::exp}, {"ln", UnaryOp::ln},   {"sin", UnaryOp::sin},
            {"cos", UnaryOp::cos}, {"sqrt", UnaryOp::sqrt},
        };
        for (const auto& [fname, op] : funcs) {
            if (name != fname) continue;
            expect('(');
            Expr arg = parse_expr();
            if (peek() != ')') fail({")", "+", "-", "*", "/", "^"});
            ++pos_;
            return Expr::unary(op, arg);
        }
        throw UnknownIdentifier(start, std::string(name));
    }
};

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

// ---------------------------------------------------------------------------
// Formatting

namespace {

// Binding strength of the construct a node prints as.
enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int precedence(const Expr& e) {
    const auto& v = e.node().v;
    if (const auto* c = std::get_if<ConstantNode>(&v)) {
        if (!c->value.is_integer()) return kProduct;
        return c->value.is_negative() ? kUnary : kAtom;
    }
    if (const auto* u = std::get_if<UnaryNode>(&v)) return u->op == UnaryOp::neg ? kUnary : kAtom;
    if (const auto* b = std::get_if<BinaryNode>(&v)) {
        switch (b->op) {
            case BinaryOp::add:
            case BinaryOp::sub: return kSum;
            case BinaryOp::mul:
            case BinaryOp::div: return kProduct;
            case BinaryOp::pow: return kPower;
        }
    }
    return kAtom;
}

void emit(const Expr& e, std::string& out);

void emit_wrapped(const Expr& e, bool parens, std::string& out) {
    if (parens) out += '(';
    emit(e, out);
    if (parens) out += ')';
}

void emit(const Expr& e, std::string& out) {
    const auto& v = e.node().v;
    if (const auto* c = std::get_if<ConstantNode>(&v)) {
        out += c->value.str();
        return;
    }
    if (const auto* n = std::get_if<NamedNode>(&v)) {
        out += name_of(n->which);
        return;
    }
    if (const auto* var = std::get_if<VariableNode>(&v)) {
        out += name_of(var->which);
        return;
    }
    if (const auto* u = std::get_if<UnaryNode>(&v)) {
        if (u->op == UnaryOp::neg) {
            out += '-';
            emit_wrapped(u->child, precedence(u->child) < kUnary, out);
        } else {
            out += name_of(u->op);
            emit_wrapped(u->child, true, out);
        }
        return;
    }
    const auto& b = std::get<BinaryNode>(v);
    const int pl = precedence(b.lhs);
    const int pr = precedence(b.rhs);
    switch (b.op) {
        case BinaryOp::add:
            emit_wrapped(b.lhs, pl < kSum, out);
            out += " + ";
            emit_wrapped(b.rhs, pr < kSum, out);
            break;
        case BinaryOp::sub:
            emit_wrapped(b.lhs, pl < kSum, out);
            out += " - ";
            emit_wrapped(b.rhs, pr <= kSum, out);
            break;
        case BinaryOp::mul:
            emit_wrapped(b.lhs, pl < kProduct, out);
            out += '*';
            emit_wrapped(b.rhs, pr <= kProduct, out);
            break;
        case BinaryOp::div:
            emit_wrapped(b.lhs, pl < kProduct, out);
            out += '/';
            emit_wrapped(b.rhs, pr <= kProduct, out);
            break;
        case BinaryOp::pow:
            emit_wrapped(b.lhs, pl < kAtom, out);
            out += '^';
            emit_wrapped(b.rhs, pr < kUnary, out);
            break;
    }
}

}  // namespace

std::string format(const Expr& e) {
    std::string out;
    emit(e, out);
    return out;
}

}  // namespace webcurv
