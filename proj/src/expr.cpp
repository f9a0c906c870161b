#include "hgf/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "hgf/errors.hpp"

namespace hgf {

struct Expression::Node {
    enum class Kind { Number, Variable, Unary, Binary, Call };
    Kind kind;
    double value = 0.0;                      // Number
    char op = 0;                             // Unary ('-') / Binary
    double (*fn)(double) = nullptr;          // Call
    std::shared_ptr<const Node> lhs, rhs;    // children
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->value = v;
    return n;
}

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what, pos);
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            skip_ws();
            if (pos >= src.size() || (src[pos] != '+' && src[pos] != '-'))
                return lhs;
            const char op = src[pos++];
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Binary;
            n->op = op;
            n->lhs = lhs;
            n->rhs = parse_term();
            lhs = n;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            skip_ws();
            if (pos >= src.size() || (src[pos] != '*' && src[pos] != '/'))
                return lhs;
            const char op = src[pos++];
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Binary;
            n->op = op;
            n->lhs = lhs;
            n->rhs = parse_factor();
            lhs = n;
        }
    }

    NodePtr parse_factor() {
        if (eat('-')) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Unary;
            n->op = '-';
            n->lhs = parse_factor();
            return n;
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        skip_ws();
        if (pos < src.size() && src[pos] == '^') {
            ++pos;
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Binary;
            n->op = '^';
            n->lhs = base;
            n->rhs = parse_factor(); // right-associative via recursion
            return n;
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of expression");
        const char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const char* begin = src.data() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos += static_cast<std::size_t>(end - begin);
        return make_number(v);
    }

    NodePtr parse_ident() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               std::isalpha(static_cast<unsigned char>(src[pos])))
            ++pos;
        const std::string_view name = src.substr(start, pos - start);

        if (name == "x" || name == "r") {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Variable;
            return n;
        }
        if (name == "pi") return make_number(std::numbers::pi);
        if (name == "e") return make_number(std::numbers::e);

        static const struct {
            std::string_view name;
            double (*fn)(double);
        } kFunctions[] = {
            {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
            {"exp", std::exp},   {"ln", std::log},    {"sqrt", std::sqrt},
            {"tanh", std::tanh}, {"abs", std::fabs},
        };
        for (const auto& f : kFunctions) {
            if (name != f.name) continue;
            if (!eat('('))
                fail("expected '(' after function '" + std::string(name) +
                     "'");
            NodePtr arg = parse_expr();
            if (!eat(')')) fail("expected ')'");
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Call;
            n->fn = f.fn;
            n->lhs = arg;
            return n;
        }
        pos = start;
        fail("unknown identifier '" + std::string(name) + "'");
    }
};

double eval_node(const Node& n, double x) {
    switch (n.kind) {
        case Node::Kind::Number: return n.value;
        case Node::Kind::Variable: return x;
        case Node::Kind::Unary: return -eval_node(*n.lhs, x);
        case Node::Kind::Call: return n.fn(eval_node(*n.lhs, x));
        case Node::Kind::Binary: {
            const double a = eval_node(*n.lhs, x);
            const double b = eval_node(*n.rhs, x);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            break;
        }
    }
    return 0.0; // unreachable
}

} // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

double Expression::eval(double x) const { return eval_node(*root_, x); }

Expression parse_expression(std::string_view text) {
    Parser parser{text};
    NodePtr root = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size())
        throw ParseError("trailing input", parser.pos);
    return Expression(root, std::string(text));
}

} // namespace hgf
