#include "monge4/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>
#include <utility>

#include "monge4/error.hpp"

namespace monge4 {

struct Expr::Node {
    enum class Kind { constant, variable, unary, binary, call };

    Kind kind = Kind::constant;
    double value = 0.0;
    Var var = Var::u;
    UnaryFn fn = UnaryFn::neg;
    BinaryOp op = BinaryOp::add;
    std::shared_ptr<const Node> lhs;  // unary / call operand, binary left
    std::shared_ptr<const Node> rhs;
    std::size_t position = 0;
};

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

namespace {

struct FunctionEntry {
    std::string_view name;
    UnaryFn fn;
};

constexpr std::array kFunctions{
    FunctionEntry{"sin", UnaryFn::sin},   FunctionEntry{"cos", UnaryFn::cos},   FunctionEntry{"tan", UnaryFn::tan},
    FunctionEntry{"exp", UnaryFn::exp},   FunctionEntry{"log", UnaryFn::log},   FunctionEntry{"sqrt", UnaryFn::sqrt},
    FunctionEntry{"sinh", UnaryFn::sinh}, FunctionEntry{"cosh", UnaryFn::cosh}, FunctionEntry{"abs", UnaryFn::abs},
};

std::optional<UnaryFn> lookup_function(std::string_view name) {
    for (const auto& entry : kFunctions) {
        if (entry.name == name) return entry.fn;
    }
    return std::nullopt;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

const char* var_name(Var x) { return x == Var::u ? "u" : "v"; }

const char* op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::add: return "+";
        case BinaryOp::sub: return "-";
        case BinaryOp::mul: return "*";
        case BinaryOp::div: return "/";
        case BinaryOp::pow: return "^";
    }
    return "?";
}

NodePtr make_node(Expr::Node node) { return std::make_shared<const Expr::Node>(std::move(node)); }

}  // namespace

std::string format_real(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(text[i + 1]))) {
            while (i < n && is_digit(text[i])) ++i;
            if (i < n && text[i] == '.') {
                ++i;
                while (i < n && is_digit(text[i])) ++i;
            }
            if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
                if (j < n && is_digit(text[j])) {
                    while (j < n && is_digit(text[j])) ++j;
                    i = j;
                }
            }
            Token tok{TokenKind::number, std::string(text.substr(start, i - start)), start};
            auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.number);
            if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || !std::isfinite(tok.number)) {
                throw ParseError(ParseError::Kind::lex, start, "numeric literal '" + tok.text + "' out of range");
            }
            out.push_back(std::move(tok));
            continue;
        }
        if (is_ident_start(c)) {
            while (i < n && is_ident_char(text[i])) ++i;
            out.push_back({TokenKind::identifier, std::string(text.substr(start, i - start)), start});
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+':
            case '-':
            case '*':
            case '/':
            case '^': kind = TokenKind::op; break;
            case '(': kind = TokenKind::lparen; break;
            case ')': kind = TokenKind::rparen; break;
            case ',': kind = TokenKind::comma; break;
            default:
                throw ParseError(ParseError::Kind::lex, start,
                                 std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, std::string(1, c), start});
        ++i;
    }
    return out;
}

class Parser {
public:
    Parser(std::span<const Token> tokens, VarSet allowed, std::size_t end_offset)
        : tokens_(tokens), allowed_(allowed), end_offset_(end_offset) {}

    Expr run(std::string source) {
        if (tokens_.empty()) {
            throw ParseError(ParseError::Kind::syntax, 0, "empty expression");
        }
        NodePtr root = expr();
        if (pos_ < tokens_.size()) {
            const Token& t = tokens_[pos_];
            if (t.kind == TokenKind::rparen) {
                throw ParseError(ParseError::Kind::syntax, t.position, "unbalanced ')'");
            }
            throw ParseError(ParseError::Kind::syntax, t.position,
                             "unexpected '" + t.text + "'; expected operator or end of input");
        }
        return Expr(std::move(root), std::move(source));
    }

private:
    const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

    bool peek_op(char c) const {
        const Token* t = peek();
        return t && t->kind == TokenKind::op && t->text[0] == c;
    }

    std::size_t here() const { return pos_ < tokens_.size() ? tokens_[pos_].position : end_offset_; }

    NodePtr binary(BinaryOp op, NodePtr lhs, NodePtr rhs, std::size_t position) {
        Expr::Node node;
        node.kind = Kind::binary;
        node.op = op;
        node.lhs = std::move(lhs);
        node.rhs = std::move(rhs);
        node.position = position;
        return make_node(std::move(node));
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (peek_op('+') || peek_op('-')) {
            const Token& t = tokens_[pos_++];
            NodePtr rhs = term();
            lhs = binary(t.text[0] == '+' ? BinaryOp::add : BinaryOp::sub, std::move(lhs), std::move(rhs), t.position);
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (peek_op('*') || peek_op('/')) {
            const Token& t = tokens_[pos_++];
            NodePtr rhs = factor();
            lhs = binary(t.text[0] == '*' ? BinaryOp::mul : BinaryOp::div, std::move(lhs), std::move(rhs), t.position);
        }
        return lhs;
    }

    NodePtr factor() {
        if (peek_op('-')) {
            const Token& t = tokens_[pos_++];
            Expr::Node node;
            node.kind = Kind::unary;
            node.fn = UnaryFn::neg;
            node.lhs = factor();
            node.position = t.position;
            return make_node(std::move(node));
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (peek_op('^')) {
            const Token& t = tokens_[pos_++];
            NodePtr exponent = factor();
            return binary(BinaryOp::pow, std::move(base), std::move(exponent), t.position);
        }
        return base;
    }

    NodePtr atom() {
        const Token* t = peek();
        if (!t) {
            throw ParseError(ParseError::Kind::syntax, end_offset_,
                             "unexpected end of input; expected number, identifier or '('");
        }
        switch (t->kind) {
            case TokenKind::number: {
                ++pos_;
                Expr::Node node;
                node.kind = Kind::constant;
                node.value = t->number;
                node.position = t->position;
                return make_node(std::move(node));
            }
            case TokenKind::identifier: return identifier();
            case TokenKind::lparen: {
                const std::size_t open = t->position;
                ++pos_;
                NodePtr inner = expr();
                expect_close(open);
                return inner;
            }
            default:
                throw ParseError(ParseError::Kind::syntax, t->position,
                                 "unexpected '" + t->text + "'; expected number, identifier or '('");
        }
    }

    void expect_close(std::size_t open) {
        const Token* t = peek();
        if (!t || t->kind != TokenKind::rparen) {
            throw ParseError(ParseError::Kind::syntax, here(),
                             "unclosed parenthesis opened at offset " + std::to_string(open) + "; expected ')'");
        }
        ++pos_;
    }

    NodePtr identifier() {
        const Token& t = tokens_[pos_++];
        const Token* next = peek();
        if (next && next->kind == TokenKind::lparen) {
            auto fn = lookup_function(t.text);
            if (!fn) {
                throw ParseError(ParseError::Kind::syntax, t.position, "unknown function '" + t.text + "'");
            }
            const std::size_t open = next->position;
            ++pos_;
            Expr::Node node;
            node.kind = Kind::call;
            node.fn = *fn;
            node.lhs = expr();
            node.position = t.position;
            const Token* close = peek();
            if (close && close->kind == TokenKind::comma) {
                throw ParseError(ParseError::Kind::syntax, close->position,
                                 "function '" + t.text + "' takes exactly one argument");
            }
            expect_close(open);
            return make_node(std::move(node));
        }
        Expr::Node node;
        node.position = t.position;
        if (t.text == "pi" || t.text == "e") {
            node.kind = Kind::constant;
            node.value = t.text == "pi" ? std::numbers::pi : std::numbers::e;
            return make_node(std::move(node));
        }
        if (t.text == "u" || t.text == "v") {
            const Var x = t.text == "u" ? Var::u : Var::v;
            if (!allowed_.contains(x)) {
                throw ParseError(ParseError::Kind::syntax, t.position, "variable '" + t.text + "' not permitted here");
            }
            node.kind = Kind::variable;
            node.var = x;
            return make_node(std::move(node));
        }
        if (lookup_function(t.text)) {
            throw ParseError(ParseError::Kind::syntax, here(), "expected '(' after function '" + t.text + "'");
        }
        throw ParseError(ParseError::Kind::syntax, t.position, "unknown identifier '" + t.text + "'");
    }

    std::span<const Token> tokens_;
    VarSet allowed_;
    std::size_t end_offset_;
    std::size_t pos_ = 0;
};

Expr parse(std::span<const Token> tokens, VarSet allowed, std::string source) {
    std::size_t end = tokens.empty() ? 0 : tokens.back().position + tokens.back().text.size();
    if (source.size() > end) end = source.size();
    return Parser(tokens, allowed, end).run(std::move(source));
}

Expr parse_expression(std::string_view text, VarSet allowed) {
    const auto tokens = tokenize(text);
    return parse(tokens, allowed, std::string(text));
}

namespace {

Jet2 raise(const Jet2& base, const Jet2& exponent) {
    if (has_derivatives(exponent)) return pow(base, exponent);
    const double p = exponent.val;
    if (p == std::floor(p) && std::abs(p) <= 1e9) return pow_int(base, static_cast<int>(p));
    return pow_real(base, p);
}

Jet2 eval_node(const Expr::Node& node, const Bindings& env) {
    try {
        switch (node.kind) {
            case Kind::constant: return seed_const(node.value);
            case Kind::variable: {
                const auto& bound = node.var == Var::u ? env.u : env.v;
                if (!bound) {
                    throw ValidationError(std::string("unbound variable '") + var_name(node.var) + "' at offset " +
                                          std::to_string(node.position));
                }
                return *bound;
            }
            case Kind::unary:
            case Kind::call: return jet_unary(node.fn, eval_node(*node.lhs, env));
            case Kind::binary: {
                const Jet2 a = eval_node(*node.lhs, env);
                const Jet2 b = eval_node(*node.rhs, env);
                switch (node.op) {
                    case BinaryOp::add: return a + b;
                    case BinaryOp::sub: return a - b;
                    case BinaryOp::mul: return a * b;
                    case BinaryOp::div: return a / b;
                    case BinaryOp::pow: return raise(a, b);
                }
            }
        }
    } catch (const DomainError& e) {
        throw e.at(node.position);
    }
    return {};
}

void collect_vars(const Expr::Node& node, VarSet& out) {
    if (node.kind == Kind::variable) out.insert(node.var);
    if (node.lhs) collect_vars(*node.lhs, out);
    if (node.rhs) collect_vars(*node.rhs, out);
}

void render(const Expr::Node& node, std::string& out) {
    switch (node.kind) {
        case Kind::constant: out += format_real(node.value); return;
        case Kind::variable: out += var_name(node.var); return;
        case Kind::unary:
            out += "(-";
            render(*node.lhs, out);
            out += ')';
            return;
        case Kind::call:
            out += name(node.fn);
            out += '(';
            render(*node.lhs, out);
            out += ')';
            return;
        case Kind::binary:
            out += '(';
            render(*node.lhs, out);
            out += ' ';
            out += op_text(node.op);
            out += ' ';
            render(*node.rhs, out);
            out += ')';
            return;
    }
}

bool same_tree(const Expr::Node* a, const Expr::Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::constant: return a->value == b->value;
        case Kind::variable: return a->var == b->var;
        case Kind::unary:
        case Kind::call: return a->fn == b->fn && same_tree(a->lhs.get(), b->lhs.get());
        case Kind::binary:
            return a->op == b->op && same_tree(a->lhs.get(), b->lhs.get()) && same_tree(a->rhs.get(), b->rhs.get());
    }
    return false;
}

}  // namespace

Jet2 Expr::eval(const Bindings& env) const {
    if (!root_) throw ValidationError("evaluating an empty expression");
    return eval_node(*root_, env);
}

VarSet Expr::variables() const {
    VarSet out;
    if (root_) collect_vars(*root_, out);
    return out;
}

std::string Expr::to_string() const {
    std::string out;
    if (root_) render(*root_, out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) { return same_tree(a.root_.get(), b.root_.get()); }

Jet2 eval_expr(const Expr& ast, const Bindings& env) { return ast.eval(env); }

}  // namespace monge4
