#pragma once

// Recursive-descent parser for surface and profile expressions in u, v.
//
// Grammar (precedence low to high; "^" is right-associative and binds
// tighter than unary minus, so "-u^2" is -(u^2)):
//
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := "-" factor | power
//   power  := atom ("^" factor)?
//   atom   := number | ident | ident "(" expr ")" | "(" expr ")"
//
// Identifiers are the variables u and v, the constants pi and e (folded at
// parse time) and the unary functions sin, cos, tan, exp, log, sqrt, sinh,
// cosh, abs. Implicit multiplication ("2u") is rejected.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monge4/jet.hpp"

namespace monge4 {

enum class TokenKind { number, identifier, op, lparen, rparen, comma };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t position;  // 0-based character offset
    double number = 0.0;   // parsed value for TokenKind::number
};

/// Throws ParseError (lex kind) on an unexpected character.
std::vector<Token> tokenize(std::string_view text);

enum class Var : std::uint8_t { u = 1, v = 2 };

/// Set of admissible variables.
class VarSet {
public:
    constexpr VarSet() = default;
    constexpr VarSet(std::initializer_list<Var> vars) {
        for (Var x : vars) bits_ |= static_cast<std::uint8_t>(x);
    }
    constexpr bool contains(Var x) const { return (bits_ & static_cast<std::uint8_t>(x)) != 0; }
    constexpr VarSet& insert(Var x) {
        bits_ |= static_cast<std::uint8_t>(x);
        return *this;
    }
    constexpr bool empty() const { return bits_ == 0; }
    friend constexpr bool operator==(VarSet, VarSet) = default;

private:
    std::uint8_t bits_ = 0;
};

inline constexpr VarSet kSurfaceVars{Var::u, Var::v};
inline constexpr VarSet kProfileVars{Var::u};

/// Variable bindings for evaluation.
struct Bindings {
    std::optional<Jet2> u;
    std::optional<Jet2> v;
};

enum class BinaryOp { add, sub, mul, div, pow };

/// Immutable expression tree. Copies share the underlying nodes.
class Expr {
public:
    struct Node;

    Expr() = default;

    /// Evaluates over jets. Throws DomainError tagged with the source offset of
    /// the failing operation, or ValidationError for an unbound variable.
    Jet2 eval(const Bindings& env) const;

    /// Variables referenced anywhere in the tree.
    VarSet variables() const;
    bool uses(Var x) const { return variables().contains(x); }

    /// Text the expression was parsed from.
    const std::string& source() const noexcept { return source_; }

    /// Fully parenthesised canonical rendering; parses back to an identical tree.
    std::string to_string() const;

    bool valid() const noexcept { return root_ != nullptr; }

    friend bool structurally_equal(const Expr& a, const Expr& b);

private:
    friend class Parser;
    Expr(std::shared_ptr<const Node> root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

    std::shared_ptr<const Node> root_;
    std::string source_;
};

/// Parses a token stream. Identifiers naming a variable outside `allowed` are
/// a syntax error. `source` is retained for diagnostics and serialisation.
Expr parse(std::span<const Token> tokens, VarSet allowed = kSurfaceVars, std::string source = {});

/// tokenize + parse.
Expr parse_expression(std::string_view text, VarSet allowed = kSurfaceVars);

Jet2 eval_expr(const Expr& ast, const Bindings& env);

/// Shortest decimal form that reads back to the same double.
std::string format_real(double x);

}  // namespace monge4
