#include "monge4/jet.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "monge4/error.hpp"

namespace monge4 {

namespace {

std::string describe(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool finite(const Jet2& a) {
    return std::isfinite(a.val) && std::isfinite(a.du) && std::isfinite(a.dv) && std::isfinite(a.duu) &&
           std::isfinite(a.duv) && std::isfinite(a.dvv);
}

Jet2 checked(const char* fn, const Jet2& arg, Jet2 result) {
    if (!finite(result)) {
        throw DomainError(fn, arg.val, "result is not finite");
    }
    return result;
}

}  // namespace

DomainError::DomainError(std::string function, double value, std::string detail,
                         std::optional<std::size_t> position)
    : Error(function + ": " + detail + " (argument " + describe(value) + ")" +
            (position ? " at offset " + std::to_string(*position) : std::string())),
      function_(std::move(function)),
      value_(value),
      detail_(std::move(detail)),
      position_(position) {}

DomainError DomainError::at(std::size_t position) const {
    if (position_) return *this;
    return DomainError(function_, value_, detail_, position);
}

ParseError::ParseError(Kind kind, std::size_t position, std::string message)
    : Error((kind == Kind::lex ? "lex error at offset " : "syntax error at offset ") + std::to_string(position) +
            ": " + message),
      kind_(kind),
      position_(position),
      message_(std::move(message)) {}

const char* name(UnaryFn fn) noexcept {
    switch (fn) {
        case UnaryFn::neg: return "neg";
        case UnaryFn::sin: return "sin";
        case UnaryFn::cos: return "cos";
        case UnaryFn::tan: return "tan";
        case UnaryFn::exp: return "exp";
        case UnaryFn::log: return "log";
        case UnaryFn::sqrt: return "sqrt";
        case UnaryFn::sinh: return "sinh";
        case UnaryFn::cosh: return "cosh";
        case UnaryFn::abs: return "abs";
    }
    return "?";
}

const char* name(BinaryFn fn) noexcept {
    switch (fn) {
        case BinaryFn::add: return "+";
        case BinaryFn::sub: return "-";
        case BinaryFn::mul: return "*";
        case BinaryFn::div: return "/";
    }
    return "?";
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.val == 0.0) {
        throw DomainError("/", b.val, "division by zero");
    }
    const double inv = 1.0 / b.val;
    const Jet2 recip = chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
    return checked("/", b, a * recip);
}

Jet2 jet_binary(BinaryFn op, const Jet2& a, const Jet2& b) {
    switch (op) {
        case BinaryFn::add: return a + b;
        case BinaryFn::sub: return a - b;
        case BinaryFn::mul: return a * b;
        case BinaryFn::div: return a / b;
    }
    return {};
}

Jet2 jet_unary(UnaryFn fn, const Jet2& a) {
    switch (fn) {
        case UnaryFn::neg: return -a;
        case UnaryFn::sin: return sin(a);
        case UnaryFn::cos: return cos(a);
        case UnaryFn::tan: return tan(a);
        case UnaryFn::exp: return exp(a);
        case UnaryFn::log: return log(a);
        case UnaryFn::sqrt: return sqrt(a);
        case UnaryFn::sinh: return sinh(a);
        case UnaryFn::cosh: return cosh(a);
        case UnaryFn::abs: return abs(a);
    }
    return {};
}

Jet2 sin(const Jet2& a) {
    const double s = std::sin(a.val), c = std::cos(a.val);
    return checked("sin", a, chain(a, s, c, -s));
}

Jet2 cos(const Jet2& a) {
    const double s = std::sin(a.val), c = std::cos(a.val);
    return checked("cos", a, chain(a, c, -s, -c));
}

Jet2 tan(const Jet2& a) {
    // A double never lands exactly on a pole; treat |cos| below 1e-12 as one.
    const double c = std::cos(a.val);
    if (std::abs(c) < 1e-12) {
        throw DomainError("tan", a.val, "pole");
    }
    const double t = std::tan(a.val);
    const double sec2 = 1.0 + t * t;
    return checked("tan", a, chain(a, t, sec2, 2.0 * t * sec2));
}

Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.val);
    return checked("exp", a, chain(a, e, e, e));
}

Jet2 log(const Jet2& a) {
    if (!(a.val > 0.0)) {
        throw DomainError("log", a.val, "argument must be positive");
    }
    const double inv = 1.0 / a.val;
    return checked("log", a, chain(a, std::log(a.val), inv, -inv * inv));
}

Jet2 sqrt(const Jet2& a) {
    if (a.val < 0.0 || std::isnan(a.val)) {
        throw DomainError("sqrt", a.val, "argument must be non-negative");
    }
    if (a.val == 0.0) {
        if (has_derivatives(a)) {
            throw DomainError("sqrt", a.val, "not differentiable at 0");
        }
        return seed_const(0.0);
    }
    const double s = std::sqrt(a.val);
    return checked("sqrt", a, chain(a, s, 0.5 / s, -0.25 / (s * a.val)));
}

Jet2 sinh(const Jet2& a) {
    const double s = std::sinh(a.val), c = std::cosh(a.val);
    return checked("sinh", a, chain(a, s, c, s));
}

Jet2 cosh(const Jet2& a) {
    const double s = std::sinh(a.val), c = std::cosh(a.val);
    return checked("cosh", a, chain(a, c, s, c));
}

Jet2 abs(const Jet2& a) {
    if (a.val == 0.0) {
        if (has_derivatives(a)) {
            throw DomainError("abs", a.val, "not differentiable at 0");
        }
        return seed_const(0.0);
    }
    return a.val > 0.0 ? a : -a;
}

Jet2 pow_int(const Jet2& a, int n) {
    if (n == 0) return seed_const(1.0);
    if (n == 1) return a;
    if (n < 0 && a.val == 0.0) {
        throw DomainError("^", a.val, "negative power of zero");
    }
    const double x = a.val;
    const double dn = static_cast<double>(n);
    const double f0 = std::pow(x, dn);
    const double f1 = dn * std::pow(x, dn - 1.0);
    const double f2 = dn * (dn - 1.0) * std::pow(x, dn - 2.0);
    return checked("^", a, chain(a, f0, f1, f2));
}

Jet2 pow_real(const Jet2& a, double p) {
    if (a.val < 0.0 || std::isnan(a.val)) {
        throw DomainError("^", a.val, "non-integer power of a negative value");
    }
    if (a.val == 0.0) {
        if (has_derivatives(a) || p < 0.0) {
            throw DomainError("^", a.val, "non-integer power not differentiable at 0");
        }
        return seed_const(p == 0.0 ? 1.0 : 0.0);
    }
    const double x = a.val;
    const double f0 = std::pow(x, p);
    return checked("^", a, chain(a, f0, p * f0 / x, p * (p - 1.0) * f0 / (x * x)));
}

Jet2 pow(const Jet2& a, const Jet2& b) {
    if (!(a.val > 0.0)) {
        throw DomainError("^", a.val, "variable exponent requires a positive base");
    }
    return exp(b * log(a));
}

}  // namespace monge4
