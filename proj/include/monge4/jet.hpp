#pragma once

// Second-order forward-mode differentiation in one and two variables.
//
// A Jet2 carries the value of a scalar field together with its exact first
// and second partials at one point. Arithmetic on jets applies the product,
// quotient and chain rules truncated at order two, so any expression built
// from the operations below yields the partials f_u ... f_vv without finite
// differencing.

#include <cmath>

namespace monge4 {

struct Jet2 {
    double val = 0.0;
    double du = 0.0;
    double dv = 0.0;
    double duu = 0.0;
    double duv = 0.0;  // single mixed partial: f_uv == f_vu structurally
    double dvv = 0.0;

    friend bool operator==(const Jet2&, const Jet2&) = default;
};

/// Value with first and second derivative of a one-variable function.
struct Jet1 {
    double val = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    friend bool operator==(const Jet1&, const Jet1&) = default;
};

constexpr Jet2 seed_u(double u0, double /*v0*/ = 0.0) { return {u0, 1.0, 0.0, 0.0, 0.0, 0.0}; }
constexpr Jet2 seed_v(double /*u0*/, double v0) { return {v0, 0.0, 1.0, 0.0, 0.0, 0.0}; }
constexpr Jet2 seed_const(double c) { return {c, 0.0, 0.0, 0.0, 0.0, 0.0}; }

/// One-variable jets embedded as functions of u (or v) only.
constexpr Jet2 lift_u(const Jet1& j) { return {j.val, j.d1, 0.0, j.d2, 0.0, 0.0}; }
constexpr Jet2 lift_v(const Jet1& j) { return {j.val, 0.0, j.d1, 0.0, 0.0, j.d2}; }
/// Restriction of a jet that depends on u only.
constexpr Jet1 restrict_u(const Jet2& j) { return {j.val, j.du, j.duu}; }

constexpr bool has_derivatives(const Jet2& a) {
    return a.du != 0.0 || a.dv != 0.0 || a.duu != 0.0 || a.duv != 0.0 || a.dvv != 0.0;
}

/// Composes a scalar function phi with the jet `a`, given phi(a), phi'(a) and
/// phi''(a) evaluated at a.val.
constexpr Jet2 chain(const Jet2& a, double f0, double f1, double f2) {
    return {f0,
            f1 * a.du,
            f1 * a.dv,
            f2 * a.du * a.du + f1 * a.duu,
            f2 * a.du * a.dv + f1 * a.duv,
            f2 * a.dv * a.dv + f1 * a.dvv};
}

constexpr Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.val + b.val, a.du + b.du, a.dv + b.dv, a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
}

constexpr Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.val - b.val, a.du - b.du, a.dv - b.dv, a.duu - b.duu, a.duv - b.duv, a.dvv - b.dvv};
}

constexpr Jet2 operator-(const Jet2& a) { return {-a.val, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv}; }

constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.val * b.val,
            a.du * b.val + a.val * b.du,
            a.dv * b.val + a.val * b.dv,
            a.duu * b.val + 2.0 * a.du * b.du + a.val * b.duu,
            a.duv * b.val + a.du * b.dv + a.dv * b.du + a.val * b.duv,
            a.dvv * b.val + 2.0 * a.dv * b.dv + a.val * b.dvv};
}

constexpr Jet2 operator*(double s, const Jet2& a) {
    return {s * a.val, s * a.du, s * a.dv, s * a.duu, s * a.duv, s * a.dvv};
}
constexpr Jet2 operator*(const Jet2& a, double s) { return s * a; }
constexpr Jet2 operator+(const Jet2& a, double s) { return {a.val + s, a.du, a.dv, a.duu, a.duv, a.dvv}; }
constexpr Jet2 operator+(double s, const Jet2& a) { return a + s; }

/// Throws DomainError when b.val == 0.
Jet2 operator/(const Jet2& a, const Jet2& b);

enum class BinaryFn { add, sub, mul, div };
enum class UnaryFn { neg, sin, cos, tan, exp, log, sqrt, sinh, cosh, abs };

const char* name(UnaryFn fn) noexcept;
const char* name(BinaryFn fn) noexcept;

Jet2 jet_binary(BinaryFn op, const Jet2& a, const Jet2& b);
Jet2 jet_unary(UnaryFn fn, const Jet2& a);

// Elementary functions. Each throws DomainError outside its domain or when
// the result is not finite.
Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 tan(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 sinh(const Jet2& a);
Jet2 cosh(const Jet2& a);
/// Differentiable except at 0; abs(0) is accepted only for a constant jet.
Jet2 abs(const Jet2& a);

Jet2 pow_int(const Jet2& a, int n);
/// a^p for real p; requires a.val > 0 (a.val == 0 only for a constant jet).
Jet2 pow_real(const Jet2& a, double p);
/// a^b with both operands varying: exp(b log a), requires a.val > 0.
Jet2 pow(const Jet2& a, const Jet2& b);

}  // namespace monge4
