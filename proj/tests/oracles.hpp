#pragma once

// Reference computations that share no code with the library: hand-derived
// derivatives, finite differences on plain lambdas, and curvature from an
// ambient Gram-Schmidt frame in E^4.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

/// {val, du, dv, duu, duv, dvv}
using Partials = std::array<double, 6>;
using Scalar = std::function<double(double, double)>;
using Vec4 = std::array<double, 4>;

/// Fourth-order central differences; h = 1e-3 keeps truncation and rounding
/// both near 1e-10 for O(1) smooth fields.
inline Partials fd_partials(const Scalar& f, double u, double v, double h = 1e-3) {
    auto d1 = [&](auto g) { return (-g(2 * h) + 8 * g(h) - 8 * g(-h) + g(-2 * h)) / (12 * h); };
    auto d2 = [&](auto g) { return (-g(2 * h) + 16 * g(h) - 30 * g(0.0) + 16 * g(-h) - g(-2 * h)) / (12 * h * h); };
    Partials p{};
    p[0] = f(u, v);
    p[1] = d1([&](double s) { return f(u + s, v); });
    p[2] = d1([&](double s) { return f(u, v + s); });
    p[3] = d2([&](double s) { return f(u + s, v); });
    p[4] = d1([&](double s) { return d1([&](double t) { return f(u + s, v + t); }); });
    p[5] = d2([&](double s) { return f(u, v + s); });
    return p;
}

/// Hand-differentiated test surfaces.
struct Surface {
    const char* f_text;
    const char* g_text;
    std::function<Partials(double, double)> f;
    std::function<Partials(double, double)> g;
};

inline Surface flat_quadric() {
    return {"u^2+v^2", "u^2-v^2",
            [](double u, double v) { return Partials{u * u + v * v, 2 * u, 2 * v, 2, 0, 2}; },
            [](double u, double v) { return Partials{u * u - v * v, 2 * u, -2 * v, 2, 0, -2}; }};
}

/// (e^u cos v, -e^u sin v): gradient of phi = e^u cos v.
inline Surface exp_gradient() {
    return {"exp(u)*cos(v)", "-exp(u)*sin(v)",
            [](double u, double v) {
                const double a = std::exp(u) * std::cos(v), b = std::exp(u) * std::sin(v);
                return Partials{a, a, -b, a, -b, -a};
            },
            [](double u, double v) {
                const double a = std::exp(u) * std::cos(v), b = std::exp(u) * std::sin(v);
                return Partials{-b, -b, -a, -b, -a, b};
            }};
}

inline Surface trig_poly() {
    return {"sin(u)*cos(v)", "u*v^2",
            [](double u, double v) {
                const double su = std::sin(u), cu = std::cos(u), sv = std::sin(v), cv = std::cos(v);
                return Partials{su * cv, cu * cv, -su * sv, -su * cv, -cu * sv, -su * cv};
            },
            [](double u, double v) { return Partials{u * v * v, v * v, 2 * u * v, 0, 2 * v, 2 * u}; }};
}

/// Aminov surface for r = e^{k u} times lambda.
inline Surface aminov_exp(double lambda, double k) {
    auto make = [=](bool sine) {
        return [=](double u, double v) {
            const double r = lambda * std::exp(k * u);
            const double c = sine ? std::sin(v) : std::cos(v);
            const double s = sine ? std::cos(v) : -std::sin(v);  // d/dv of c
            return Partials{r * c, k * r * c, r * s, k * k * r * c, k * r * s, -r * c};
        };
    };
    return {"", "", make(false), make(true)};
}

inline Vec4 axpy(double a, const Vec4& x, const Vec4& y) {
    return {a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2], a * x[3] + y[3]};
}
inline double dot(const Vec4& a, const Vec4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }
inline Vec4 scale(double a, const Vec4& x) { return {a * x[0], a * x[1], a * x[2], a * x[3]}; }

inline double det4(const std::array<Vec4, 4>& m) {
    double d = 0.0;
    for (int c = 0; c < 4; ++c) {
        double minor = 0.0;
        int cols[3], k = 0;
        for (int j = 0; j < 4; ++j)
            if (j != c) cols[k++] = j;
        minor = m[1][cols[0]] * (m[2][cols[1]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[1]]) -
                m[1][cols[1]] * (m[2][cols[0]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[0]]) +
                m[1][cols[2]] * (m[2][cols[0]] * m[3][cols[1]] - m[2][cols[1]] * m[3][cols[0]]);
        d += ((c % 2) ? -1.0 : 1.0) * m[0][c] * minor;
    }
    return d;
}

struct Curvature {
    double K = 0.0;
    double KN = 0.0;
    double Hnorm = 0.0;
    Vec4 H{};
    // second form in the orthonormal frame (e1, e2; n1, n2)
    std::array<std::array<double, 3>, 2> h{};
    double eg_minus_f2 = 0.0;
};

/// Curvature of the immersion with the given first and second derivative
/// vectors, computed in a Gram-Schmidt frame positively oriented like
/// (X_u, X_v, e3, e4).
inline Curvature ambient(const Vec4& Xu, const Vec4& Xv, const Vec4& Xuu, const Vec4& Xuv, const Vec4& Xvv) {
    const double E = dot(Xu, Xu), F = dot(Xu, Xv), G = dot(Xv, Xv);
    const Vec4 e1 = scale(1 / std::sqrt(E), Xu);
    Vec4 t = axpy(-dot(Xv, e1), e1, Xv);
    const Vec4 e2 = scale(1 / std::sqrt(dot(t, t)), t);

    std::array<Vec4, 2> n{};
    int found = 0;
    for (int axis = 0; axis < 4 && found < 2; ++axis) {
        Vec4 w{};
        w[axis] = 1.0;
        w = axpy(-dot(w, e1), e1, w);
        w = axpy(-dot(w, e2), e2, w);
        for (int k = 0; k < found; ++k) w = axpy(-dot(w, n[k]), n[k], w);
        const double len = std::sqrt(dot(w, w));
        if (len > 0.3) n[found++] = scale(1 / len, w);
    }
    if (det4({e1, e2, n[0], n[1]}) < 0) n[1] = scale(-1, n[1]);

    // X_a = P_a1 e1 + P_a2 e2 with P upper triangular; invert to express e_i.
    const double a11 = dot(Xu, e1), a21 = dot(Xv, e1), a22 = dot(Xv, e2);
    // e1 = Xu / a11, e2 = (Xv - a21 e1) / a22
    Curvature c;
    c.eg_minus_f2 = E * G - F * F;
    for (int k = 0; k < 2; ++k) {
        const double cuu = dot(Xuu, n[k]), cuv = dot(Xuv, n[k]), cvv = dot(Xvv, n[k]);
        const double h11 = cuu / (a11 * a11);
        const double h12 = (cuv - a21 / a11 * cuu) / (a11 * a22);
        const double h22 = (cvv - 2 * a21 / a11 * cuv + (a21 / a11) * (a21 / a11) * cuu) / (a22 * a22);
        c.h[k] = {h11, h12, h22};
        c.K += h11 * h22 - h12 * h12;
        c.H = axpy(0.5 * (h11 + h22), n[k], c.H);
    }
    const auto& A = c.h[0];
    const auto& B = c.h[1];
    // (A1 A2 - A2 A1)_12
    c.KN = (A[0] * B[1] + A[1] * B[2]) - (B[0] * A[1] + B[1] * A[2]);
    c.Hnorm = std::sqrt(dot(c.H, c.H));
    return c;
}

/// Curvature of X = (u, v, f, g) from partials of f and g.
inline Curvature monge(const Partials& f, const Partials& g) {
    return ambient({1, 0, f[1], g[1]}, {0, 1, f[2], g[2]}, {0, 0, f[3], g[3]}, {0, 0, f[4], g[4]},
                   {0, 0, f[5], g[5]});
}

inline Curvature monge(const Surface& s, double u, double v) { return monge(s.f(u, v), s.g(u, v)); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace oracle
