#pragma once

// Monge patches X(u,v) = (u, v, f(u,v), g(u,v)) in E^4.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "monge4/expr.hpp"
#include "monge4/jet.hpp"

namespace monge4 {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Parameter rectangle; a missing side is unbounded.
struct Domain {
    std::optional<Interval> u;
    std::optional<Interval> v;

    bool contains(double uu, double vv) const {
        return (!u || u->contains(uu)) && (!v || v->contains(vv));
    }
    bool bounded() const { return u && v; }
    friend bool operator==(const Domain&, const Domain&) = default;
};

struct PatchJets {
    Jet2 f;
    Jet2 g;
};

enum class Family { explicit_patch, translation, aminov, gradient };

const char* to_string(Family family) noexcept;
std::optional<Family> family_from_string(std::string_view text);

/// One-variable profile r(u) given as an expression in u.
struct Profile {
    Expr expr;
    std::optional<Interval> domain;

    Jet1 eval(double u) const;
};

Profile make_profile(std::string_view text, std::optional<Interval> domain = std::nullopt);

/// r(u), r'(u), r''(u) at u. Throws DomainError outside the profile domain.
Jet1 profile_eval(const Profile& p, double u);

struct ExplicitPayload {
    Expr f;
    Expr g;
};

/// f = f3(u) + g3(v), g = f4(u) + g4(v).
struct TranslationPayload {
    Expr f3;
    Expr f4;
    Expr g3;
    Expr g4;
};

/// f = r(u) cos v, g = r(u) sin v.
struct AminovPayload {
    Profile r;
};

/// f = phi_u, g = phi_v for a potential phi that is never formed explicitly.
struct GradientPayload {
    Expr p;
    Expr q;
};

using Payload = std::variant<ExplicitPayload, TranslationPayload, AminovPayload, GradientPayload>;

/// Integrability probe for gradient patches: |p_v - q_u| on a uniform grid
/// over the domain rectangle (or `fallback` on unbounded sides).
struct SampleSpec {
    int nu = 5;
    int nv = 5;
    double integ_tol = 1e-8;
    Interval fallback{-1.0, 1.0};
};

class MongePatch {
public:
    Family family() const noexcept { return family_; }
    const Payload& payload() const noexcept { return payload_; }
    const Domain& domain() const noexcept { return domain_; }

    /// Non-fatal construction diagnostics (e.g. a failed integrability check).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Largest |p_v - q_u| seen on the probe grid (gradient construction only).
    std::optional<double> integrability_residual() const noexcept { return integrability_residual_; }

    /// Exact jets of f and g at (u,v).
    PatchJets eval(double u, double v) const;

private:
    friend MongePatch make_explicit(std::string_view, std::string_view, Domain);
    friend MongePatch make_translation(std::string_view, std::string_view, std::string_view, std::string_view,
                                       Domain);
    friend MongePatch make_aminov(Profile, std::optional<Interval>);
    friend MongePatch make_gradient(std::string_view, std::string_view, Domain, SampleSpec);

    MongePatch(Family family, Payload payload, Domain domain)
        : family_(family), payload_(std::move(payload)), domain_(domain) {}

    void probe_domain() const;

    Family family_;
    Payload payload_;
    Domain domain_;
    std::vector<std::string> warnings_;
    std::optional<double> integrability_residual_;
};

/// Throws ParseError / ValidationError.
MongePatch make_explicit(std::string_view f_expr, std::string_view g_expr, Domain domain = {});

/// f3, f4 may use only u; g3, g4 only v.
MongePatch make_translation(std::string_view f3, std::string_view f4, std::string_view g3, std::string_view g4,
                            Domain domain = {});

/// r must use only u. When `v_range` is absent v is unbounded.
MongePatch make_aminov(Profile r, std::optional<Interval> v_range = std::nullopt);
MongePatch make_aminov(std::string_view r_expr, std::optional<Interval> u_range,
                       std::optional<Interval> v_range = std::nullopt);

/// A failed integrability check downgrades the result to an explicit patch
/// carrying a warning; it never throws for that reason.
MongePatch make_gradient(std::string_view p_expr, std::string_view q_expr, Domain domain = {},
                         SampleSpec sample = {});

PatchJets eval_patch(const MongePatch& patch, double u, double v);

}  // namespace monge4
