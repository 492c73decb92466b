#include "monge4/patch.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "monge4/error.hpp"

namespace monge4 {

namespace {

Expr parse_restricted(std::string_view text, VarSet allowed, const char* role) {
    Expr e = parse_expression(text, kSurfaceVars);
    const VarSet used = e.variables();
    for (Var x : {Var::u, Var::v}) {
        if (used.contains(x) && !allowed.contains(x)) {
            throw ValidationError(std::string(role) + " '" + std::string(text) + "' may not use variable " +
                                  (x == Var::u ? "u" : "v"));
        }
    }
    return e;
}

Jet2 eval_uv(const Expr& e, double u, double v) { return e.eval({seed_u(u, v), seed_v(u, v)}); }

std::vector<double> probe_points(const Interval& iv, int n) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs.push_back(i + 1 == n ? iv.hi : iv.lo + (iv.hi - iv.lo) * i / (n - 1));
    }
    return xs;
}

void check_interval(const Interval& iv, const char* what) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.hi < iv.lo) {
        throw ParameterError(std::string(what) + " range must be finite with lo <= hi");
    }
}

void check_domain(const Domain& d) {
    if (d.u) check_interval(*d.u, "u");
    if (d.v) check_interval(*d.v, "v");
}

constexpr int kProbeCount = 5;

}  // namespace

const char* to_string(Family family) noexcept {
    switch (family) {
        case Family::explicit_patch: return "explicit";
        case Family::translation: return "translation";
        case Family::aminov: return "aminov";
        case Family::gradient: return "gradient";
    }
    return "?";
}

std::optional<Family> family_from_string(std::string_view text) {
    if (text == "explicit") return Family::explicit_patch;
    if (text == "translation") return Family::translation;
    if (text == "aminov") return Family::aminov;
    if (text == "gradient") return Family::gradient;
    return std::nullopt;
}

Profile make_profile(std::string_view text, std::optional<Interval> domain) {
    if (domain) check_interval(*domain, "profile");
    return Profile{parse_restricted(text, kProfileVars, "profile"), domain};
}

Jet1 Profile::eval(double u) const {
    if (domain && !domain->contains(u)) {
        throw DomainError("profile", u, "outside the profile domain");
    }
    return restrict_u(expr.eval({seed_u(u), std::nullopt}));
}

Jet1 profile_eval(const Profile& p, double u) { return p.eval(u); }

PatchJets MongePatch::eval(double u, double v) const {
    if (!domain_.contains(u, v)) {
        throw DomainError("patch", domain_.u && !domain_.u->contains(u) ? u : v,
                          "point (" + format_real(u) + ", " + format_real(v) + ") outside the patch domain");
    }
    return std::visit(
        [&](const auto& p) -> PatchJets {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ExplicitPayload>) {
                return {eval_uv(p.f, u, v), eval_uv(p.g, u, v)};
            } else if constexpr (std::is_same_v<T, TranslationPayload>) {
                return {eval_uv(p.f3, u, v) + eval_uv(p.g3, u, v), eval_uv(p.f4, u, v) + eval_uv(p.g4, u, v)};
            } else if constexpr (std::is_same_v<T, AminovPayload>) {
                const Jet2 r = lift_u(p.r.eval(u));
                const Jet2 t = seed_v(u, v);
                return {r * cos(t), r * sin(t)};
            } else {
                return {eval_uv(p.p, u, v), eval_uv(p.q, u, v)};
            }
        },
        payload_);
}

void MongePatch::probe_domain() const {
    if (!domain_.bounded()) return;
    try {
        for (double u : probe_points(*domain_.u, kProbeCount)) {
            for (double v : probe_points(*domain_.v, kProbeCount)) {
                (void)eval(u, v);
            }
        }
    } catch (const DomainError& e) {
        throw ValidationError(std::string("patch not evaluable on its domain: ") + e.what());
    }
}

PatchJets eval_patch(const MongePatch& patch, double u, double v) { return patch.eval(u, v); }

MongePatch make_explicit(std::string_view f_expr, std::string_view g_expr, Domain domain) {
    check_domain(domain);
    MongePatch patch(Family::explicit_patch,
                     ExplicitPayload{parse_restricted(f_expr, kSurfaceVars, "f"),
                                     parse_restricted(g_expr, kSurfaceVars, "g")},
                     domain);
    patch.probe_domain();
    return patch;
}

MongePatch make_translation(std::string_view f3, std::string_view f4, std::string_view g3, std::string_view g4,
                            Domain domain) {
    check_domain(domain);
    const VarSet only_v{Var::v};
    MongePatch patch(Family::translation,
                     TranslationPayload{parse_restricted(f3, kProfileVars, "f3"), parse_restricted(f4, kProfileVars, "f4"),
                                        parse_restricted(g3, only_v, "g3"), parse_restricted(g4, only_v, "g4")},
                     domain);
    patch.probe_domain();
    return patch;
}

MongePatch make_aminov(Profile r, std::optional<Interval> v_range) {
    if (v_range) check_interval(*v_range, "v");
    if (r.domain) {
        try {
            for (double u : probe_points(*r.domain, kProbeCount)) (void)r.eval(u);
        } catch (const DomainError& e) {
            throw ValidationError(std::string("profile not evaluable on its u-range: ") + e.what());
        }
    }
    Domain domain{r.domain, v_range};
    MongePatch patch(Family::aminov, AminovPayload{std::move(r)}, domain);
    return patch;
}

MongePatch make_aminov(std::string_view r_expr, std::optional<Interval> u_range, std::optional<Interval> v_range) {
    return make_aminov(make_profile(r_expr, u_range), v_range);
}

MongePatch make_gradient(std::string_view p_expr, std::string_view q_expr, Domain domain, SampleSpec sample) {
    check_domain(domain);
    if (sample.nu < 2 || sample.nv < 2 || !(sample.integ_tol > 0.0)) {
        throw ParameterError("gradient sample grid needs nu, nv >= 2 and integ_tol > 0");
    }
    Expr p = parse_restricted(p_expr, kSurfaceVars, "p");
    Expr q = parse_restricted(q_expr, kSurfaceVars, "q");

    const Interval ur = domain.u.value_or(sample.fallback);
    const Interval vr = domain.v.value_or(sample.fallback);
    double worst = 0.0;
    bool integrable = true;
    int checked = 0;
    for (double u : probe_points(ur, sample.nu)) {
        for (double v : probe_points(vr, sample.nv)) {
            Jet2 pj, qj;
            try {
                pj = eval_uv(p, u, v);
                qj = eval_uv(q, u, v);
            } catch (const DomainError& e) {
                if (domain.bounded()) {
                    throw ValidationError(std::string("patch not evaluable on its domain: ") + e.what());
                }
                continue;
            }
            ++checked;
            const double gap = std::abs(pj.dv - qj.du);
            worst = std::max(worst, gap);
            if (gap >= sample.integ_tol * std::max({1.0, std::abs(pj.dv), std::abs(qj.du)})) integrable = false;
        }
    }

    if (checked > 0 && integrable) {
        MongePatch patch(Family::gradient, GradientPayload{std::move(p), std::move(q)}, domain);
        patch.integrability_residual_ = worst;
        return patch;
    }
    MongePatch patch(Family::explicit_patch, ExplicitPayload{std::move(p), std::move(q)}, domain);
    patch.integrability_residual_ = worst;
    patch.warnings_.push_back(checked == 0 ? "integrability could not be checked: no sample point was evaluable"
                                           : "integrability check failed: max |p_v - q_u| = " + format_real(worst) +
                                                 "; treated as an explicit patch");
    return patch;
}

}  // namespace monge4
