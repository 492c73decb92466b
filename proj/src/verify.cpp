#include "monge4/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "monge4/classify.hpp"
#include "monge4/error.hpp"
#include "monge4/expr.hpp"
#include "monge4/forms.hpp"
#include "monge4/grid.hpp"
#include "monge4/invariants.hpp"
#include "monge4/patch.hpp"

namespace monge4 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome bound(const char* what, double worst, double limit) {
    return {worst < limit, std::string(what) + " " + format_real(worst) + " (limit " + format_real(limit) + ")"};
}

struct SampledPatch {
    std::string label;
    MongePatch patch;
    Interval u;
    Interval v;
};

std::vector<SampledPatch> sample_families() {
    std::vector<SampledPatch> out;
    auto add = [&](std::string label, MongePatch p, Interval u, Interval v) {
        out.push_back({std::move(label), std::move(p), u, v});
    };
    add("flat translation example", make_explicit("u^2+v^2", "u^2-v^2"), {-2, 2}, {-2, 2});
    add("explicit trig", make_explicit("sin(u)*cos(v)", "u*v"), {-1.5, 1.5}, {-1.5, 1.5});
    add("explicit mixed", make_explicit("exp(0.3*u)*sin(v)", "0.5*u^3-v"), {-1, 1}, {-1, 1});
    add("explicit log/sqrt", make_explicit("log(2+u)*v", "sqrt(3+u*v)"), {-1, 1}, {-1, 1});
    add("translation", make_translation("sin(u)", "u^3/3", "cos(v)", "0.5*v^2"), {-1, 1}, {-1, 1});
    for (const char* r : {"u", "u^2", "exp(u)", "0.5*exp(u)", "sin(u)+2", "1"}) {
        add(std::string("aminov r=") + r, make_aminov(r, Interval{-1, 1}), {-1, 1}, {0, kTwoPi});
    }
    add("gradient e^u cos v", make_gradient("exp(u)*cos(v)", "-exp(u)*sin(v)"), {-1, 1}, {0, kTwoPi});
    add("gradient poly-trig", make_gradient("u*v^2 + cos(u+v)", "u^2*v + cos(u+v)"), {-1, 1}, {-1, 1});
    add("gradient u^3 v", make_gradient("3*u^2*v", "u^3"), {-1, 1}, {-1, 1});
    return out;
}

template <class Fn>
void for_random_points(const std::vector<SampledPatch>& families, std::mt19937_64& rng, int per_family, Fn&& fn) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& fam : families) {
        for (int k = 0; k < per_family; ++k) {
            const double u = fam.u.lo + (fam.u.hi - fam.u.lo) * unit(rng);
            const double v = fam.v.lo + (fam.v.hi - fam.v.lo) * unit(rng);
            fn(fam, u, v);
        }
    }
}

double jet_fd_error(const std::function<Jet2(const Jet2&, const Jet2&)>& f, double u, double v) {
    constexpr double h = 1e-4;
    auto val = [&](double a, double b) { return f(seed_u(a, b), seed_v(a, b)).val; };
    const Jet2 j = f(seed_u(u, v), seed_v(u, v));
    const double fd[5] = {
        (val(u + h, v) - val(u - h, v)) / (2 * h),
        (val(u, v + h) - val(u, v - h)) / (2 * h),
        (val(u + h, v) - 2 * val(u, v) + val(u - h, v)) / (h * h),
        (val(u + h, v + h) - val(u + h, v - h) - val(u - h, v + h) + val(u - h, v - h)) / (4 * h * h),
        (val(u, v + h) - 2 * val(u, v) + val(u, v - h)) / (h * h),
    };
    const double ex[5] = {j.du, j.dv, j.duu, j.duv, j.dvv};
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) worst = std::max(worst, std::abs(ex[k] - fd[k]) / std::max(1.0, std::abs(ex[k])));
    return worst;
}

}  // namespace

std::vector<CheckResult> run_identity_suite() {
    std::vector<CheckResult> results;
    auto check = [&](std::string name, const std::function<Outcome()>& body) {
        CheckResult r{std::move(name), false, {}};
        try {
            const Outcome o = body();
            r.passed = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    };

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<SampledPatch> families = sample_families();

    check("jet.finite_difference_agreement", [&] {
        const char* exprs[] = {"u^2*v", "exp(u)*cos(v)", "sin(u*v)/(2+cos(u))", "sqrt(4+u^2)*log(3+v)",
                               "tan(0.3*u)*sinh(v)-cosh(u*v)", "(1+u^2)^1.5/(2+v)", "2^u*abs(v+5)"};
        double worst = 0.0;
        for (const char* text : exprs) {
            const Expr e = parse_expression(text);
            for (int k = 0; k < 20; ++k) {
                const double u = -1 + 2 * unit(rng), v = -1 + 2 * unit(rng);
                worst = std::max(worst, jet_fd_error([&](const Jet2& a, const Jet2& b) { return e.eval({a, b}); }, u, v));
            }
        }
        return bound("max relative deviation", worst, 1e-6);
    });

    check("jet.arithmetic_laws", [&] {
        double worst = 0.0;
        auto gap = [&](const Jet2& x, const Jet2& y) {
            const double a[6] = {x.val, x.du, x.dv, x.duu, x.duv, x.dvv};
            const double b[6] = {y.val, y.du, y.dv, y.duu, y.duv, y.dvv};
            for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(a[k])));
        };
        for (int k = 0; k < 200; ++k) {
            const double u = -2 + 4 * unit(rng), v = -2 + 4 * unit(rng);
            const Jet2 x = sin(seed_u(u, v)) * seed_v(u, v);
            const Jet2 y = exp(seed_v(u, v) * 0.5) + seed_u(u, v);
            const Jet2 z = cos(seed_u(u, v) * seed_v(u, v));
            gap(x + y, y + x);
            gap(x * y, y * x);
            gap((x + y) + z, x + (y + z));
            gap(x * (y + z), x * y + x * z);
        }
        return bound("max relative deviation", worst, 1e-12);
    });

    check("jet.seed_identities", [&] {
        const Jet2 u = parse_expression("u").eval({seed_u(0.7, -0.2), seed_v(0.7, -0.2)});
        const bool ok = u == Jet2{0.7, 1, 0, 0, 0, 0} && seed_const(5) == Jet2{5, 0, 0, 0, 0, 0};
        return Outcome{ok, ok ? "u seeds to {u,1,0,0,0,0}" : "seed mismatch"};
    });

    check("expr.round_trip", [&] {
        const char* corpus[] = {"u", "-u^2", "2^3^2", "sin(u)*cos(v)-3.5e-2/(u+v)", "-(u-v)^-2", "abs(-u)*pi+e",
                                "((u))*(((v)))", "exp(-u^2/2)/sqrt(2*pi)", "1.25e+3*u - 0.001*v"};
        for (const char* text : corpus) {
            const Expr a = parse_expression(text);
            const Expr b = parse_expression(a.to_string());
            if (!structurally_equal(a, b)) return Outcome{false, std::string("round trip changed '") + text + "'"};
        }
        return Outcome{true, "pretty-print re-parses to identical trees"};
    });

    check("expr.constant_evaluation", [&] {
        const double got = parse_expression("(1.5+2.25)*4/3-2^3^2/512").eval({}).val;
        return bound("deviation", std::abs(got - ((1.5 + 2.25) * 4 / 3 - 1.0)), 1e-15);
    });

    check("expr.unbalanced_parentheses_rejected", [&] {
        for (const char* text : {"(u", "u)", "sin(u", "((u)", "u*(v", ")("}) {
            try {
                (void)parse_expression(text);
                return Outcome{false, std::string("accepted '") + text + "'"};
            } catch (const ParseError&) {
            }
        }
        return Outcome{true, "all rejected"};
    });

    check("patch.finite_difference_agreement", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 20, [&](const SampledPatch& fam, double u, double v) {
            worst = std::max(worst, jet_fd_error([&](const Jet2& a, const Jet2& b) {
                return fam.patch.eval(a.val, b.val).f;
            }, u, v));
            worst = std::max(worst, jet_fd_error([&](const Jet2& a, const Jet2& b) {
                return fam.patch.eval(a.val, b.val).g;
            }, u, v));
        });
        return bound("max relative deviation", worst, 1e-6);
    });

    check("patch.translation_mixed_partials_vanish", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 50, [&](const SampledPatch& fam, double u, double v) {
            if (fam.patch.family() != Family::translation) return;
            const PatchJets j = fam.patch.eval(u, v);
            worst = std::max({worst, std::abs(j.f.duv), std::abs(j.g.duv)});
        });
        return Outcome{worst == 0.0, "max |f_uv|, |g_uv| = " + format_real(worst)};
    });

    check("patch.aminov_radius", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 50, [&](const SampledPatch& fam, double u, double v) {
            if (fam.patch.family() != Family::aminov) return;
            const PatchJets j = fam.patch.eval(u, v);
            const double r = std::get<AminovPayload>(fam.patch.payload()).r.eval(u).val;
            worst = std::max(worst, std::abs(j.f.val * j.f.val + j.g.val * j.g.val - r * r) / std::max(1.0, r * r));
        });
        return bound("max |f^2+g^2-r^2|", worst, 1e-12);
    });

    check("forms.first_form_bounds", [&] {
        double worst_gap = 0.0;
        double min_w2 = 1e300;
        bool bounds = true;
        for_random_points(families, rng, 100, [&](const SampledPatch& fam, double u, double v) {
            const FirstForm ff = first_form(fam.patch.eval(u, v));
            bounds = bounds && ff.E >= 1 && ff.G >= 1 && ff.A >= 1 && ff.C >= 1 && ff.W2 >= 1;
            min_w2 = std::min(min_w2, ff.W2);
            worst_gap = std::max(worst_gap, std::abs(ff.W2 - (ff.A * ff.C - ff.B * ff.B)) / ff.W2);
        });
        return Outcome{bounds && worst_gap < 1e-10, "min W2 " + format_real(min_w2) + ", max |EG-F^2-(AC-B^2)|/W2 " +
                                                        format_real(worst_gap)};
    });

    check("forms.frame_orthonormality", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 1000 / static_cast<int>(families.size()) + 1,
                          [&](const SampledPatch& fam, double u, double v) {
                              const PointGeometry geo = geometry_at(fam.patch, u, v);
                              const auto t = tangents(geo.jets);
                              const NormalFrame& n = geo.frame;
                              worst = std::max({worst, std::abs(dot(n.N1, n.N1) - 1), std::abs(dot(n.N2, n.N2) - 1),
                                                std::abs(dot(n.N1, n.N2)), std::abs(dot(n.N1, t[0])),
                                                std::abs(dot(n.N1, t[1])), std::abs(dot(n.N2, t[0])),
                                                std::abs(dot(n.N2, t[1]))});
                          });
        return bound("max residual", worst, 1e-12);
    });

    check("forms.orthonormal_frame_inverse", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 50, [&](const SampledPatch& fam, double u, double v) {
            const PointGeometry geo = geometry_at(fam.patch, u, v);
            for (int k = 0; k < 2; ++k) {
                const Sym2 c = from_orthonormal(geo.second.h[k], geo.first);
                const Sym2& ref = geo.second.c[k];
                const double scale = std::max({1e-300, std::abs(ref.m11), std::abs(ref.m12), std::abs(ref.m22)});
                worst = std::max({worst, std::abs(c.m11 - ref.m11) / scale, std::abs(c.m12 - ref.m12) / scale,
                                  std::abs(c.m22 - ref.m22) / scale});
            }
        });
        return bound("max relative deviation", worst, 1e-10);
    });

    check("forms.aminov_metric_structure", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 50, [&](const SampledPatch& fam, double u, double v) {
            if (fam.patch.family() != Family::aminov) return;
            const Jet1 r = std::get<AminovPayload>(fam.patch.payload()).r.eval(u);
            const FirstForm ff = first_form(fam.patch.eval(u, v));
            const double B = (r.d1 * r.d1 - r.val * r.val) * std::sin(v) * std::cos(v);
            worst = std::max({worst, std::abs(ff.F), std::abs(ff.B - B)});
        });
        return bound("max |F|, |B - (r'^2-r^2) sin v cos v|", worst, 1e-12);
    });

    check("invariants.cross_path_agreement", [&] {
        double worst = 0.0;
        int n = 0;
        for_random_points(families, rng, 1000 / static_cast<int>(families.size()) + 1,
                          [&](const SampledPatch& fam, double u, double v) {
                              const PointGeometry geo = geometry_at(fam.patch, u, v);
                              const InvariantSet inv = invariants_from_geometry(geo);
                              const double sK = 1.0 + std::abs(inv.K), sH = 1.0 + inv.Hnorm;
                              const MeanCurvature hm = mean_curvature_monge(geo.jets, geo.first);
                              worst = std::max({worst,
                                                std::abs(inv.K - gauss_curvature_monge(geo.jets, geo.first)) / sK,
                                                std::abs(inv.KN - normal_torsion_monge(geo.jets, geo.first)) / sK,
                                                std::abs(inv.H1 - hm.H1) / sH, std::abs(inv.H2 - hm.H2) / sH});
                              ++n;
                          });
        return bound(("max deviation over " + std::to_string(n) + " points:").c_str(), worst, 1e-10);
    });

    check("invariants.frame_rotation_invariance", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 30, [&](const SampledPatch& fam, double u, double v) {
            const PointGeometry geo = geometry_at(fam.patch, u, v);
            const double theta = kTwoPi * unit(rng);
            const FramedSecondForm rot = rotate_normal_frame(geo.frame, geo.second, theta);
            const double K0 = gauss_curvature(geo.second, geo.first), K1 = gauss_curvature(rot.form, geo.first);
            const double N0 = normal_torsion(geo.second, geo.first), N1 = normal_torsion(rot.form, geo.first);
            const double H0 = mean_curvature(geo.second).Hnorm, H1 = mean_curvature(rot.form).Hnorm;
            worst = std::max({worst, std::abs(K0 - K1) / (1 + std::abs(K0)), std::abs(N0 - N1) / (1 + std::abs(N0)),
                              std::abs(H0 - H1) / (1 + H0)});
        });
        return bound("max deviation", worst, 1e-10);
    });

    check("invariants.swap_flips_normal_torsion", [&] {
        double worst = 0.0;
        const MongePatch a = make_explicit("sin(u)*cos(v)", "u*v");
        const MongePatch b = make_explicit("u*v", "sin(u)*cos(v)");
        for (int k = 0; k < 50; ++k) {
            const double u = -1 + 2 * unit(rng), v = -1 + 2 * unit(rng);
            const InvariantSet ia = invariants_at(a, u, v), ib = invariants_at(b, u, v);
            worst = std::max({worst, std::abs(ia.KN + ib.KN), std::abs(ia.K - ib.K), std::abs(ia.Hnorm - ib.Hnorm)});
        }
        return bound("max |KN(f,g) + KN(g,f)|", worst, 1e-12);
    });

    check("invariants.gradient_patches_K_equals_KN", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 100, [&](const SampledPatch& fam, double u, double v) {
            if (fam.patch.family() != Family::gradient) return;
            const InvariantSet inv = invariants_at(fam.patch, u, v);
            worst = std::max(worst, std::abs(inv.K - inv.KN));
        });
        return bound("max |K - K_N|", worst, 1e-9);
    });

    check("invariants.exponential_profiles_K_plus_KN", [&] {
        double worst = 0.0, worst_d6 = 0.0;
        for (double lambda : {0.5, 1.0, 2.0}) {
            const MongePatch p = make_aminov(format_real(lambda) + "*exp(u)", Interval{-1, 1});
            const Profile& r = std::get<AminovPayload>(p.payload()).r;
            for (int k = 0; k < 50; ++k) {
                const double u = -1 + 2 * unit(rng), v = kTwoPi * unit(rng);
                const InvariantSet inv = invariants_at(p, u, v);
                worst = std::max(worst, std::abs(inv.K + inv.KN));
                worst_d6 = std::max(worst_d6, std::abs(k_plus_kn_residual(r.eval(u))));
            }
        }
        return Outcome{worst < 1e-10 && worst_d6 < 1e-12,
                       "max |K+K_N| " + format_real(worst) + ", max product residual " + format_real(worst_d6)};
    });

    check("invariants.aminov_closed_forms", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 50, [&](const SampledPatch& fam, double u, double v) {
            if (fam.patch.family() != Family::aminov) return;
            const InvariantSet inv = invariants_at(fam.patch, u, v);
            const AminovClosedForms cf = aminov_closed_forms(std::get<AminovPayload>(fam.patch.payload()).r.eval(u), u, v);
            worst = std::max({worst, relative_gap(inv.K, cf.inv.K, 1), relative_gap(inv.KN, cf.inv.KN, 1),
                              relative_gap(inv.H1, cf.inv.H1, 1), relative_gap(inv.H2, cf.inv.H2, 1),
                              relative_gap(inv.Hnorm, cf.inv.Hnorm, 1)});
        });
        return bound("max relative deviation", worst, 1e-10);
    });

    check("invariants.translation_closed_forms", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 200, [&](const SampledPatch& fam, double u, double v) {
            if (fam.patch.family() != Family::translation) return;
            const InvariantSet inv = invariants_at(fam.patch, u, v);
            const InvariantSet cf =
                translation_closed_forms(std::get<TranslationPayload>(fam.patch.payload()), u, v);
            worst = std::max({worst, relative_gap(inv.K, cf.K, 1), relative_gap(inv.KN, cf.KN, 1),
                              relative_gap(inv.H1, cf.H1, 1), relative_gap(inv.H2, cf.H2, 1)});
        });
        return bound("max relative deviation", worst, 1e-10);
    });

    check("classify.chen_expansion_vs_trace", [&] {
        double worst = 0.0;
        for_random_points(families, rng, 50, [&](const SampledPatch& fam, double u, double v) {
            const PointGeometry geo = geometry_at(fam.patch, u, v);
            const MeanCurvature H = mean_curvature(geo.second);
            if (H.Hnorm <= 1e-8) return;
            const double e = chen_residual_expansion(geo.second);
            const double t = *chen_residual_trace(geo.second);
            worst = std::max(worst, relative_gap(e, t, H.Hnorm * H.Hnorm * (1 + std::abs(e))));
        });
        return bound("max relative deviation", worst, 1e-10);
    });

    check("classify.aminov_surfaces_are_chen", [&] {
        double worst = 0.0;
        const GridSpec grid{-1, 1, 0, kTwoPi, 21, 21};
        for (const char* r : {"u", "u^2", "exp(u)", "0.5*exp(u)", "sin(u)+2", "1"}) {
            const ClassificationReport rep = classify_surface(make_aminov(r, Interval{-1, 1}), grid);
            worst = std::max(worst, rep[Predicate::chen].normalized_residual);
        }
        return bound("max normalized Chen residual", worst, 1e-9);
    });

    check("classify.minimal_implies_chen", [&] {
        double worst = 0.0;
        for (double lambda : {0.5, 1.0, 2.0}) {
            const MongePatch p = make_aminov(format_real(lambda) + "*exp(u)", Interval{-1, 1});
            for (int k = 0; k < 20; ++k) {
                const PointGeometry geo = geometry_at(p, -1 + 2 * unit(rng), kTwoPi * unit(rng));
                worst = std::max(worst, std::abs(chen_residual(geo.second)));
            }
        }
        return bound("max |Chen residual| at minimal points", worst, 1e-12);
    });

    check("classify.minimal_profile_solves_ode", [&] {
        double worst = 0.0;
        for (double a : {0.5, 1.0, 2.0, 3.0}) {
            for (int sigma : {1, -1}) {
                const Profile r = minimal_aminov_profile(a, 0.0, sigma);
                for (int k = 0; k <= 40; ++k) {
                    const Jet1 j = r.eval(-1.0 + k / 20.0);
                    worst = std::max(worst, std::abs(minimal_profile_residual(j)) / (1 + std::abs(j.val) * (1 + j.val * j.val)));
                }
            }
        }
        return bound("max minimality-ODE residual", worst, 1e-10);
    });

    check("classify.same_sign_reading_is_not_minimal", [&] {
        const Profile r = minimal_aminov_profile(1.0, 0.0, 1, ExponentSigns::same);
        const double res = minimal_profile_residual(r.eval(0.0));
        return Outcome{res > 1.0, "same-sign residual at u=0: " + format_real(res) + " (expected 4)"};
    });

    check("classify.wintgen_exponential_profiles", [&] {
        double worst = 0.0;
        bool sign_ok = true;
        for (double lambda : {0.5, 1.0, 2.0}) {
            const MongePatch p = make_aminov(format_real(lambda) + "*exp(u)", Interval{-1, 1});
            for (int k = 0; k < 20; ++k) {
                const double u = -1 + 2 * unit(rng), v = kTwoPi * unit(rng);
                worst = std::max(worst, std::abs(wintgen_deficit(invariants_at(p, u, v))));
            }
        }
        // Polynomial channel tracks the signed K + K_N - |H|^2.
        const MongePatch q = make_aminov("u^2", Interval{0.2, 2});
        for (int k = 0; k < 20; ++k) {
            const double u = 0.2 + 1.8 * unit(rng), v = kTwoPi * unit(rng);
            const Jet1 r = std::get<AminovPayload>(q.payload()).r.eval(u);
            const InvariantSet inv = invariants_at(q, u, v);
            const double d = inv.K + inv.KN - inv.Hnorm * inv.Hnorm;
            const double poly = wintgen_aminov_residual(r);
            const double factor = 4 * std::pow(1 + r.val * r.val, 2) * std::pow(1 + r.d1 * r.d1, 3);
            sign_ok = sign_ok && std::abs(poly - factor * d) <= 1e-9 * (1 + std::abs(poly));
        }
        return Outcome{worst < 1e-10 && sign_ok,
                       "max |deficit| " + format_real(worst) + (sign_ok ? ", polynomial channel consistent"
                                                                       : ", polynomial channel inconsistent")};
    });

    check("classify.ode_matches_closed_form", [&] {
        const ProfileTable t = integrate_profile_ode(0.5, 0.5, Interval{0, 1}, 1000);
        const double err = std::abs(t.rows.back().r - 0.5 * std::exp(1.0));
        return bound("|r(1) - e/2|", err, 1e-8);
    });

    check("grid.fd_convergence", [&] {
        const MongePatch p = make_aminov("u", Interval{0.5, 2}, Interval{0, std::numbers::pi});
        auto max_err = [&](int n) {
            const GridSpec spec{0.5, 2, 0, std::numbers::pi, n, n};
            const GridResult fd = fd_grid(sample_patch(p, spec));
            double worst = 0.0;
            const int stride = (n - 1) / 20;
            for (int i = stride; i < n - 1; i += stride) {
                for (int j = stride; j < n - 1; j += stride) {
                    const GridRow& row = fd.at(i, j);
                    worst = std::max(worst, std::abs(row.K - invariants_at(p, row.u, row.v).K));
                }
            }
            return worst;
        };
        const double ratio = max_err(41) / max_err(81);
        return Outcome{ratio >= 3.5 && ratio <= 4.5, "error ratio h : h/2 = " + format_real(ratio)};
    });

    check("grid.monge3_has_no_normal_torsion", [&] {
        const GridSpec spec{-1, 1, -1, 1, 21, 21};
        const GridResult fd = fd_grid(sample_patch(make_explicit("u^2+v^2", "0"), spec, SampleMode::monge3));
        double worst = 0.0;
        for (const GridRow& r : fd.rows) {
            if (r.ok()) worst = std::max(worst, std::abs(r.KN));
        }
        return bound("max |K_N|", worst, 1e-14);
    });

    check("grid.csv_round_trip", [&] {
        const GridSpec spec{-1.3, 0.7, 0.1, 2.9, 7, 9};
        const DiscretePatch dp = sample_patch(make_explicit("sin(u)*exp(v)", "u/3-v"), spec);
        std::stringstream ss;
        write_samples_csv(dp, ss);
        const DiscretePatch back = ingest_csv(ss);
        const bool same = back.f == dp.f && back.g == dp.g && back.u_coord == dp.u_coord && back.v_coord == dp.v_coord;
        return Outcome{same, same ? "bit-exact" : "values changed"};
    });

    return results;
}

}  // namespace monge4
