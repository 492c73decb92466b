#include "monge4/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "monge4/error.hpp"
#include "parallel.hpp"

namespace monge4 {

namespace {

double weighted_sq(const SecondForm& sf) {
    double s = 0.0;
    for (const Sym2& h : sf.h) s += h.m11 * h.m11 + 2.0 * h.m12 * h.m12 + h.m22 * h.m22;
    return s;
}

Mat2 as_matrix(const Sym2& h) { return {h.m11, h.m12, h.m12, h.m22}; }

Mat2 combine(double a, const Mat2& x, double b, const Mat2& y) {
    return {a * x.a11 + b * y.a11, a * x.a12 + b * y.a12, a * x.a21 + b * y.a21, a * x.a22 + b * y.a22};
}

std::string paren(double x) { return "(" + format_real(x) + ")"; }

}  // namespace

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22, x.a21 * y.a11 + x.a22 * y.a21,
            x.a21 * y.a12 + x.a22 * y.a22};
}

ShapeOperatorPair shape_operators(const SecondForm& sf) { return {as_matrix(sf.h[0]), as_matrix(sf.h[1])}; }

double chen_residual_expansion(const SecondForm& sf) {
    const Sym2& a = sf.h[0];
    const Sym2& b = sf.h[1];
    const double H1 = 0.5 * a.trace();
    const double H2 = 0.5 * b.trace();
    const double squares =
        a.m11 * a.m11 - b.m11 * b.m11 + a.m22 * a.m22 - b.m22 * b.m22 + 2.0 * a.m12 * a.m12 - 2.0 * b.m12 * b.m12;
    const double mixed = a.m11 * b.m11 + a.m22 * b.m22 + 2.0 * a.m12 * b.m12;
    return squares * H1 * H2 + mixed * (H2 * H2 - H1 * H1);
}

std::optional<double> chen_residual_trace(const SecondForm& sf) {
    const double H1 = 0.5 * sf.h[0].trace();
    const double H2 = 0.5 * sf.h[1].trace();
    const double n2 = H1 * H1 + H2 * H2;
    if (n2 == 0.0) return std::nullopt;
    const double n = std::sqrt(n2);
    const ShapeOperatorPair s = shape_operators(sf);
    const Mat2 t1 = combine(H1 / n, s.A1, H2 / n, s.A2);
    const Mat2 t2 = combine(H2 / n, s.A1, -H1 / n, s.A2);
    return (t1 * t2).trace() * n2;
}

double chen_residual(const SecondForm& sf) {
    const double e = chen_residual_expansion(sf);
    const MeanCurvature H = mean_curvature(sf);
    if (H.Hnorm > 1e-8) {
        const double t = *chen_residual_trace(sf);
        const double scale = weighted_sq(sf) * H.Hnorm * H.Hnorm;
        if (!(relative_gap(e, t, scale) <= kCrossCheckTol)) {
            throw ConsistencyError("internal cross-check failed for the Chen residual: " + format_real(e) + " vs " +
                                   format_real(t));
        }
    }
    return e;
}

double wintgen_deficit(const InvariantSet& inv) { return inv.K + std::abs(inv.KN) - inv.Hnorm * inv.Hnorm; }

double wintgen_aminov_residual(const Jet1& j) {
    const double r = j.val, r1 = j.d1, r2 = j.d2;
    const double p = 1.0 + r1 * r1;
    const double o = 1.0 + r * r;
    return 2.0 * r2 * o * p * (2.0 * r1 - r) + p * p * (4.0 * r * r1 - 4.0 * r1 * r1 - r * r) - r2 * r2 * o * o;
}

double k_plus_kn_residual(const Jet1& j) {
    const double r = j.val, r1 = j.d1, r2 = j.d2;
    return (r - r1) * (r1 * (1.0 + r1 * r1) - r2 * (1.0 + r * r));
}

double minimal_profile_residual(const Jet1& j) {
    const double r = j.val, r1 = j.d1, r2 = j.d2;
    return r2 * (1.0 + r * r) - r * (1.0 + r1 * r1);
}

double pseudo_umbilical_residual(const SecondForm& sf) {
    const MeanCurvature H = mean_curvature(sf);
    const ShapeOperatorPair s = shape_operators(sf);
    const Mat2 ah = combine(H.H1, s.A1, H.H2, s.A2);
    const double norm = std::sqrt(ah.a11 * ah.a11 + ah.a12 * ah.a12 + ah.a21 * ah.a21 + ah.a22 * ah.a22);
    return std::max(std::abs(ah.a12), std::abs(ah.a11 - ah.a22)) / (1.0 + norm);
}

int first_normal_rank(const SecondForm& sf, double rel_tol) {
    const Sym2& a = sf.h[0];
    const Sym2& b = sf.h[1];
    const double t = a.m11 * a.m11 + a.m12 * a.m12 + a.m22 * a.m22 + b.m11 * b.m11 + b.m12 * b.m12 + b.m22 * b.m22;
    if (t == 0.0) return 0;
    // det(M M^T) as a sum of squared 2x2 minors (Cauchy-Binet).
    const double m1 = a.m11 * b.m12 - a.m12 * b.m11;
    const double m2 = a.m11 * b.m22 - a.m22 * b.m11;
    const double m3 = a.m12 * b.m22 - a.m22 * b.m12;
    const double d = m1 * m1 + m2 * m2 + m3 * m3;
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * d));
    const double s1 = std::sqrt(0.5 * (t + disc));
    const double s2 = std::sqrt(d) / s1;
    return s2 > rel_tol * s1 ? 2 : 1;
}

Profile minimal_aminov_profile(double a, double b, int sigma, ExponentSigns signs, std::optional<Interval> domain) {
    if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b)) {
        throw ParameterError("minimal Aminov profile needs a finite a != 0 and finite b");
    }
    if (sigma != 1 && sigma != -1) {
        throw ParameterError("sigma must be +1 or -1");
    }
    const std::string s = "((u + " + paren(b) + ") / " + paren(a) + ")";
    const std::string sg = paren(static_cast<double>(sigma));
    const std::string outer = signs == ExponentSigns::opposite ? "(-" + sg + ")" : sg;
    const std::string text = "(1 / (2 * " + paren(a) + ")) * (" + paren(a) + "^2 * exp(2 * " + sg + " * " + s +
                             ") + " + paren(a) + "^2 - 1) * exp(" + outer + " * " + s + ")";
    return make_profile(text, domain);
}

ProfileTable integrate_profile_ode(double r0, double r0p, Interval range, int steps) {
    if (steps < 2) throw ParameterError("ODE integration needs steps >= 2");
    if (!std::isfinite(r0) || !std::isfinite(r0p) || !std::isfinite(range.lo) || !std::isfinite(range.hi) ||
        !(range.hi > range.lo)) {
        throw ParameterError("ODE integration needs finite initial values and a range with hi > lo");
    }
    const double h = (range.hi - range.lo) / steps;
    auto rhs = [](double r, double rp) { return r * (1.0 + rp * rp) / (1.0 + r * r); };

    ProfileTable table;
    table.rows.resize(static_cast<std::size_t>(steps) + 1);
    double r = r0, rp = r0p;
    for (int i = 0; i <= steps; ++i) {
        auto& row = table.rows[static_cast<std::size_t>(i)];
        row.u = i == steps ? range.hi : range.lo + i * h;
        row.r = r;
        row.rp = rp;
        if (i == steps) break;
        const double k1r = rp, k1p = rhs(r, rp);
        const double k2r = rp + 0.5 * h * k1p, k2p = rhs(r + 0.5 * h * k1r, rp + 0.5 * h * k1p);
        const double k3r = rp + 0.5 * h * k2p, k3p = rhs(r + 0.5 * h * k2r, rp + 0.5 * h * k2p);
        const double k4r = rp + h * k3p, k4p = rhs(r + h * k3r, rp + h * k3p);
        r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        rp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        if (!std::isfinite(r) || !std::isfinite(rp)) {
            throw DomainError("ode", row.u + h, "integration produced a non-finite state");
        }
    }

    // r'' by differentiating the r' column: fourth order where five nodes are
    // available, second order otherwise.
    const auto& rows = table.rows;
    const std::size_t n = rows.size();
    auto y = [&](std::size_t k) { return rows[k].rp; };
    for (std::size_t i = 0; i < n; ++i) {
        double d;
        if (n >= 5) {
            if (i >= 2 && i + 2 < n) {
                d = (-y(i + 2) + 8.0 * y(i + 1) - 8.0 * y(i - 1) + y(i - 2)) / (12.0 * h);
            } else if (i == 0) {
                d = (-25.0 * y(0) + 48.0 * y(1) - 36.0 * y(2) + 16.0 * y(3) - 3.0 * y(4)) / (12.0 * h);
            } else if (i == 1) {
                d = (-3.0 * y(0) - 10.0 * y(1) + 18.0 * y(2) - 6.0 * y(3) + y(4)) / (12.0 * h);
            } else if (i == n - 1) {
                d = (25.0 * y(n - 1) - 48.0 * y(n - 2) + 36.0 * y(n - 3) - 16.0 * y(n - 4) + 3.0 * y(n - 5)) /
                    (12.0 * h);
            } else {
                d = (3.0 * y(n - 1) + 10.0 * y(n - 2) - 18.0 * y(n - 3) + 6.0 * y(n - 4) - y(n - 5)) / (12.0 * h);
            }
        } else if (i == 0) {
            d = (-3.0 * y(0) + 4.0 * y(1) - y(2)) / (2.0 * h);
        } else if (i == n - 1) {
            d = (3.0 * y(n - 1) - 4.0 * y(n - 2) + y(n - 3)) / (2.0 * h);
        } else {
            d = (y(i + 1) - y(i - 1)) / (2.0 * h);
        }
        auto& row = table.rows[i];
        row.rpp = d;
        row.residual = minimal_profile_residual({row.r, row.rp, row.rpp});
        table.max_abs_residual = std::max(table.max_abs_residual, std::abs(row.residual));
    }
    return table;
}

MongePatch minimal_translation_family(const TranslationFamilyParams& p) {
    for (double x : {p.c3, p.c4, p.e3, p.e4, p.p3, p.p4, p.a, p.b, p.c, p.d}) {
        if (!std::isfinite(x)) throw ParameterError("translation family parameters must be finite");
    }
    if (!(p.a > 0.0) || !(p.b > 0.0)) throw ParameterError("translation family needs a > 0 and b > 0");
    const double norm = p.c3 * p.c3 + p.c4 * p.c4;
    if (!(norm > 0.0)) throw ParameterError("translation family needs c3^2 + c4^2 > 0");

    const double sa = std::sqrt(p.a), sb = std::sqrt(p.b);
    auto f_k = [&](double ck, double ek) {
        return paren(ck / norm) + " * (log(abs(cos(" + paren(sa) + " * u))) + " + paren(p.c) + " * u) + " + paren(ek) +
               " * u";
    };
    auto g_k = [&](double ck, double pk) {
        return paren(ck / norm) + " * (-log(abs(cos(" + paren(sb) + " * v))) + " + paren(p.d) + " * v) + " +
               paren(pk) + " * v";
    };
    constexpr double shrink = 1.0 - 1e-9;
    const double hu = std::numbers::pi / (2.0 * sa) * shrink;
    const double hv = std::numbers::pi / (2.0 * sb) * shrink;
    return make_translation(f_k(p.c3, p.e3), f_k(p.c4, p.e4), g_k(p.c3, p.p3), g_k(p.c4, p.p4),
                            Domain{Interval{-hu, hu}, Interval{-hv, hv}});
}

double max_mean_curvature(const MongePatch& patch, const GridSpec& grid) {
    grid.validate();
    double worst = 0.0;
    for (int i = 0; i < grid.nu; ++i) {
        for (int j = 0; j < grid.nv; ++j) {
            try {
                worst = std::max(worst, invariants_at(patch, grid.u_at(i), grid.v_at(j)).Hnorm);
            } catch (const DomainError&) {
            }
        }
    }
    return worst;
}

const char* to_string(Predicate p) noexcept {
    switch (p) {
        case Predicate::minimal: return "minimal";
        case Predicate::chen: return "chen";
        case Predicate::wintgen_ideal: return "wintgen_ideal";
        case Predicate::pseudo_umbilical: return "pseudo_umbilical";
        case Predicate::flat: return "flat";
        case Predicate::k_plus_kn_zero: return "k_plus_kn_zero";
    }
    return "?";
}

std::optional<Predicate> predicate_from_string(std::string_view text) {
    if (text == "wintgen") return Predicate::wintgen_ideal;
    for (Predicate p : kAllPredicates) {
        if (text == to_string(p)) return p;
    }
    return std::nullopt;
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

const char* to_string(ChenQualifier q) noexcept {
    switch (q) {
        case ChenQualifier::not_chen: return "not_chen";
        case ChenQualifier::trivial_minimal: return "trivial_minimal";
        case ChenQualifier::trivial_pseudo_umbilical: return "trivial_pseudo_umbilical";
        case ChenQualifier::trivial_low_rank: return "trivial_low_rank";
        case ChenQualifier::non_trivial: return "non_trivial";
        case ChenQualifier::indeterminate: return "indeterminate";
    }
    return "?";
}

double residual_scale(const InvariantSet& inv) {
    return 1.0 + std::max({std::abs(inv.K), std::abs(inv.KN), inv.Hnorm * inv.Hnorm});
}

PointResiduals point_residuals(const PointGeometry& geo, double rank_tol) {
    PointResiduals out;
    out.inv = invariants_from_geometry(geo);
    out.chen = chen_residual(geo.second);
    out.wintgen = wintgen_deficit(out.inv);
    out.normal_rank = first_normal_rank(geo.second, rank_tol);
    auto set = [&](Predicate p, double value) { out.residual[static_cast<std::size_t>(p)] = value; };
    set(Predicate::minimal, out.inv.Hnorm);
    set(Predicate::chen, std::abs(out.chen));
    set(Predicate::wintgen_ideal, std::abs(out.wintgen));
    set(Predicate::pseudo_umbilical, pseudo_umbilical_residual(geo.second));
    set(Predicate::flat, std::max(std::abs(out.inv.K), std::abs(out.inv.KN)));
    set(Predicate::k_plus_kn_zero, std::abs(out.inv.K + out.inv.KN));
    return out;
}

ClassificationReport classify_surface(const MongePatch& patch, const GridSpec& grid, const Tolerances& tol,
                                      int workers) {
    grid.validate();
    if (!(tol.tol > 0.0) || !(tol.rank_tol > 0.0)) throw ParameterError("tolerances must be positive");

    struct Slot {
        std::optional<PointResiduals> value;
        std::string error;
    };
    std::vector<Slot> slots(grid.size());
    detail::parallel_for(slots.size(), workers, [&](std::size_t k) {
        const int i = static_cast<int>(k / static_cast<std::size_t>(grid.nv));
        const int j = static_cast<int>(k % static_cast<std::size_t>(grid.nv));
        try {
            slots[k].value = point_residuals(geometry_at(patch, grid.u_at(i), grid.v_at(j)), tol.rank_tol);
        } catch (const Error& e) {
            slots[k].error = e.what();
        }
    });

    ClassificationReport report;
    report.grid = grid;
    report.tolerances = tol;
    for (const Slot& s : slots) {
        if (!s.value) {
            if (report.failed_points++ == 0) report.first_failure = s.error;
            continue;
        }
        ++report.evaluated_points;
        const double scale = residual_scale(s.value->inv);
        for (std::size_t p = 0; p < kAllPredicates.size(); ++p) {
            auto& r = report.results[p];
            r.max_residual = std::max(r.max_residual, s.value->residual[p]);
            r.normalized_residual = std::max(r.normalized_residual, s.value->residual[p] / scale);
        }
        report.first_normal_rank = std::max(report.first_normal_rank, s.value->normal_rank);
    }
    for (auto& r : report.results) {
        if (report.failed_points > 0) {
            r.verdict = Verdict::indeterminate;
        } else {
            r.verdict = r.normalized_residual < tol.tol ? Verdict::holds : Verdict::fails;
        }
    }

    auto holds = [&](Predicate p) { return report[p].verdict == Verdict::holds; };
    if (report.failed_points > 0) {
        report.chen_qualifier = ChenQualifier::indeterminate;
    } else if (!holds(Predicate::chen)) {
        report.chen_qualifier = ChenQualifier::not_chen;
    } else if (holds(Predicate::minimal)) {
        report.chen_qualifier = ChenQualifier::trivial_minimal;
    } else if (holds(Predicate::pseudo_umbilical)) {
        report.chen_qualifier = ChenQualifier::trivial_pseudo_umbilical;
    } else if (report.first_normal_rank <= 1) {
        report.chen_qualifier = ChenQualifier::trivial_low_rank;
    } else {
        report.chen_qualifier = ChenQualifier::non_trivial;
    }
    return report;
}

}  // namespace monge4
