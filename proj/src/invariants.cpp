#include "monge4/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "monge4/error.hpp"

namespace monge4 {

namespace {

double second_partials_sq(const PatchJets& j) {
    return j.f.duu * j.f.duu + j.f.duv * j.f.duv + j.f.dvv * j.f.dvv + j.g.duu * j.g.duu + j.g.duv * j.g.duv +
           j.g.dvv * j.g.dvv;
}

void cross_check(const char* what, double a, double b, double scale) {
    const double gap = relative_gap(a, b, scale);
    if (!(gap <= kCrossCheckTol)) {
        throw ConsistencyError(std::string("internal cross-check failed for ") + what + ": " + format_real(a) +
                               " vs " + format_real(b) + " (relative gap " + format_real(gap) + ")");
    }
}

}  // namespace

double relative_gap(double a, double b, double scale) {
    const double denom = std::max({std::abs(a), std::abs(b), std::abs(scale), std::numeric_limits<double>::min()});
    return std::abs(a - b) / denom;
}

double gauss_curvature(const SecondForm& sf, const FirstForm& ff) {
    double sum = 0.0;
    for (const Sym2& c : sf.c) sum += c.m11 * c.m22 - c.m12 * c.m12;
    return sum / ff.W2;
}

double gauss_curvature_monge(const PatchJets& j, const FirstForm& ff) {
    const Jet2& f = j.f;
    const Jet2& g = j.g;
    const double num = ff.C * (f.duu * f.dvv - f.duv * f.duv) -
                       ff.B * (f.duu * g.dvv + g.duu * f.dvv - 2.0 * f.duv * g.duv) +
                       ff.A * (g.duu * g.dvv - g.duv * g.duv);
    return num / (ff.W2 * ff.W2);
}

double normal_torsion(const SecondForm& sf, const FirstForm& ff) {
    const Sym2& a = sf.c[0];
    const Sym2& b = sf.c[1];
    const double num = ff.E * (a.m12 * b.m22 - b.m12 * a.m22) - ff.F * (a.m11 * b.m22 - b.m11 * a.m22) +
                       ff.G * (a.m11 * b.m12 - b.m11 * a.m12);
    // One factor 1/W^2 raises an index, the other 1/W normalises the area form.
    return num / (ff.W2 * std::sqrt(ff.W2));
}

double normal_torsion_monge(const PatchJets& j, const FirstForm& ff) {
    const Jet2& f = j.f;
    const Jet2& g = j.g;
    const double num = ff.E * (f.duv * g.dvv - g.duv * f.dvv) - ff.F * (f.duu * g.dvv - g.duu * f.dvv) +
                       ff.G * (f.duu * g.duv - g.duu * f.duv);
    return num / (ff.W2 * ff.W2);
}

MeanCurvature mean_curvature(const SecondForm& sf) {
    MeanCurvature m;
    m.H1 = 0.5 * sf.h[0].trace();
    m.H2 = 0.5 * sf.h[1].trace();
    m.Hnorm = std::sqrt(m.H1 * m.H1 + m.H2 * m.H2);
    return m;
}

MeanCurvature mean_curvature_monge(const PatchJets& j, const FirstForm& ff) {
    const Jet2& f = j.f;
    const Jet2& g = j.g;
    const double sa = std::sqrt(ff.A);
    const double w = std::sqrt(ff.W2);
    MeanCurvature m;
    m.H1 = (ff.G * f.duu - 2.0 * ff.F * f.duv + ff.E * f.dvv) / (2.0 * sa * ff.W2);
    m.H2 = (ff.G * (-ff.B * f.duu + ff.A * g.duu) - 2.0 * ff.F * (-ff.B * f.duv + ff.A * g.duv) +
            ff.E * (-ff.B * f.dvv + ff.A * g.dvv)) /
           (2.0 * sa * ff.W2 * w);
    m.Hnorm = std::sqrt(m.H1 * m.H1 + m.H2 * m.H2);
    return m;
}

InvariantSet invariants_from_geometry(const PointGeometry& geo) {
    const FirstForm& ff = geo.first;
    const double s2 = second_partials_sq(geo.jets);
    const double w4 = ff.W2 * ff.W2;

    const double K = gauss_curvature(geo.second, ff);
    cross_check("K", K, gauss_curvature_monge(geo.jets, ff), (ff.A + std::abs(ff.B) + ff.C) * s2 / w4);

    const double KN = normal_torsion(geo.second, ff);
    cross_check("K_N", KN, normal_torsion_monge(geo.jets, ff), (ff.E + std::abs(ff.F) + ff.G) * s2 / w4);

    const MeanCurvature H = mean_curvature(geo.second);
    const MeanCurvature Hm = mean_curvature_monge(geo.jets, ff);
    const double h_scale = (ff.E + std::abs(ff.F) + ff.G) * std::sqrt(s2 * (ff.A + std::abs(ff.B) + ff.C)) /
                           (std::sqrt(ff.A) * ff.W2);
    cross_check("H1", H.H1, Hm.H1, h_scale);
    cross_check("H2", H.H2, Hm.H2, h_scale);

    return {K, KN, H.H1, H.H2, H.Hnorm};
}

InvariantSet invariants_at(const MongePatch& patch, double u, double v) {
    return invariants_from_geometry(geometry_at(patch, u, v));
}

AminovClosedForms aminov_closed_forms(const Jet1& r, double /*u*/, double v) {
    const double R = r.val, R1 = r.d1, R2 = r.d2;
    const double cv = std::cos(v), sv = std::sin(v);
    const double psi2 = 1.0 + R1 * R1;  // E
    const double om2 = 1.0 + R * R;     // G
    const double phi2 = 1.0 + R1 * R1 * cv * cv + R * R * sv * sv;  // A
    const double psi = std::sqrt(psi2), om = std::sqrt(om2), phi = std::sqrt(phi2);
    const double denom = om2 * om2 * psi2 * psi2;

    AminovClosedForms out;
    out.inv.K = -(R * R2 * om2 + R1 * R1 * psi2) / denom;
    out.inv.KN = (R1 * R2 * om2 + R * R1 * psi2) / denom;
    out.H = (R2 * om2 - R * psi2) / (2.0 * om2 * psi2 * psi);

    // Mean curvature vector along the pinned frame.
    const double B = (R1 * R1 - R * R) * cv * sv;
    const double W2 = psi2 * om2;
    const double W = psi * om;
    const double coef = (om2 * R2 - psi2 * R) / (2.0 * W2 * phi);
    out.inv.H1 = coef * cv;
    out.inv.H2 = coef * (phi2 * sv - B * cv) / W;
    out.inv.Hnorm = std::abs(out.H);

    out.h[0] = {R2 * cv / (phi * psi2), -R1 * sv / (phi * psi * om), -R * cv / (phi * om2)};
    out.h[1] = {om * R2 * sv / (phi * psi2 * psi), R1 * cv / (phi * om2), -R * sv / (phi * psi * om)};
    return out;
}

TranslationJets translation_jets(const TranslationPayload& payload, double u, double v) {
    auto in_u = [&](const Expr& e) { return restrict_u(e.eval({seed_u(u, v), std::nullopt})); };
    auto in_v = [&](const Expr& e) {
        const Jet2 j = e.eval({std::nullopt, seed_v(u, v)});
        return Jet1{j.val, j.dv, j.dvv};
    };
    return {in_u(payload.f3), in_u(payload.f4), in_v(payload.g3), in_v(payload.g4)};
}

InvariantSet translation_closed_forms(const TranslationJets& j) {
    const double f3p = j.f3.d1, f3pp = j.f3.d2, f4p = j.f4.d1, f4pp = j.f4.d2;
    const double g3p = j.g3.d1, g3pp = j.g3.d2, g4p = j.g4.d1, g4pp = j.g4.d2;
    const double E = 1.0 + f3p * f3p + f4p * f4p;
    const double F = f3p * g3p + f4p * g4p;
    const double G = 1.0 + g3p * g3p + g4p * g4p;
    const double A = 1.0 + f3p * f3p + g3p * g3p;
    const double B = f3p * f4p + g3p * g4p;
    const double C = 1.0 + f4p * f4p + g4p * g4p;
    const double W2 = E * G - F * F;
    const double W = std::sqrt(W2);
    const double sa = std::sqrt(A);

    InvariantSet out;
    out.K = (f3pp * g3pp * C - (f3pp * g4pp + f4pp * g3pp) * B + f4pp * g4pp * A) / (W2 * W2);
    out.KN = F * (f4pp * g3pp - f3pp * g4pp) / (W2 * W2);
    out.H1 = (f3pp * G + g3pp * E) / (2.0 * sa * W2);
    out.H2 = (G * (f4pp * A - f3pp * B) + E * (g4pp * A - g3pp * B)) / (2.0 * sa * W2 * W);
    out.Hnorm = std::sqrt(out.H1 * out.H1 + out.H2 * out.H2);
    return out;
}

InvariantSet translation_closed_forms(const TranslationPayload& payload, double u, double v) {
    return translation_closed_forms(translation_jets(payload, u, v));
}

}  // namespace monge4
