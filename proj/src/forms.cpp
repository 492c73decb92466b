#include "monge4/forms.hpp"

#include <cmath>

namespace monge4 {

double dot(const Vec4& a, const Vec4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

std::array<Vec4, 2> tangents(const PatchJets& j) {
    return {Vec4{1.0, 0.0, j.f.du, j.g.du}, Vec4{0.0, 1.0, j.f.dv, j.g.dv}};
}

FirstForm first_form(const PatchJets& j) {
    const double fu = j.f.du, fv = j.f.dv, gu = j.g.du, gv = j.g.dv;
    FirstForm ff;
    ff.E = 1.0 + fu * fu + gu * gu;
    ff.F = fu * fv + gu * gv;
    ff.G = 1.0 + fv * fv + gv * gv;
    ff.W2 = ff.E * ff.G - ff.F * ff.F;
    ff.A = 1.0 + fu * fu + fv * fv;
    ff.B = fu * gu + fv * gv;
    ff.C = 1.0 + gu * gu + gv * gv;
    return ff;
}

NormalFrame normal_frame(const PatchJets& j, const FirstForm& ff) {
    const double fu = j.f.du, fv = j.f.dv, gu = j.g.du, gv = j.g.dv;
    const double sa = std::sqrt(ff.A);
    const double w = std::sqrt(ff.W2);
    NormalFrame nf;
    nf.N1 = {-fu / sa, -fv / sa, 1.0 / sa, 0.0};
    const double s = 1.0 / (w * sa);
    nf.N2 = {(ff.B * fu - ff.A * gu) * s, (ff.B * fv - ff.A * gv) * s, -ff.B * s, ff.A * s};
    return nf;
}

Sym2 to_orthonormal(const Sym2& c, const FirstForm& ff) {
    const double w = std::sqrt(ff.W2);
    const double r = ff.F / ff.E;
    return {c.m11 / ff.E, (c.m12 - r * c.m11) / w, (ff.E * c.m22 - 2.0 * ff.F * c.m12 + ff.F * r * c.m11) / ff.W2};
}

Sym2 from_orthonormal(const Sym2& h, const FirstForm& ff) {
    const double w = std::sqrt(ff.W2);
    const double c11 = ff.E * h.m11;
    const double c12 = w * h.m12 + ff.F * h.m11;
    const double c22 = (ff.W2 * h.m22 + 2.0 * ff.F * c12 - ff.F * ff.F / ff.E * c11) / ff.E;
    return {c11, c12, c22};
}

SecondForm second_form(const PatchJets& j, const FirstForm& ff, const NormalFrame& nf) {
    const Vec4 xuu{0.0, 0.0, j.f.duu, j.g.duu};
    const Vec4 xuv{0.0, 0.0, j.f.duv, j.g.duv};
    const Vec4 xvv{0.0, 0.0, j.f.dvv, j.g.dvv};
    SecondForm sf;
    const std::array<const Vec4*, 2> normals{&nf.N1, &nf.N2};
    for (int k = 0; k < 2; ++k) {
        sf.c[k] = {dot(xuu, *normals[k]), dot(xuv, *normals[k]), dot(xvv, *normals[k])};
        sf.h[k] = to_orthonormal(sf.c[k], ff);
    }
    return sf;
}

FramedSecondForm rotate_normal_frame(const NormalFrame& nf, const SecondForm& sf, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    FramedSecondForm out;
    for (int i = 0; i < 4; ++i) {
        out.frame.N1[i] = c * nf.N1[i] + s * nf.N2[i];
        out.frame.N2[i] = -s * nf.N1[i] + c * nf.N2[i];
    }
    auto mix = [&](const std::array<Sym2, 2>& in, std::array<Sym2, 2>& res) {
        res[0] = {c * in[0].m11 + s * in[1].m11, c * in[0].m12 + s * in[1].m12, c * in[0].m22 + s * in[1].m22};
        res[1] = {-s * in[0].m11 + c * in[1].m11, -s * in[0].m12 + c * in[1].m12, -s * in[0].m22 + c * in[1].m22};
    };
    mix(sf.c, out.form.c);
    mix(sf.h, out.form.h);
    return out;
}

PointGeometry geometry_from_jets(const PatchJets& j) {
    PointGeometry geo;
    geo.jets = j;
    geo.first = first_form(j);
    geo.frame = normal_frame(j, geo.first);
    geo.second = second_form(j, geo.first, geo.frame);
    return geo;
}

PointGeometry geometry_at(const MongePatch& patch, double u, double v) { return geometry_from_jets(patch.eval(u, v)); }

}  // namespace monge4
