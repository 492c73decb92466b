#pragma once

// First fundamental form, adapted normal frame and second fundamental form of
// a Monge patch at one point.
//
// Orientation convention: W = +sqrt(EG - F^2), N1 depends on f only and N2
// completes the frame as below. K_N is signed with respect to this frame, so
// exchanging f and g flips its sign.
//
//   N1 = (-f_u, -f_v, 1, 0) / sqrt(A)
//   N2 = (B f_u - A g_u, B f_v - A g_v, -B, A) / (W sqrt(A))

#include <array>

#include "monge4/patch.hpp"

namespace monge4 {

using Vec4 = std::array<double, 4>;

double dot(const Vec4& a, const Vec4& b);

struct FirstForm {
    double E = 1.0;
    double F = 0.0;
    double G = 1.0;
    double W2 = 1.0;  // EG - F^2
    double A = 1.0;   // 1 + f_u^2 + f_v^2
    double B = 0.0;   // f_u g_u + f_v g_v
    double C = 1.0;   // 1 + g_u^2 + g_v^2
};

struct NormalFrame {
    Vec4 N1{};
    Vec4 N2{};
};

/// Symmetric 2x2 coefficient block (11, 12, 22).
struct Sym2 {
    double m11 = 0.0;
    double m12 = 0.0;
    double m22 = 0.0;

    double trace() const { return m11 + m22; }
};

/// c[k] are the coordinate-frame coefficients <X_ij, N_k>; h[k] the same
/// form expressed in the orthonormal tangent frame X_u/sqrt(E),
/// (sqrt(E)/W)(X_v - (F/E) X_u). Index k = 0, 1 stands for N1, N2.
struct SecondForm {
    std::array<Sym2, 2> c{};
    std::array<Sym2, 2> h{};
};

/// Tangent vectors X_u, X_v.
std::array<Vec4, 2> tangents(const PatchJets& j);

FirstForm first_form(const PatchJets& j);
NormalFrame normal_frame(const PatchJets& j, const FirstForm& ff);
SecondForm second_form(const PatchJets& j, const FirstForm& ff, const NormalFrame& nf);

/// Orthonormal-frame coefficients from coordinate ones.
Sym2 to_orthonormal(const Sym2& c, const FirstForm& ff);
/// Inverse of to_orthonormal.
Sym2 from_orthonormal(const Sym2& h, const FirstForm& ff);

struct FramedSecondForm {
    NormalFrame frame;
    SecondForm form;
};

/// N1' = cos t N1 + sin t N2, N2' = -sin t N1 + cos t N2, coefficients re-projected.
FramedSecondForm rotate_normal_frame(const NormalFrame& nf, const SecondForm& sf, double theta);

/// Everything the curvature formulas need at one point.
struct PointGeometry {
    PatchJets jets;
    FirstForm first;
    NormalFrame frame;
    SecondForm second;
};

PointGeometry geometry_from_jets(const PatchJets& j);
PointGeometry geometry_at(const MongePatch& patch, double u, double v);

}  // namespace monge4
