#pragma once

// Gaussian curvature K, normal curvature (Gaussian torsion) K_N and the mean
// curvature vector H = H1 N1 + H2 N2.
//
// Each invariant is computed along two independent routes, one from the
// coordinate-frame second form and one directly from the jets of f and g.
// invariants_at() runs both and raises ConsistencyError if they disagree.

#include "monge4/forms.hpp"
#include "monge4/patch.hpp"

namespace monge4 {

struct InvariantSet {
    double K = 0.0;
    double KN = 0.0;
    double H1 = 0.0;
    double H2 = 0.0;
    double Hnorm = 0.0;
};

struct MeanCurvature {
    double H1 = 0.0;
    double H2 = 0.0;
    double Hnorm = 0.0;
};

/// K = (1/W^2) sum_k (c^k_11 c^k_22 - (c^k_12)^2).
double gauss_curvature(const SecondForm& sf, const FirstForm& ff);
/// K from the partials of f and g.
double gauss_curvature_monge(const PatchJets& j, const FirstForm& ff);

/// K_N = (1/W^3)[E(c1_12 c2_22 - c2_12 c1_22) - F(c1_11 c2_22 - c2_11 c1_22)
///              + G(c1_11 c2_12 - c2_11 c1_12)].
double normal_torsion(const SecondForm& sf, const FirstForm& ff);
/// K_N from the partials of f and g.
double normal_torsion_monge(const PatchJets& j, const FirstForm& ff);

/// H_k = (h^k_11 + h^k_22) / 2 in the orthonormal tangent frame.
MeanCurvature mean_curvature(const SecondForm& sf);
/// Same quantity from the partials of f and g.
MeanCurvature mean_curvature_monge(const PatchJets& j, const FirstForm& ff);

/// |a - b| / max(|a|, |b|, scale, tiny).
double relative_gap(double a, double b, double scale = 0.0);

/// Tolerance used by the internal cross-checks.
inline constexpr double kCrossCheckTol = 1e-10;

/// Bundles all routes at one point; throws ConsistencyError on disagreement.
InvariantSet invariants_from_geometry(const PointGeometry& geo);
InvariantSet invariants_at(const MongePatch& patch, double u, double v);

/// Closed forms for f = r cos v, g = r sin v.
struct AminovClosedForms {
    InvariantSet inv;
    double H = 0.0;        // signed scalar mean curvature
    std::array<Sym2, 2> h; // orthonormal-frame coefficients
};

AminovClosedForms aminov_closed_forms(const Jet1& r, double u, double v);

/// One-variable jets of the four translation profiles at (u, v).
struct TranslationJets {
    Jet1 f3;  // in u
    Jet1 f4;  // in u
    Jet1 g3;  // in v
    Jet1 g4;  // in v
};

TranslationJets translation_jets(const TranslationPayload& payload, double u, double v);

/// Closed forms for f = f3(u) + g3(v), g = f4(u) + g4(v).
InvariantSet translation_closed_forms(const TranslationJets& j);
InvariantSet translation_closed_forms(const TranslationPayload& payload, double u, double v);

}  // namespace monge4
