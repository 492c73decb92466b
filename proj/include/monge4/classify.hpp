#pragma once

// Classification predicates (minimal, Chen, Wintgen ideal, pseudo-umbilical,
// flat, K + K_N = 0) and the special families built around them: the minimal
// Aminov profile, its ODE, and the minimal translation family.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monge4/forms.hpp"
#include "monge4/grid_spec.hpp"
#include "monge4/invariants.hpp"
#include "monge4/patch.hpp"

namespace monge4 {

struct Mat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;

    double trace() const { return a11 + a22; }
};

Mat2 operator*(const Mat2& x, const Mat2& y);

/// Shape operators A_{N1}, A_{N2} in the orthonormal tangent frame.
struct ShapeOperatorPair {
    Mat2 A1;
    Mat2 A2;
};

ShapeOperatorPair shape_operators(const SecondForm& sf);

/// Left-hand side of the Chen criterion expanded in h-coefficients and
/// harmonic curvatures. Zero at minimal points.
double chen_residual_expansion(const SecondForm& sf);

/// trace(A~1 A~2) |H|^2, with A~ the shape operators of the frame whose first
/// normal is parallel to H. Empty when H = 0.
std::optional<double> chen_residual_trace(const SecondForm& sf);

/// Expansion route, cross-checked against the trace route wherever
/// |H| > 1e-8 (ConsistencyError on disagreement).
double chen_residual(const SecondForm& sf);

/// K + |K_N| - |H|^2; zero exactly on Wintgen ideal points.
double wintgen_deficit(const InvariantSet& inv);

/// Polynomial form of the Wintgen equality for Aminov profiles:
/// 2r''(1+r^2)(1+r'^2)(2r'-r) + (1+r'^2)^2(4rr'-4r'^2-r^2) - r''^2(1+r^2)^2.
/// Equals 4(1+r^2)^2(1+r'^2)^3 (K + K_N - |H|^2).
double wintgen_aminov_residual(const Jet1& r);

/// (r - r')(r'(1+r'^2) - r''(1+r^2)) for Aminov profiles.
double k_plus_kn_residual(const Jet1& r);

/// r''(1+r^2) - r(1+r'^2): vanishes where the Aminov surface is minimal.
double minimal_profile_residual(const Jet1& r);

/// Deviation of A_H = H1 A1 + H2 A2 from a multiple of the identity,
/// max(|offdiag|, |diag difference|) / (1 + |A_H|_F).
double pseudo_umbilical_residual(const SecondForm& sf);

/// Numerical rank of [h1_11 h1_12 h1_22; h2_11 h2_12 h2_22]: singular values
/// above rel_tol * largest count. A zero matrix has rank 0.
int first_normal_rank(const SecondForm& sf, double rel_tol = 1e-8);

enum class ExponentSigns { opposite, same };

/// Minimal Aminov profile r(u) = (1/(2a)) (a^2 e^{2 sigma s} + a^2 - 1) e^{-sigma s},
/// s = (u + b)/a. `same` builds the reading with e^{+sigma s} as the outer
/// factor, which does not solve the minimality ODE (kept for regression).
Profile minimal_aminov_profile(double a, double b, int sigma, ExponentSigns signs = ExponentSigns::opposite,
                               std::optional<Interval> domain = std::nullopt);

struct ProfileRow {
    double u = 0.0;
    double r = 0.0;
    double rp = 0.0;
    double rpp = 0.0;       // finite-difference estimate from the r' column
    double residual = 0.0;  // minimal_profile_residual at (r, rp, rpp)
};

struct ProfileTable {
    std::vector<ProfileRow> rows;
    double max_abs_residual = 0.0;
};

/// Classic RK4 for r'' = r (1 + r'^2) / (1 + r^2) from (r0, r0p) at range.lo
/// to range.hi. Requires steps >= 2.
ProfileTable integrate_profile_ode(double r0, double r0p, Interval range, int steps);

struct TranslationFamilyParams {
    double c3 = 0.0, c4 = 0.0;
    double e3 = 0.0, e4 = 0.0;
    double p3 = 0.0, p4 = 0.0;
    double a = 1.0, b = 1.0;
    double c = 0.0, d = 0.0;
};

/// Translation patch with
///   f_k(u) = c_k/(c3^2+c4^2) (log|cos(sqrt(a) u)| + c u) + e_k u,
///   g_k(v) = c_k/(c3^2+c4^2) (-log|cos(sqrt(b) v)| + d v) + p_k v.
/// The domain is the open strip where both cosines stay positive.
MongePatch minimal_translation_family(const TranslationFamilyParams& params);

/// Largest |H| over the grid nodes (points that fail to evaluate are skipped).
double max_mean_curvature(const MongePatch& patch, const GridSpec& grid);

enum class Predicate { minimal, chen, wintgen_ideal, pseudo_umbilical, flat, k_plus_kn_zero };
inline constexpr std::array kAllPredicates{Predicate::minimal,          Predicate::chen, Predicate::wintgen_ideal,
                                           Predicate::pseudo_umbilical, Predicate::flat, Predicate::k_plus_kn_zero};

const char* to_string(Predicate p) noexcept;
/// Accepts the canonical names plus the short alias "wintgen".
std::optional<Predicate> predicate_from_string(std::string_view text);

enum class Verdict { holds, fails, indeterminate };
const char* to_string(Verdict v) noexcept;

enum class ChenQualifier { not_chen, trivial_minimal, trivial_pseudo_umbilical, trivial_low_rank, non_trivial, indeterminate };
const char* to_string(ChenQualifier q) noexcept;

struct Tolerances {
    double tol = 1e-8;       // verdict threshold on normalized residuals
    double rank_tol = 1e-8;  // relative singular-value cut-off
};

struct PredicateResult {
    double max_residual = 0.0;
    double normalized_residual = 0.0;
    Verdict verdict = Verdict::holds;
};

/// Per-point values that feed the report; also exported by the grid module.
struct PointResiduals {
    InvariantSet inv;
    std::array<double, kAllPredicates.size()> residual{};
    int normal_rank = 0;
    double chen = 0.0;     // signed Chen expansion
    double wintgen = 0.0;  // signed Wintgen deficit
};

PointResiduals point_residuals(const PointGeometry& geo, double rank_tol = 1e-8);

/// Scale used to normalise residuals: 1 + max(|K|, |K_N|, |H|^2).
double residual_scale(const InvariantSet& inv);

struct ClassificationReport {
    std::array<PredicateResult, kAllPredicates.size()> results{};
    int first_normal_rank = 0;  // max over evaluated nodes
    ChenQualifier chen_qualifier = ChenQualifier::indeterminate;
    GridSpec grid;
    Tolerances tolerances;
    std::size_t evaluated_points = 0;
    std::size_t failed_points = 0;
    std::string first_failure;  // message of the first evaluation failure

    const PredicateResult& operator[](Predicate p) const { return results[static_cast<std::size_t>(p)]; }
    PredicateResult& operator[](Predicate p) { return results[static_cast<std::size_t>(p)]; }
};

/// Evaluates every predicate over the grid. Evaluation failures mark the
/// report indeterminate instead of throwing. `workers` > 1 partitions the grid
/// across threads; the result does not depend on the worker count.
ClassificationReport classify_surface(const MongePatch& patch, const GridSpec& grid, const Tolerances& tol = {},
                                      int workers = 1);

}  // namespace monge4
