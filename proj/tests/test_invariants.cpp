#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "monge4/error.hpp"
#include "monge4/invariants.hpp"
#include "oracles.hpp"

using namespace monge4;

namespace {

constexpr double kQuarter = std::numbers::pi / 4;

PatchJets jets_of(const oracle::Surface& s, double u, double v) {
    auto j = [](const oracle::Partials& p) { return Jet2{p[0], p[1], p[2], p[3], p[4], p[5]}; };
    return {j(s.f(u, v)), j(s.g(u, v))};
}

}  // namespace

TEST_CASE("flat quadric has non-zero mean curvature") {
    const MongePatch p = make_explicit("u^2+v^2", "u^2-v^2");
    const InvariantSet o = invariants_at(p, 0, 0);
    CHECK(o.K == 0);
    CHECK(o.KN == 0);
    CHECK(o.H1 == 2);
    CHECK(o.H2 == 0);
    CHECK(o.Hnorm == 2);
    const InvariantSet q = invariants_at(p, 1, 1);
    CHECK(std::abs(q.K) < 1e-15);
    CHECK(std::abs(q.KN) < 1e-15);
}

TEST_CASE("aminov r = u") {
    const MongePatch p = make_aminov("u", std::nullopt);
    for (double v : {0.0, kQuarter, 2.0}) {
        const InvariantSet inv = invariants_at(p, 1, v);
        CHECK(inv.K == doctest::Approx(-0.125).epsilon(1e-14));
        CHECK(inv.KN == doctest::Approx(0.125).epsilon(1e-14));
        CHECK(inv.Hnorm == doctest::Approx(1 / (4 * std::sqrt(2.0))).epsilon(1e-14));
    }
    const AminovClosedForms cf = aminov_closed_forms(Jet1{1, 1, 0}, 1, kQuarter);
    CHECK(cf.inv.K == -0.125);
    CHECK(cf.inv.KN == 0.125);
    CHECK(cf.H == doctest::Approx(-1 / (4 * std::sqrt(2.0))).epsilon(1e-15));
}

TEST_CASE("exponential gradient patch at the origin") {
    const InvariantSet inv = invariants_at(make_gradient("exp(u)*cos(v)", "-exp(u)*sin(v)"), 0, 0);
    CHECK(std::abs(inv.K + 0.25) < 1e-12);
    CHECK(std::abs(inv.KN + 0.25) < 1e-12);
}

TEST_CASE("exponential aminov profile at the origin") {
    const InvariantSet inv = invariants_at(make_aminov("exp(u)", std::nullopt), 0, 0);
    CHECK(inv.K == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(inv.KN == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(inv.Hnorm < 1e-15);
    const AminovClosedForms e = aminov_closed_forms(Jet1{1, 1, 1}, 0, 0);
    CHECK(e.inv.K == -0.25);
    CHECK(e.inv.KN == 0.25);
    CHECK(e.H == 0);
}

TEST_CASE("constant aminov profile") {
    for (double c : {0.5, 1.0, 3.0}) {
        const AminovClosedForms cf = aminov_closed_forms(Jet1{c, 0, 0}, 0.2, 1.0);
        CHECK(cf.inv.K == 0);
        CHECK(cf.inv.KN == 0);
        CHECK(cf.H == doctest::Approx(-c / (2 * (1 + c * c))).epsilon(1e-15));
    }
}

TEST_CASE("plane") {
    const InvariantSet inv = invariants_at(make_explicit("0", "0"), 0.3, 0.2);
    CHECK(inv.K == 0);
    CHECK(inv.KN == 0);
    CHECK(inv.Hnorm == 0);
    const InvariantSet lin = translation_closed_forms(
        std::get<TranslationPayload>(make_translation("2*u", "-u", "3*v", "v/2").payload()), 1, 1);
    CHECK(lin.K == 0);
    CHECK(lin.KN == 0);
    CHECK(lin.H1 == 0);
    CHECK(lin.H2 == 0);
}

TEST_CASE("translation closed forms on simple payloads") {
    const auto ex6 = std::get<TranslationPayload>(make_translation("u^2", "u^2", "v^2", "-v^2").payload());
    for (auto [u, v] : {std::pair{0.0, 0.0}, {1.0, -1.0}, {0.3, 2.0}}) {
        const InvariantSet t = translation_closed_forms(ex6, u, v);
        CHECK(std::abs(t.K) < 1e-15);
        CHECK(std::abs(t.KN) < 1e-15);
    }
    const auto cyl = std::get<TranslationPayload>(make_translation("u^2", "0", "0", "0").payload());
    const InvariantSet c = translation_closed_forms(cyl, 1, 1);
    CHECK(c.K == 0);
    CHECK(c.KN == 0);
}

TEST_CASE("cross-check failures surface as consistency errors") {
    PointGeometry geo = geometry_at(make_explicit("sin(u)*v", "u*v^2"), 0.3, 0.8);
    geo.second.c[1].m12 += 0.5;  // corrupt one route
    CHECK_THROWS_AS(invariants_from_geometry(geo), ConsistencyError);
}

TEST_CASE("relative gap") {
    CHECK(relative_gap(1, 1) == 0);
    CHECK(relative_gap(1, 2) == 0.5);
    CHECK(relative_gap(0, 1e-20, 1) == 1e-20);
}

TEST_CASE("property: invariants match the ambient oracle") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> d(-1, 1);
    const oracle::Surface surfaces[] = {oracle::flat_quadric(), oracle::exp_gradient(), oracle::trig_poly(),
                                        oracle::aminov_exp(0.7, 1.3), oracle::aminov_exp(2.0, -0.5)};
    for (const auto& s : surfaces) {
        for (int k = 0; k < 200; ++k) {
            const double u = d(rng), v = 3 * d(rng);
            const InvariantSet inv = invariants_from_geometry(geometry_from_jets(jets_of(s, u, v)));
            const oracle::Curvature ref = oracle::monge(s, u, v);
            CHECK(oracle::rel(inv.K, ref.K) < 1e-10);
            CHECK(oracle::rel(inv.KN, ref.KN) < 1e-10);
            CHECK(oracle::rel(inv.Hnorm, ref.Hnorm) < 1e-10);
            CHECK(std::abs(inv.Hnorm * inv.Hnorm - (inv.H1 * inv.H1 + inv.H2 * inv.H2)) < 1e-14 * (1 + inv.Hnorm));
        }
    }
}

TEST_CASE("property: both routes agree to 1e-10") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> d(-1, 1);
    const MongePatch patches[] = {make_explicit("sin(u)*cos(v)", "u*v^2"), make_explicit("exp(u-v)", "u^3-v"),
                                  make_explicit("log(3+u)*v", "sqrt(2+u*v)"),
                                  make_translation("sin(u)", "u^3", "exp(v)", "cos(2*v)"),
                                  make_aminov("u^2+1", std::nullopt), make_aminov("sin(u)+2", std::nullopt),
                                  make_gradient("u*v^2+cos(u+v)", "u^2*v+cos(u+v)")};
    for (const MongePatch& p : patches) {
        for (int k = 0; k < 150; ++k) {
            const PointGeometry geo = geometry_at(p, d(rng), d(rng));
            const FirstForm& ff = geo.first;
            const double s = 1 + std::abs(gauss_curvature(geo.second, ff));
            CHECK(std::abs(gauss_curvature(geo.second, ff) - gauss_curvature_monge(geo.jets, ff)) < 1e-10 * s);
            CHECK(std::abs(normal_torsion(geo.second, ff) - normal_torsion_monge(geo.jets, ff)) < 1e-10 * s);
            const MeanCurvature a = mean_curvature(geo.second), b = mean_curvature_monge(geo.jets, ff);
            CHECK(std::abs(a.H1 - b.H1) < 1e-10 * (1 + a.Hnorm));
            CHECK(std::abs(a.H2 - b.H2) < 1e-10 * (1 + a.Hnorm));
        }
    }
}

TEST_CASE("property: normal frame rotation leaves K, KN and |H| unchanged") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> d(-1, 1);
    const MongePatch p = make_explicit("exp(u-v)", "u^3-v");
    for (int k = 0; k < 200; ++k) {
        const PointGeometry geo = geometry_at(p, d(rng), d(rng));
        const FramedSecondForm rot = rotate_normal_frame(geo.frame, geo.second, 4 * d(rng));
        CHECK(oracle::rel(gauss_curvature(rot.form, geo.first), gauss_curvature(geo.second, geo.first)) < 1e-10);
        CHECK(oracle::rel(normal_torsion(rot.form, geo.first), normal_torsion(geo.second, geo.first)) < 1e-10);
        CHECK(oracle::rel(mean_curvature(rot.form).Hnorm, mean_curvature(geo.second).Hnorm) < 1e-10);
        // a reflection N2 -> -N2 flips the torsion
        SecondForm refl = geo.second;
        refl.c[1] = {-refl.c[1].m11, -refl.c[1].m12, -refl.c[1].m22};
        CHECK(oracle::rel(normal_torsion(refl, geo.first), -normal_torsion(geo.second, geo.first)) < 1e-14);
    }
}

TEST_CASE("property: swapping f and g flips the normal torsion") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> d(-1, 1);
    const MongePatch a = make_explicit("sin(u)*cos(v)", "u*v^2"), b = make_explicit("u*v^2", "sin(u)*cos(v)");
    for (int k = 0; k < 100; ++k) {
        const double u = d(rng), v = d(rng);
        const InvariantSet x = invariants_at(a, u, v), y = invariants_at(b, u, v);
        CHECK(std::abs(x.KN + y.KN) < 1e-12);
        CHECK(std::abs(x.K - y.K) < 1e-12);
        CHECK(std::abs(x.Hnorm - y.Hnorm) < 1e-12);
    }
}

TEST_CASE("property: gradient patches have K = KN") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> d(-1, 1);
    const MongePatch patches[] = {make_gradient("exp(u)*cos(v)", "-exp(u)*sin(v)"),
                                  make_gradient("u*v^2+cos(u+v)", "u^2*v+cos(u+v)"), make_gradient("3*u^2*v", "u^3"),
                                  make_gradient("cos(u)*sinh(v)", "sin(u)*cosh(v)")};
    for (const MongePatch& p : patches) {
        REQUIRE(p.family() == Family::gradient);
        for (int k = 0; k < 200; ++k) {
            const InvariantSet inv = invariants_at(p, d(rng), 3.2 * d(rng));
            CHECK(std::abs(inv.K - inv.KN) < 1e-9);
        }
    }
}

TEST_CASE("property: exponential profiles satisfy K + KN = 0") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> d(-1, 1);
    for (const char* r : {"0.5*exp(u)", "exp(u)", "2*exp(u)"}) {
        const MongePatch p = make_aminov(r, Interval{-1, 1});
        for (int k = 0; k < 100; ++k) {
            const InvariantSet inv = invariants_at(p, d(rng), 3.2 * d(rng));
            CHECK(std::abs(inv.K + inv.KN) < 1e-10);
            CHECK(inv.Hnorm < 1e-10);
        }
    }
}

TEST_CASE("property: aminov closed forms match the general pipeline") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> d(-1, 1);
    for (const char* r : {"u", "u^2", "exp(u)", "0.5*exp(u)", "sin(u)+2", "1", "cosh(u)", "u^3-u+2"}) {
        const MongePatch p = make_aminov(r, std::nullopt);
        const Profile& prof = std::get<AminovPayload>(p.payload()).r;
        for (int k = 0; k < 125; ++k) {
            const double u = d(rng), v = 3.2 * d(rng);
            const PointGeometry geo = geometry_at(p, u, v);
            const InvariantSet inv = invariants_from_geometry(geo);
            const AminovClosedForms cf = aminov_closed_forms(prof.eval(u), u, v);
            CHECK(relative_gap(inv.K, cf.inv.K, 1) < 1e-10);
            CHECK(relative_gap(inv.KN, cf.inv.KN, 1) < 1e-10);
            CHECK(relative_gap(inv.H1, cf.inv.H1, 1) < 1e-10);
            CHECK(relative_gap(inv.H2, cf.inv.H2, 1) < 1e-10);
            CHECK(relative_gap(inv.Hnorm, std::abs(cf.H), 1) < 1e-10);
            for (int q = 0; q < 2; ++q) {
                CHECK(relative_gap(geo.second.h[q].m11, cf.h[q].m11, 1) < 1e-10);
                CHECK(relative_gap(geo.second.h[q].m12, cf.h[q].m12, 1) < 1e-10);
                CHECK(relative_gap(geo.second.h[q].m22, cf.h[q].m22, 1) < 1e-10);
            }
        }
    }
}

TEST_CASE("property: translation closed forms match the general pipeline") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> d(-1, 1);
    const MongePatch patches[] = {make_translation("sin(u)", "u^3", "exp(v)", "cos(2*v)"),
                                  make_translation("u^2", "u^2", "v^2", "-v^2"),
                                  make_translation("log(2+u)", "cosh(u)", "v^4", "sin(v)*2")};
    for (const MongePatch& p : patches) {
        const auto& payload = std::get<TranslationPayload>(p.payload());
        for (int k = 0; k < 200; ++k) {
            const double u = d(rng), v = d(rng);
            const InvariantSet inv = invariants_at(p, u, v);
            const InvariantSet cf = translation_closed_forms(payload, u, v);
            CHECK(relative_gap(inv.K, cf.K, 1) < 1e-10);
            CHECK(relative_gap(inv.KN, cf.KN, 1) < 1e-10);
            CHECK(relative_gap(inv.H1, cf.H1, 1) < 1e-10);
            CHECK(relative_gap(inv.H2, cf.H2, 1) < 1e-10);
        }
    }
}
