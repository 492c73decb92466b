#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "monge4/error.hpp"
#include "monge4/patch.hpp"
#include "monge4/serialize.hpp"
#include "oracles.hpp"

using namespace monge4;

namespace {

void check_partials(const Jet2& j, const oracle::Partials& p, double tol) {
    const double got[6] = {j.val, j.du, j.dv, j.duu, j.duv, j.dvv};
    for (int i = 0; i < 6; ++i) CHECK_MESSAGE(oracle::rel(got[i], p[i]) < tol, "component " << i);
}

}  // namespace

TEST_CASE("explicit patches") {
    const MongePatch p = make_explicit("u^2+v^2", "u^2-v^2");
    CHECK(p.family() == Family::explicit_patch);
    const PatchJets j = p.eval(0, 0);
    CHECK(j.f == Jet2{0, 0, 0, 2, 0, 2});
    CHECK(j.g == Jet2{0, 0, 0, 2, 0, -2});

    const PatchJets plane = make_explicit("0", "0").eval(3, -4);
    CHECK(plane.f == Jet2{});
    CHECK(plane.g == Jet2{});

    CHECK_THROWS_AS(make_explicit("u$", "0"), ParseError);
}

TEST_CASE("translation patches") {
    const MongePatch t = make_translation("u^2", "u^2", "v^2", "-v^2");
    CHECK(t.family() == Family::translation);
    const MongePatch e = make_explicit("u^2+v^2", "u^2-v^2");
    for (auto [u, v] : {std::pair{0.0, 0.0}, {1.0, 2.0}, {-0.5, 0.25}}) {
        CHECK(t.eval(u, v).f == e.eval(u, v).f);
        CHECK(t.eval(u, v).g == e.eval(u, v).g);
    }
    const PatchJets zero = make_translation("0", "0", "0", "0").eval(1, 1);
    CHECK(zero.f == Jet2{});
    CHECK_THROWS_AS(make_translation("u", "u", "u*v", "v"), ValidationError);
    CHECK_THROWS_AS(make_translation("v", "u", "v", "v"), ValidationError);
}

TEST_CASE("aminov patches") {
    const MongePatch a = make_aminov("u", std::nullopt);
    CHECK(a.family() == Family::aminov);
    const PatchJets j = a.eval(1, 0);
    CHECK(j.f.val == 1);
    CHECK(j.f.du == 1);
    CHECK(j.f.dv == 0);
    CHECK(j.f.duv == 0);
    CHECK(j.f.dvv == -1);
    CHECK(j.g.val == 0);
    CHECK(j.g.dv == 1);
    CHECK(j.g.duv == 1);

    const Jet1 r = std::get<AminovPayload>(make_aminov("0.5*exp(u)", std::nullopt).payload()).r.eval(0);
    CHECK(r == Jet1{0.5, 0.5, 0.5});
    CHECK(profile_eval(make_profile("u"), 1) == Jet1{1, 1, 0});

    CHECK_THROWS_AS(make_aminov("log(u)", Interval{-1, 1}), ValidationError);
    CHECK_NOTHROW(make_aminov("log(u)", Interval{0.5, 2}));
    CHECK_THROWS_AS(make_aminov("u*v", std::nullopt), ValidationError);

    const Profile bounded = make_profile("u", Interval{0, 1});
    CHECK_THROWS_AS(profile_eval(bounded, 2), DomainError);
}

TEST_CASE("gradient patches check integrability") {
    const MongePatch ex4 = make_gradient("exp(u)*cos(v)", "-exp(u)*sin(v)");
    CHECK(ex4.family() == Family::gradient);
    CHECK(ex4.warnings().empty());
    REQUIRE(ex4.integrability_residual().has_value());
    CHECK(*ex4.integrability_residual() < 1e-12);

    CHECK(make_gradient("v", "u").family() == Family::gradient);

    const MongePatch bad = make_gradient("v", "-u");
    CHECK(bad.family() == Family::explicit_patch);
    REQUIRE(bad.warnings().size() == 1);
    CHECK(*bad.integrability_residual() == doctest::Approx(2.0));
    CHECK_THROWS_AS(make_gradient("v$", "u"), ParseError);
}

TEST_CASE("bounded domains are validated at construction") {
    CHECK_THROWS_AS(make_explicit("log(u)", "0", Domain{Interval{-1, 1}, Interval{0, 1}}), ValidationError);
    const MongePatch ok = make_explicit("log(u)", "0", Domain{Interval{1, 2}, Interval{0, 1}});
    CHECK(ok.domain().contains(1.5, 0.5));
    CHECK_FALSE(ok.domain().contains(0.5, 0.5));
}

TEST_CASE("json round trip") {
    const MongePatch patches[] = {make_explicit("sin(u)", "v", Domain{Interval{0, 1}, std::nullopt}),
                                  make_translation("u", "u^2", "v", "cos(v)"),
                                  make_aminov("exp(u)", Interval{-1, 1}, Interval{0, 6}),
                                  make_gradient("v", "u")};
    for (const MongePatch& p : patches) {
        const MongePatch q = patch_from_json(nlohmann::json::parse(patch_to_json(p).dump()));
        CHECK(q.family() == p.family());
        CHECK(q.domain() == p.domain());
        CHECK(patch_to_json(q).dump() == patch_to_json(p).dump());
        CHECK(q.eval(0.5, 0.5).f == p.eval(0.5, 0.5).f);
        CHECK(q.eval(0.5, 0.5).g == p.eval(0.5, 0.5).g);
    }
    CHECK_THROWS_AS(patch_from_json(nlohmann::json::parse(R"({"family":"cone","exprs":{}})")), ValidationError);
    CHECK_THROWS_AS(patch_from_json(nlohmann::json::parse(R"({"family":"explicit","exprs":{"f":"u"}})")),
                    ValidationError);
    CHECK_THROWS_AS(patch_from_json(nlohmann::json::parse(R"([1,2])")), ValidationError);
}

TEST_CASE("property: patch jets agree with finite differences") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> d(-1, 1);
    const MongePatch patches[] = {make_explicit("sin(u)*cos(v)", "u*v^2"),
                                  make_translation("sin(u)", "u^3", "exp(v)", "cos(2*v)"),
                                  make_aminov("u^2+1", std::nullopt), make_aminov("exp(u)", std::nullopt),
                                  make_gradient("exp(u)*cos(v)", "-exp(u)*sin(v)")};
    for (const MongePatch& p : patches) {
        for (int k = 0; k < 30; ++k) {
            const double u = d(rng), v = 3 * d(rng);
            const PatchJets j = p.eval(u, v);
            check_partials(j.f, oracle::fd_partials([&](double a, double b) { return p.eval(a, b).f.val; }, u, v),
                           1e-6);
            check_partials(j.g, oracle::fd_partials([&](double a, double b) { return p.eval(a, b).g.val; }, u, v),
                           1e-6);
        }
    }
}

TEST_CASE("property: family structure") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-2, 2);
    const MongePatch t = make_translation("sin(u)", "u^3", "exp(v)", "cos(2*v)");
    const MongePatch a = make_aminov("sin(u)+2", std::nullopt);
    for (int k = 0; k < 200; ++k) {
        const double u = d(rng), v = d(rng);
        const PatchJets tj = t.eval(u, v);
        CHECK(tj.f.duv == 0);
        CHECK(tj.g.duv == 0);
        const PatchJets aj = a.eval(u, v);
        const double r = std::sin(u) + 2;
        CHECK(std::abs(aj.f.val * aj.f.val + aj.g.val * aj.g.val - r * r) < 1e-12);
    }
}

TEST_CASE("example surfaces agree with hand derivatives") {
    const oracle::Surface surfaces[] = {oracle::flat_quadric(), oracle::exp_gradient(), oracle::trig_poly()};
    for (const auto& s : surfaces) {
        const MongePatch p = make_explicit(s.f_text, s.g_text);
        for (auto [u, v] : {std::pair{0.3, -0.7}, {1.1, 0.4}}) {
            check_partials(p.eval(u, v).f, s.f(u, v), 1e-14);
            check_partials(p.eval(u, v).g, s.g(u, v), 1e-14);
        }
    }
}
