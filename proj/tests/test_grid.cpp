#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "monge4/error.hpp"
#include "monge4/grid.hpp"
#include "monge4/invariants.hpp"

using namespace monge4;

namespace {

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

double max_fd_error(const MongePatch& p, double u0, double u1, double v0, double v1, int coarse, int refine) {
    // Error at the interior nodes of the coarse grid, which both grids share.
    const int n = (coarse - 1) * refine + 1;
    const GridResult fd = fd_grid(sample_patch(p, GridSpec{u0, u1, v0, v1, n, n}));
    double worst = 0;
    for (int i = 1; i < coarse - 1; ++i) {
        for (int j = 1; j < coarse - 1; ++j) {
            const GridRow& row = fd.at(i * refine, j * refine);
            REQUIRE(row.ok());
            worst = std::max(worst, std::abs(row.K - invariants_at(p, row.u, row.v).K));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("sample_grid") {
    const GridResult plane = sample_grid(make_explicit("0", "0"), GridSpec{-1, 2, 0, 1, 4, 3});
    REQUIRE(plane.rows.size() == 12);
    for (const GridRow& r : plane.rows) {
        CHECK(r.ok());
        CHECK(r.K == 0);
        CHECK(r.KN == 0);
        CHECK(r.Hnorm == 0);
    }
    // v fastest
    CHECK(plane.rows[0].u == -1);
    CHECK(plane.rows[1].u == -1);
    CHECK(plane.rows[1].v == 0.5);
    CHECK(plane.rows[3].u == 0);
    CHECK(plane.rows.back().u == 2);
    CHECK(plane.rows.back().v == 1);

    // r = u: K = -1 / (2 (1 + u^2)^2)
    const GridResult am = sample_grid(make_aminov("u", Interval{0.5, 2}), GridSpec{0.5, 2, 0, std::numbers::pi, 5, 5});
    for (const GridRow& r : am.rows) {
        CHECK(r.ok());
        CHECK(std::abs(r.K + 0.5 / std::pow(1 + r.u * r.u, 2)) < 1e-15);
    }
    CHECK(am.at(1, 2).u == 0.875);
    CHECK(std::abs(sample_grid(make_aminov("u", std::nullopt), GridSpec{0, 2, 0, 1, 3, 2}).at(1, 0).K + 0.125) < 1e-15);

    CHECK_THROWS_AS(sample_grid(make_explicit("0", "0"), GridSpec{-1, 1, -1, 1, 1, 5}), ParameterError);
    CHECK_THROWS_AS(sample_grid(make_explicit("0", "0"), GridSpec{1, -1, -1, 1, 5, 5}), ParameterError);
}

TEST_CASE("failing nodes are flagged, not dropped") {
    const GridResult r = sample_grid(make_explicit("log(u)", "0"), GridSpec{-1, 1, -1, 1, 5, 3});
    CHECK(r.rows.size() == 15);
    CHECK(r.flagged == 9);
    CHECK(r.at(0, 0).flag == "domain_error");
    CHECK(std::isnan(r.at(0, 0).K));
    CHECK(r.at(4, 0).ok());
}

TEST_CASE("grid results do not depend on the worker count") {
    const MongePatch p = make_explicit("sin(u)*v", "u*v^2");
    const GridSpec g{-1, 1, -1, 1, 37, 23};
    std::ostringstream a, b;
    export_csv(sample_grid(p, g, 1), a);
    export_csv(sample_grid(p, g, 5), b);
    CHECK(a.str() == b.str());
}

TEST_CASE("fd_jets central differences") {
    const DiscretePatch dp = sample_patch(make_explicit("u^2+v^2", "u^2-v^2"), GridSpec{-1, 1, -1, 1, 5, 5});
    const PatchJets j = fd_jets(dp, 2, 2);
    CHECK(std::abs(j.f.duu - 2) < 1e-12);
    CHECK(std::abs(j.f.dvv - 2) < 1e-12);
    CHECK(std::abs(j.g.dvv + 2) < 1e-12);
    CHECK(std::abs(j.f.duv) < 1e-12);
    CHECK_THROWS_AS(fd_jets(dp, 0, 2), ParameterError);
    CHECK_THROWS_AS(fd_jets(dp, 2, 4), ParameterError);
}

TEST_CASE("flat quadric sampled at h = 0.01 stays flat") {
    const GridResult fd = fd_grid(sample_patch(make_explicit("u^2+v^2", "u^2-v^2"), GridSpec{-1, 1, -1, 1, 201, 201}));
    double worst = 0;
    std::size_t ok = 0;
    for (const GridRow& r : fd.rows) {
        if (!r.ok()) {
            CHECK(r.flag == "boundary");
            continue;
        }
        ++ok;
        worst = std::max({worst, std::abs(r.K), std::abs(r.KN)});
    }
    CHECK(ok == 199u * 199u);
    CHECK(worst < 1e-6);
}

TEST_CASE("finite-difference error is second order") {
    const MongePatch p = make_aminov("u", Interval{0.5, 2}, Interval{0, std::numbers::pi});
    const double coarse = max_fd_error(p, 0.5, 2, 0, std::numbers::pi, 21, 1);
    const double fine = max_fd_error(p, 0.5, 2, 0, std::numbers::pi, 21, 2);
    const double ratio = coarse / fine;
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
    MESSAGE("FD error ratio h : h/2 = " << ratio);
}

TEST_CASE("monge3 depth maps reduce to surfaces in E3") {
    const GridSpec g{-1, 1, -1, 1, 41, 41};
    const DiscretePatch dp = sample_patch(make_explicit("u^2+v^2", "0"), g, SampleMode::monge3);
    const GridResult fd = fd_grid(dp);
    for (const GridRow& r : fd.rows) {
        if (!r.ok()) continue;
        CHECK(std::abs(r.KN) < 1e-14);
        const double classical = 4 / std::pow(1 + 4 * r.u * r.u + 4 * r.v * r.v, 2);
        CHECK(std::abs(r.K - classical) < 1e-3 * classical);
    }
}

TEST_CASE("ingestion") {
    SUBCASE("3x3 zero patch") {
        std::istringstream in("u,v,f,g\n0,0,0,0\n0,1,0,0\n0,2,0,0\n1,0,0,0\n1,1,0,0\n1,2,0,0\n2,0,0,0\n2,1,0,0\n2,2,0,0\n");
        const DiscretePatch dp = ingest_csv(in);
        CHECK(dp.nu == 3);
        CHECK(dp.nv == 3);
        const GridResult fd = fd_grid(dp);
        CHECK(fd.flagged == 8);
        CHECK(fd.at(1, 1).ok());
        CHECK(fd.at(1, 1).K == 0);
        CHECK(fd.at(1, 1).KN == 0);
        CHECK(fd.at(1, 1).Hnorm == 0);
    }
    SUBCASE("rows in any order, monge3 header") {
        std::istringstream in("u,v,f\n1,1,4\n0,0,1\n1,0,3\n0,1,2\n");
        const DiscretePatch dp = ingest_csv(in);
        CHECK(dp.mode == SampleMode::monge3);
        CHECK(dp.f_at(0, 1) == 2);
        CHECK(dp.f_at(1, 0) == 3);
        CHECK(dp.g_at(1, 1) == 0);
    }
    SUBCASE("missing node is named") {
        std::ostringstream csv;
        csv << "u,v,f,g\n";
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 5; ++j)
                if (!(i == 2 && j == 3)) csv << i << ',' << j << ",0,0\n";
        std::istringstream in(csv.str());
        try {
            (void)ingest_csv(in);
            FAIL("expected ingest error");
        } catch (const IngestError& e) {
            CHECK(std::string(e.what()).find("(2,3)") != std::string::npos);
        }
    }
    SUBCASE("non-numeric cell reports its line") {
        std::istringstream in("u,v,f\n0,0,1\n0,1,abc\n1,0,1\n1,1,1\n");
        try {
            (void)ingest_csv(in);
            FAIL("expected ingest error");
        } catch (const IngestError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("bad header, ragged rows, duplicates and uneven spacing") {
        std::istringstream h("x,y,z\n0,0,0\n");
        CHECK_THROWS_AS(ingest_csv(h), IngestError);
        std::istringstream r("u,v,f\n0,0\n");
        CHECK_THROWS_AS(ingest_csv(r), IngestError);
        std::istringstream d("u,v,f\n0,0,1\n0,0,1\n0,1,1\n1,0,1\n1,1,1\n");
        CHECK_THROWS_AS(ingest_csv(d), IngestError);
        std::istringstream s("u,v,f\n0,0,1\n0,1,1\n1,0,1\n1,1,1\n3,0,1\n3,1,1\n");
        CHECK_THROWS_AS(ingest_csv(s), IngestError);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(ingest_csv_file("/nonexistent/samples.csv"), IoError); }
}

TEST_CASE("non-finite samples flag their neighbourhood") {
    DiscretePatch dp = sample_patch(make_explicit("u*v", "u"), GridSpec{0, 1, 0, 1, 7, 7});
    dp.f[dp.index(3, 3)] = std::numeric_limits<double>::quiet_NaN();
    const GridResult fd = fd_grid(dp);
    for (int i = 2; i <= 4; ++i)
        for (int j = 2; j <= 4; ++j) CHECK(fd.at(i, j).flag == "nonfinite");
    CHECK(fd.at(1, 1).ok());
    CHECK(fd.at(5, 5).ok());
    CHECK(fd.flagged == 24 + 9);
}

TEST_CASE("export") {
    const GridResult r = sample_grid(make_explicit("0", "0"), GridSpec{0, 1, 0, 1, 2, 2});
    std::ostringstream out;
    export_csv(r, out);
    const std::string s = out.str();
    CHECK(count_lines(s) == 5);
    CHECK(s.rfind("u,v,E,F,G,W2,K,KN,H1,H2,Hnorm,chen,wintgen,flag\n", 0) == 0);
    CHECK(s.find('\r') == std::string::npos);
    CHECK(s.find("0,1,1,0,1,1,0,0,0,0,0,0,0,ok\n") != std::string::npos);

    const GridResult bad = sample_grid(make_explicit("log(u)", "0"), GridSpec{-1, 1, 0, 1, 2, 2});
    std::ostringstream b;
    export_csv(bad, b);
    CHECK(b.str().find("-1,0,nan,nan,nan,nan,nan,nan,nan,nan,nan,nan,nan,domain_error\n") != std::string::npos);

    CHECK_THROWS_AS(export_csv(r, std::string("/nonexistent/dir/out.csv")), IoError);
    const auto path = std::filesystem::temp_directory_path() / "monge4_export_test.csv";
    export_csv(r, path.string());
    std::ifstream in(path);
    std::stringstream back;
    back << in.rdbuf();
    CHECK(back.str() == s);
    std::filesystem::remove(path);
}

TEST_CASE("property: sample csv round trip is bit exact") {
    const GridSpec g{-1.3, 0.7, 0.1, 2.9, 17, 13};
    for (SampleMode mode : {SampleMode::monge3, SampleMode::monge4}) {
        const DiscretePatch dp = sample_patch(make_explicit("sin(u)*exp(v)/3", "u/3-v^3"), g, mode);
        std::stringstream ss;
        write_samples_csv(dp, ss);
        const DiscretePatch back = ingest_csv(ss);
        CHECK(back.mode == mode);
        CHECK(back.f == dp.f);
        CHECK(back.g == dp.g);
        CHECK(back.u_coord == dp.u_coord);
        CHECK(back.v_coord == dp.v_coord);
    }
}

TEST_CASE("property: deterministic row order and count") {
    const GridSpec g{-1, 1, -2, 2, 9, 11};
    const GridResult a = sample_grid(make_explicit("u*v", "v"), g);
    CHECK(a.rows.size() == g.size());
    for (int i = 0; i < g.nu; ++i) {
        for (int j = 0; j < g.nv; ++j) {
            CHECK(a.at(i, j).u == g.u_at(i));
            CHECK(a.at(i, j).v == g.v_at(j));
        }
    }
}
