#include "monge4/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "monge4/classify.hpp"
#include "monge4/error.hpp"
#include "monge4/grid.hpp"
#include "monge4/invariants.hpp"
#include "monge4/patch.hpp"
#include "monge4/serialize.hpp"
#include "monge4/verify.hpp"

namespace monge4 {

namespace {

using nlohmann::ordered_json;

struct SurfaceFlags {
    std::string family;
    std::string f, g, r;
    std::string f3, f4, g3, g4;
    std::string patch;
};

struct CommonFlags {
    SurfaceFlags surface;
    GridSpec grid;
    double tol = 1e-8;
    std::string out;
    std::string format;
    int workers = 1;
};

class UsageError : public Error {
public:
    using Error::Error;
};

void add_surface_flags(CLI::App* cmd, SurfaceFlags& s) {
    cmd->add_option("--family", s.family, "Patch family (default: inferred from the expression flags)")
        ->check(CLI::IsMember({"explicit", "translation", "aminov", "gradient"}));
    cmd->add_option("--f", s.f, "f(u,v) for explicit patches, p = phi_u for gradient patches");
    cmd->add_option("--g", s.g, "g(u,v) for explicit patches (default 0), q = phi_v for gradient patches");
    cmd->add_option("--r", s.r, "Aminov profile r(u)");
    cmd->add_option("--f3", s.f3, "translation profile f3(u)");
    cmd->add_option("--f4", s.f4, "translation profile f4(u)");
    cmd->add_option("--g3", s.g3, "translation profile g3(v)");
    cmd->add_option("--g4", s.g4, "translation profile g4(v)");
    cmd->add_option("--patch", s.patch, "JSON patch document");
}

void add_grid_flags(CLI::App* cmd, GridSpec& g) {
    cmd->add_option("--u0", g.u0, "lower u bound")->capture_default_str();
    cmd->add_option("--u1", g.u1, "upper u bound")->capture_default_str();
    cmd->add_option("--v0", g.v0, "lower v bound")->capture_default_str();
    cmd->add_option("--v1", g.v1, "upper v bound")->capture_default_str();
    cmd->add_option("--nu", g.nu, "nodes along u")->capture_default_str();
    cmd->add_option("--nv", g.nv, "nodes along v")->capture_default_str();
}

void add_output_flags(CLI::App* cmd, std::string& out, std::string& format, const std::string& default_format) {
    format = default_format;
    cmd->add_option("--out", out, "output file (default: standard output)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
}

void add_workers_flag(CLI::App* cmd, int& workers) {
    cmd->add_option("--workers", workers, "worker threads (0: one per hardware thread)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

void add_tol_flag(CLI::App* cmd, double& tol) {
    cmd->add_option("--tol", tol, "verdict tolerance on normalized residuals")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

int resolve_workers(int w) {
    if (w > 0) return w;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// `aminov_u` bounds the profile when the patch is built from flags.
MongePatch build_patch(const SurfaceFlags& s, std::optional<Interval> aminov_u) {
    const bool any_explicit = !s.f.empty() || !s.g.empty();
    const bool any_translation = !s.f3.empty() || !s.f4.empty() || !s.g3.empty() || !s.g4.empty();
    const bool any_profile = !s.r.empty();
    const bool any_expr = any_explicit || any_translation || any_profile;
    if (!s.patch.empty()) {
        if (any_expr || !s.family.empty()) throw UsageError("--patch cannot be combined with expression flags");
        return load_patch_file(s.patch);
    }
    if (!any_expr) throw UsageError("no surface given; use --f/--g, --r, --f3/--f4/--g3/--g4 or --patch");

    std::string family = s.family;
    if (family.empty()) {
        if (static_cast<int>(any_explicit) + static_cast<int>(any_translation) + static_cast<int>(any_profile) > 1) {
            throw UsageError("expression flags of several families given; pass --family");
        }
        family = any_profile ? "aminov" : any_translation ? "translation" : "explicit";
    }
    auto reject = [&](bool present, const char* flags) {
        if (present) throw UsageError(std::string(flags) + " not used by family '" + family + "'");
    };
    if (family == "explicit" || family == "gradient") {
        reject(any_translation, "--f3/--f4/--g3/--g4");
        reject(any_profile, "--r");
        if (s.f.empty()) throw UsageError("family '" + family + "' needs --f");
        if (family == "gradient") {
            if (s.g.empty()) throw UsageError("family 'gradient' needs --g");
            return make_gradient(s.f, s.g);
        }
        return make_explicit(s.f, s.g.empty() ? "0" : s.g);
    }
    if (family == "translation") {
        reject(any_explicit, "--f/--g");
        reject(any_profile, "--r");
        auto or_zero = [](const std::string& x) { return x.empty() ? std::string("0") : x; };
        return make_translation(or_zero(s.f3), or_zero(s.f4), or_zero(s.g3), or_zero(s.g4));
    }
    reject(any_explicit, "--f/--g");
    reject(any_translation, "--f3/--f4/--g3/--g4");
    if (s.r.empty()) throw UsageError("family 'aminov' needs --r");
    return make_aminov(s.r, aminov_u);
}

/// Writes `text` to --out or standard output.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << text;
    file.flush();
    if (!file) throw IoError("failed writing '" + path + "'");
}

std::string json_text(const ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string fmt(double x) { return format_real(x); }

int cmd_eval(const CommonFlags& c, double u, double v, std::ostream& out) {
    const MongePatch patch = build_patch(c.surface, std::nullopt);
    if (!patch.domain().contains(u, v)) {
        throw DomainError("eval", u, "point (" + fmt(u) + ", " + fmt(v) + ") lies outside the patch domain");
    }
    const PointGeometry geo = geometry_at(patch, u, v);
    const InvariantSet inv = invariants_from_geometry(geo);
    std::ostringstream text;
    if (c.format == "csv") {
        text << "u,v,E,F,G,W2,K,KN,H1,H2,Hnorm\n";
        for (double x : {u, v, geo.first.E, geo.first.F, geo.first.G, geo.first.W2}) text << fmt(x) << ',';
        text << fmt(inv.K) << ',' << fmt(inv.KN) << ',' << fmt(inv.H1) << ',' << fmt(inv.H2) << ','
             << fmt(inv.Hnorm) << '\n';
    } else if (c.format == "text") {
        text << "K     = " << fmt(inv.K) << "\nKN    = " << fmt(inv.KN) << "\nH1    = " << fmt(inv.H1)
             << "\nH2    = " << fmt(inv.H2) << "\nHnorm = " << fmt(inv.Hnorm) << '\n';
    } else {
        ordered_json doc;
        doc["u"] = u;
        doc["v"] = v;
        const ordered_json values = invariants_to_json(inv);
        for (const auto& item : values.items()) doc[item.key()] = item.value();
        ordered_json first;
        first["E"] = geo.first.E;
        first["F"] = geo.first.F;
        first["G"] = geo.first.G;
        first["W2"] = geo.first.W2;
        doc["first_form"] = std::move(first);
        text << json_text(doc);
    }
    emit(c.out, text.str(), out);
    return kExitOk;
}

std::optional<Interval> grid_u(const GridSpec& g) { return Interval{g.u0, g.u1}; }

int cmd_grid(const CommonFlags& c, std::ostream& out) {
    c.grid.validate();
    const MongePatch patch = build_patch(c.surface, grid_u(c.grid));
    const GridResult result = sample_grid(patch, c.grid, resolve_workers(c.workers));
    std::ostringstream text;
    if (c.format == "json") {
        ordered_json doc;
        doc["patch"] = patch_to_json(patch);
        doc["grid"] = grid_to_json(c.grid);
        doc["flagged"] = result.flagged;
        ordered_json rows = ordered_json::array();
        for (const GridRow& r : result.rows) {
            ordered_json row;
            row["u"] = r.u;
            row["v"] = r.v;
            row["flag"] = r.flag;
            if (r.ok()) {
                for (auto [k, x] : {std::pair{"E", r.E}, {"F", r.F}, {"G", r.G}, {"W2", r.W2}, {"K", r.K},
                                    {"KN", r.KN}, {"H1", r.H1}, {"H2", r.H2}, {"Hnorm", r.Hnorm},
                                    {"chen", r.chen}, {"wintgen", r.wintgen}}) {
                    row[k] = x;
                }
            }
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        text << json_text(doc);
    } else if (c.format == "text") {
        double kmax = 0, knmax = 0, hmax = 0;
        for (const GridRow& r : result.rows) {
            if (!r.ok()) continue;
            kmax = std::max(kmax, std::abs(r.K));
            knmax = std::max(knmax, std::abs(r.KN));
            hmax = std::max(hmax, r.Hnorm);
        }
        text << "nodes   " << result.rows.size() << "\nflagged " << result.flagged << "\nmax|K|  " << fmt(kmax)
             << "\nmax|KN| " << fmt(knmax) << "\nmax|H|  " << fmt(hmax) << '\n';
    } else {
        export_csv(result, text);
    }
    emit(c.out, text.str(), out);
    return kExitOk;
}

int cmd_classify(const CommonFlags& c, const std::vector<std::string>& predicate_names, double rank_tol,
                 std::ostream& out) {
    c.grid.validate();
    std::vector<Predicate> requested;
    for (const std::string& name : predicate_names) {
        std::stringstream parts(name);
        std::string item;
        while (std::getline(parts, item, ',')) {
            if (item.empty()) continue;
            const auto p = predicate_from_string(item);
            if (!p) throw UsageError("unknown predicate '" + item + "'");
            if (std::find(requested.begin(), requested.end(), *p) == requested.end()) requested.push_back(*p);
        }
    }
    if (requested.empty()) requested.assign(kAllPredicates.begin(), kAllPredicates.end());

    const MongePatch patch = build_patch(c.surface, grid_u(c.grid));
    const ClassificationReport report =
        classify_surface(patch, c.grid, Tolerances{c.tol, rank_tol}, resolve_workers(c.workers));

    bool all_hold = true;
    bool indeterminate = false;
    for (Predicate p : requested) {
        all_hold = all_hold && report[p].verdict == Verdict::holds;
        indeterminate = indeterminate || report[p].verdict == Verdict::indeterminate;
    }

    std::ostringstream text;
    if (c.format == "text") {
        for (Predicate p : requested) {
            text << to_string(p) << ": " << to_string(report[p].verdict) << " (normalized residual "
                 << fmt(report[p].normalized_residual) << ")\n";
        }
        text << "first_normal_rank: " << report.first_normal_rank << "\nchen_qualifier: "
             << to_string(report.chen_qualifier) << '\n';
        if (!report.first_failure.empty()) text << "first_failure: " << report.first_failure << '\n';
    } else if (c.format == "csv") {
        text << "predicate,max_residual,normalized_residual,verdict\n";
        for (Predicate p : requested) {
            text << to_string(p) << ',' << fmt(report[p].max_residual) << ',' << fmt(report[p].normalized_residual)
                 << ',' << to_string(report[p].verdict) << '\n';
        }
    } else {
        ordered_json doc = report_to_json(report);
        ordered_json names = ordered_json::array();
        for (Predicate p : requested) names.push_back(to_string(p));
        doc["requested"] = std::move(names);
        doc["all_requested_hold"] = all_hold;
        text << json_text(doc);
    }
    emit(c.out, text.str(), out);
    if (indeterminate) return kExitEvaluation;
    return all_hold ? kExitOk : kExitFailed;
}

int cmd_verify(const CommonFlags& c, std::ostream& out) {
    const std::vector<CheckResult> results = run_identity_suite();
    const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
    std::ostringstream text;
    if (c.format == "json") {
        ordered_json doc;
        ordered_json checks = ordered_json::array();
        for (const CheckResult& r : results) checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        doc["checks"] = std::move(checks);
        doc["passed"] = passed;
        doc["total"] = results.size();
        text << json_text(doc);
    } else {
        for (const CheckResult& r : results) text << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        text << passed << "/" << results.size() << " checks passed\n";
    }
    emit(c.out, text.str(), out);
    return passed == static_cast<std::ptrdiff_t>(results.size()) ? kExitOk : kExitFailed;
}

struct OdeFlags {
    double a = 1.0;
    double b = 0.0;
    int sigma = 1;
    std::vector<double> range{-1.0, 1.0};
    int steps = 1000;
    std::optional<double> r0;
    std::optional<double> r0p;
};

int cmd_ode(const CommonFlags& c, const OdeFlags& o, std::ostream& out) {
    if (o.range.size() != 2 || !(o.range[1] > o.range[0])) throw UsageError("--range needs LO HI with LO < HI");
    const Interval range{o.range[0], o.range[1]};
    const Profile exact = minimal_aminov_profile(o.a, o.b, o.sigma);
    const Jet1 start = exact.eval(range.lo);
    const double r0 = o.r0.value_or(start.val);
    const double r0p = o.r0p.value_or(start.d1);
    const bool compare = !o.r0 && !o.r0p;
    const ProfileTable table = integrate_profile_ode(r0, r0p, range, o.steps);

    double max_err = 0.0;
    if (compare) {
        for (const ProfileRow& row : table.rows) {
            const double ref = exact.eval(row.u).val;
            max_err = std::max(max_err, std::abs(row.r - ref) / std::max(1.0, std::abs(ref)));
        }
    }

    std::ostringstream text;
    if (c.format == "json" || c.format == "text") {
        ordered_json doc;
        doc["a"] = o.a;
        doc["b"] = o.b;
        doc["sigma"] = o.sigma;
        doc["range"] = {range.lo, range.hi};
        doc["steps"] = o.steps;
        doc["r0"] = r0;
        doc["r0p"] = r0p;
        doc["max_abs_residual"] = table.max_abs_residual;
        if (compare) doc["max_rel_error_vs_closed_form"] = max_err;
        doc["r_end"] = table.rows.back().r;
        if (c.format == "json") {
            text << json_text(doc);
        } else {
            for (auto& [k, val] : doc.items()) text << k << ": " << val.dump() << '\n';
        }
    } else {
        text << "u,r,rp,rpp,residual\n";
        for (const ProfileRow& row : table.rows) {
            text << fmt(row.u) << ',' << fmt(row.r) << ',' << fmt(row.rp) << ',' << fmt(row.rpp) << ','
                 << fmt(row.residual) << '\n';
        }
    }
    emit(c.out, text.str(), out);
    return kExitOk;
}

int cmd_ingest(const CommonFlags& c, const std::string& input, std::ostream& out) {
    const DiscretePatch dp = ingest_csv_file(input);
    const GridResult result = fd_grid(dp);
    std::ostringstream text;
    if (c.format == "csv") {
        export_csv(result, text);
    } else {
        double kmax = 0, knmax = 0, hmax = 0;
        for (const GridRow& r : result.rows) {
            if (!r.ok()) continue;
            kmax = std::max(kmax, std::abs(r.K));
            knmax = std::max(knmax, std::abs(r.KN));
            hmax = std::max(hmax, r.Hnorm);
        }
        ordered_json doc;
        doc["source"] = input;
        doc["mode"] = to_string(dp.mode);
        doc["nu"] = dp.nu;
        doc["nv"] = dp.nv;
        doc["hu"] = dp.hu;
        doc["hv"] = dp.hv;
        doc["flagged"] = result.flagged;
        doc["max_abs_K"] = kmax;
        doc["max_abs_KN"] = knmax;
        doc["max_Hnorm"] = hmax;
        if (c.format == "json") {
            text << json_text(doc);
        } else {
            for (auto& [k, val] : doc.items()) text << k << ": " << val.dump() << '\n';
        }
    }
    emit(c.out, text.str(), out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Curvature invariants and classification of Monge patches in E^4", "monge4"};
    app.require_subcommand(1);

    CommonFlags c;
    double eval_u = 0.0, eval_v = 0.0;
    std::vector<std::string> predicates;
    double rank_tol = 1e-8;
    OdeFlags ode;
    std::string ingest_input;

    CLI::App* eval = app.add_subcommand("eval", "Invariants K, KN, H1, H2, |H| at one point");
    add_surface_flags(eval, c.surface);
    eval->add_option("-u", eval_u, "u coordinate")->required();
    eval->add_option("-v", eval_v, "v coordinate")->required();

    CLI::App* grid = app.add_subcommand("grid", "Sample invariants and residuals on a uniform grid");
    add_surface_flags(grid, c.surface);
    add_grid_flags(grid, c.grid);
    add_workers_flag(grid, c.workers);

    CLI::App* classify = app.add_subcommand("classify", "Evaluate classification predicates over a grid");
    add_surface_flags(classify, c.surface);
    add_grid_flags(classify, c.grid);
    add_tol_flag(classify, c.tol);
    classify->add_option("--rank-tol", rank_tol, "relative singular-value cut-off for the first normal rank")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    classify->add_option("--predicates", predicates,
                         "comma-separated subset of minimal,chen,wintgen_ideal,pseudo_umbilical,flat,k_plus_kn_zero "
                         "(default: all)")
        ->delimiter(',');
    add_workers_flag(classify, c.workers);

    CLI::App* verify = app.add_subcommand("verify", "Run the built-in identity suite");

    CLI::App* odecmd = app.add_subcommand("ode", "Integrate the minimal-profile ODE r'' = r(1+r'^2)/(1+r^2)");
    odecmd->add_option("--a", ode.a, "profile parameter a (nonzero)")->capture_default_str();
    odecmd->add_option("--b", ode.b, "profile shift b")->capture_default_str();
    odecmd->add_option("--sigma", ode.sigma, "sign +1 or -1")->check(CLI::IsMember({1, -1}))->capture_default_str();
    odecmd->add_option("--range", ode.range, "integration interval LO HI")->expected(2)->capture_default_str();
    odecmd->add_option("--steps", ode.steps, "RK4 steps")->check(CLI::Range(2, 100000000))->capture_default_str();
    odecmd->add_option("--r0", ode.r0, "initial r (default: closed-form profile at LO)");
    odecmd->add_option("--r0p", ode.r0p, "initial r' (default: closed-form profile at LO)");

    CLI::App* ingest = app.add_subcommand("ingest", "Run the finite-difference pipeline on sampled u,v,f[,g] data");
    ingest->add_option("input,--input", ingest_input, "CSV file with header u,v,f or u,v,f,g")->required();

    // Defaults differ per subcommand, so each keeps its own format slot.
    std::array<std::string, 6> formats;
    const std::array<std::pair<CLI::App*, const char*>, 6> outputs{
        {{eval, "json"}, {grid, "csv"}, {classify, "json"}, {verify, "text"}, {odecmd, "csv"}, {ingest, "csv"}}};
    for (std::size_t k = 0; k < outputs.size(); ++k) {
        add_output_flags(outputs[k].first, c.out, formats[k], outputs[k].second);
    }

    // CLI11 consumes arguments from the back; drop the program name.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    for (std::size_t k = 0; k < outputs.size(); ++k) {
        if (*outputs[k].first) c.format = formats[k];
    }

    try {
        if (*eval) return cmd_eval(c, eval_u, eval_v, out);
        if (*grid) return cmd_grid(c, out);
        if (*classify) return cmd_classify(c, predicates, rank_tol, out);
        if (*verify) return cmd_verify(c, out);
        if (*odecmd) return cmd_ode(c, ode, out);
        if (*ingest) return cmd_ingest(c, ingest_input, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IngestError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DomainError& e) {
        err << "evaluation error: " << e.what() << '\n';
        return kExitEvaluation;
    } catch (const ConsistencyError& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return kExitEvaluation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitEvaluation;
    }
    return kExitUsage;
}

}  // namespace monge4
