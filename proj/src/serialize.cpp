#include "monge4/serialize.hpp"

#include <fstream>

#include "monge4/error.hpp"

namespace monge4 {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json interval_json(const Interval& iv) { return ordered_json::array({iv.lo, iv.hi}); }

std::optional<Interval> read_interval(const json& domain, const char* key) {
    if (!domain.contains(key)) return std::nullopt;
    const json& side = domain.at(key);
    if (!side.is_array() || side.size() != 2 || !side[0].is_number() || !side[1].is_number()) {
        throw ValidationError(std::string("patch domain '") + key + "' must be a [lo, hi] pair of numbers");
    }
    return Interval{side[0].get<double>(), side[1].get<double>()};
}

std::string read_expr(const json& exprs, const char* key) {
    if (!exprs.contains(key) || !exprs.at(key).is_string()) {
        throw ValidationError(std::string("patch exprs needs string field '") + key + "'");
    }
    return exprs.at(key).get<std::string>();
}

}  // namespace

ordered_json patch_to_json(const MongePatch& patch) {
    ordered_json doc;
    doc["family"] = to_string(patch.family());
    ordered_json exprs = ordered_json::object();
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ExplicitPayload>) {
                exprs["f"] = p.f.source();
                exprs["g"] = p.g.source();
            } else if constexpr (std::is_same_v<T, TranslationPayload>) {
                exprs["f3"] = p.f3.source();
                exprs["f4"] = p.f4.source();
                exprs["g3"] = p.g3.source();
                exprs["g4"] = p.g4.source();
            } else if constexpr (std::is_same_v<T, AminovPayload>) {
                exprs["r"] = p.r.expr.source();
            } else {
                exprs["p"] = p.p.source();
                exprs["q"] = p.q.source();
            }
        },
        patch.payload());
    doc["exprs"] = std::move(exprs);
    const Domain& d = patch.domain();
    if (d.u || d.v) {
        ordered_json dom = ordered_json::object();
        if (d.u) dom["u"] = interval_json(*d.u);
        if (d.v) dom["v"] = interval_json(*d.v);
        doc["domain"] = std::move(dom);
    }
    if (!patch.warnings().empty()) doc["warnings"] = patch.warnings();
    return doc;
}

MongePatch patch_from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("patch document must be a JSON object");
    if (!doc.contains("family") || !doc.at("family").is_string()) {
        throw ValidationError("patch document needs string field 'family'");
    }
    const auto family = family_from_string(doc.at("family").get<std::string>());
    if (!family) throw ValidationError("unknown patch family '" + doc.at("family").get<std::string>() + "'");
    if (!doc.contains("exprs") || !doc.at("exprs").is_object()) {
        throw ValidationError("patch document needs object field 'exprs'");
    }
    const json& exprs = doc.at("exprs");

    Domain domain;
    if (doc.contains("domain")) {
        const json& dom = doc.at("domain");
        if (!dom.is_object()) throw ValidationError("patch 'domain' must be an object");
        domain.u = read_interval(dom, "u");
        domain.v = read_interval(dom, "v");
    }

    switch (*family) {
        case Family::explicit_patch: return make_explicit(read_expr(exprs, "f"), read_expr(exprs, "g"), domain);
        case Family::translation:
            return make_translation(read_expr(exprs, "f3"), read_expr(exprs, "f4"), read_expr(exprs, "g3"),
                                    read_expr(exprs, "g4"), domain);
        case Family::aminov: return make_aminov(read_expr(exprs, "r"), domain.u, domain.v);
        case Family::gradient: return make_gradient(read_expr(exprs, "p"), read_expr(exprs, "q"), domain);
    }
    throw ValidationError("unknown patch family");
}

MongePatch load_patch_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
    return patch_from_json(doc);
}

ordered_json invariants_to_json(const InvariantSet& inv) {
    ordered_json out;
    out["K"] = inv.K;
    out["KN"] = inv.KN;
    out["H1"] = inv.H1;
    out["H2"] = inv.H2;
    out["Hnorm"] = inv.Hnorm;
    return out;
}

ordered_json grid_to_json(const GridSpec& g) {
    ordered_json out;
    out["u0"] = g.u0;
    out["u1"] = g.u1;
    out["v0"] = g.v0;
    out["v1"] = g.v1;
    out["nu"] = g.nu;
    out["nv"] = g.nv;
    return out;
}

ordered_json report_to_json(const ClassificationReport& report) {
    ordered_json out;
    for (Predicate p : kAllPredicates) {
        const PredicateResult& r = report[p];
        ordered_json entry;
        entry["max_residual"] = r.max_residual;
        entry["normalized_residual"] = r.normalized_residual;
        entry["verdict"] = to_string(r.verdict);
        out[to_string(p)] = std::move(entry);
    }
    out["first_normal_rank"] = report.first_normal_rank;
    out["chen_qualifier"] = to_string(report.chen_qualifier);
    out["grid"] = grid_to_json(report.grid);
    ordered_json tol;
    tol["tol"] = report.tolerances.tol;
    tol["rank_tol"] = report.tolerances.rank_tol;
    out["tolerances"] = std::move(tol);
    out["evaluated_points"] = report.evaluated_points;
    out["failed_points"] = report.failed_points;
    if (!report.first_failure.empty()) out["first_failure"] = report.first_failure;
    return out;
}

}  // namespace monge4
