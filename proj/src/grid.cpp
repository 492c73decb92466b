#include "monge4/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "monge4/error.hpp"
#include "parallel.hpp"

namespace monge4 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void fill(GridRow& row, const PointGeometry& geo) {
    const PointResiduals res = point_residuals(geo);
    row.E = geo.first.E;
    row.F = geo.first.F;
    row.G = geo.first.G;
    row.W2 = geo.first.W2;
    row.K = res.inv.K;
    row.KN = res.inv.KN;
    row.H1 = res.inv.H1;
    row.H2 = res.inv.H2;
    row.Hnorm = res.inv.Hnorm;
    row.chen = res.chen;
    row.wintgen = res.wintgen;
}

void flag_row(GridRow& row, std::string reason) {
    row.E = row.F = row.G = row.W2 = kNaN;
    row.K = row.KN = row.H1 = row.H2 = row.Hnorm = kNaN;
    row.chen = row.wintgen = kNaN;
    row.flag = std::move(reason);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

// Clusters the sorted distinct coordinates and checks uniform spacing.
std::vector<double> axis_nodes(std::vector<double> values, const char* axis) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const double span = values.back() - values.front();
    std::vector<double> nodes;
    for (double x : values) {
        if (nodes.empty() || x - nodes.back() > 1e-9 * span) nodes.push_back(x);
    }
    if (nodes.size() < 2) {
        throw IngestError(std::string("sample grid needs at least two distinct ") + axis + " values");
    }
    const double h = span / static_cast<double>(nodes.size() - 1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double expected = nodes.front() + static_cast<double>(i) * h;
        if (std::abs(nodes[i] - expected) > 1e-9 * h) {
            throw IngestError(std::string("non-uniform ") + axis + " spacing near " + axis + " = " +
                              format_real(nodes[i]));
        }
    }
    return nodes;
}

}  // namespace

void GridSpec::validate() const {
    if (!std::isfinite(u0) || !std::isfinite(u1) || !std::isfinite(v0) || !std::isfinite(v1)) {
        throw ParameterError("grid bounds must be finite");
    }
    if (!(u1 > u0) || !(v1 > v0)) throw ParameterError("grid needs u1 > u0 and v1 > v0");
    if (nu < 2 || nv < 2) throw ParameterError("grid needs nu >= 2 and nv >= 2");
}

GridResult sample_grid(const MongePatch& patch, const GridSpec& spec, int workers) {
    spec.validate();
    GridResult result;
    result.spec = spec;
    result.rows.resize(spec.size());
    detail::parallel_for(result.rows.size(), workers, [&](std::size_t k) {
        const int i = static_cast<int>(k / static_cast<std::size_t>(spec.nv));
        const int j = static_cast<int>(k % static_cast<std::size_t>(spec.nv));
        GridRow& row = result.rows[k];
        row.u = spec.u_at(i);
        row.v = spec.v_at(j);
        try {
            fill(row, geometry_at(patch, row.u, row.v));
        } catch (const DomainError&) {
            flag_row(row, "domain_error");
        } catch (const Error&) {
            flag_row(row, "eval_error");
        }
    });
    result.flagged = static_cast<std::size_t>(std::count_if(result.rows.begin(), result.rows.end(),
                                                            [](const GridRow& r) { return !r.ok(); }));
    return result;
}

const char* to_string(SampleMode m) noexcept { return m == SampleMode::monge3 ? "monge3" : "monge4"; }

PatchJets fd_jets(const DiscretePatch& dp, int i, int j) {
    if (i < 1 || j < 1 || i > dp.nu - 2 || j > dp.nv - 2) {
        throw ParameterError("finite-difference jets need an interior node; got (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
    }
    const double hu = dp.hu, hv = dp.hv;
    auto jet = [&](const std::vector<double>& s) {
        auto at = [&](int a, int b) { return s[dp.index(a, b)]; };
        Jet2 out;
        out.val = at(i, j);
        out.du = (at(i + 1, j) - at(i - 1, j)) / (2.0 * hu);
        out.dv = (at(i, j + 1) - at(i, j - 1)) / (2.0 * hv);
        out.duu = (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (hu * hu);
        out.dvv = (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / (hv * hv);
        out.duv = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4.0 * hu * hv);
        return out;
    };
    return {jet(dp.f), jet(dp.g)};
}

DiscretePatch ingest_samples(const std::vector<SampleRow>& rows, SampleMode mode, std::string provenance) {
    if (rows.empty()) throw IngestError("no sample rows");
    std::vector<double> us, vs;
    us.reserve(rows.size());
    vs.reserve(rows.size());
    for (const SampleRow& r : rows) {
        if (!std::isfinite(r.u) || !std::isfinite(r.v)) {
            throw IngestError("line " + std::to_string(r.line) + ": coordinates must be finite");
        }
        us.push_back(r.u);
        vs.push_back(r.v);
    }
    const std::vector<double> unodes = axis_nodes(us, "u");
    const std::vector<double> vnodes = axis_nodes(vs, "v");

    DiscretePatch dp;
    dp.nu = static_cast<int>(unodes.size());
    dp.nv = static_cast<int>(vnodes.size());
    dp.u0 = unodes.front();
    dp.v0 = vnodes.front();
    dp.hu = (unodes.back() - unodes.front()) / (dp.nu - 1);
    dp.hv = (vnodes.back() - vnodes.front()) / (dp.nv - 1);
    dp.u_coord = unodes;
    dp.v_coord = vnodes;
    dp.mode = mode;
    dp.provenance = std::move(provenance);
    const std::size_t n = static_cast<std::size_t>(dp.nu) * static_cast<std::size_t>(dp.nv);
    dp.f.assign(n, kNaN);
    dp.g.assign(n, mode == SampleMode::monge3 ? 0.0 : kNaN);
    std::vector<std::size_t> seen(n, 0);

    for (const SampleRow& r : rows) {
        const long i = std::lround((r.u - dp.u0) / dp.hu);
        const long j = std::lround((r.v - dp.v0) / dp.hv);
        const std::size_t k = dp.index(static_cast<int>(i), static_cast<int>(j));
        if (seen[k] != 0) {
            throw IngestError("line " + std::to_string(r.line) + ": duplicate node (" + std::to_string(i) + "," +
                              std::to_string(j) + "), first seen on line " + std::to_string(seen[k]));
        }
        seen[k] = r.line == 0 ? 1 : r.line;
        dp.f[k] = r.f;
        if (mode == SampleMode::monge4) dp.g[k] = r.g;
    }

    std::vector<std::string> missing;
    for (int i = 0; i < dp.nu; ++i) {
        for (int j = 0; j < dp.nv; ++j) {
            if (seen[dp.index(i, j)] == 0) missing.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    if (!missing.empty()) {
        std::string msg = "incomplete grid: " + std::to_string(missing.size()) + " missing node(s):";
        const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
        for (std::size_t k = 0; k < shown; ++k) msg += " " + missing[k];
        if (shown < missing.size()) msg += " ...";
        throw IngestError(msg);
    }
    return dp;
}

DiscretePatch ingest_csv(std::istream& in, std::string provenance) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw IngestError("empty input: expected header 'u,v,f[,g]'");
    ++lineno;
    const auto header = split(line);
    SampleMode mode;
    if (header.size() == 3 && header[0] == "u" && header[1] == "v" && header[2] == "f") {
        mode = SampleMode::monge3;
    } else if (header.size() == 4 && header[0] == "u" && header[1] == "v" && header[2] == "f" && header[3] == "g") {
        mode = SampleMode::monge4;
    } else {
        throw IngestError("line 1: expected header 'u,v,f' or 'u,v,f,g'");
    }
    static constexpr const char* kColumns[] = {"u", "v", "f", "g"};

    std::vector<SampleRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            throw IngestError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                              " cells, got " + std::to_string(cells.size()));
        }
        double values[4] = {0.0, 0.0, 0.0, 0.0};
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string_view cell = cells[c];
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), values[c]);
            if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw IngestError("line " + std::to_string(lineno) + ": non-numeric cell '" + std::string(cell) +
                                  "' in column " + kColumns[c]);
            }
        }
        rows.push_back({values[0], values[1], values[2], values[3], lineno});
    }
    return ingest_samples(rows, mode, std::move(provenance));
}

DiscretePatch ingest_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return ingest_csv(in, path);
}

DiscretePatch sample_patch(const MongePatch& patch, const GridSpec& spec, SampleMode mode) {
    spec.validate();
    DiscretePatch dp;
    dp.nu = spec.nu;
    dp.nv = spec.nv;
    dp.u0 = spec.u0;
    dp.v0 = spec.v0;
    dp.hu = spec.hu();
    dp.hv = spec.hv();
    dp.mode = mode;
    dp.provenance = "sampled";
    for (int i = 0; i < spec.nu; ++i) dp.u_coord.push_back(spec.u_at(i));
    for (int j = 0; j < spec.nv; ++j) dp.v_coord.push_back(spec.v_at(j));
    dp.f.resize(spec.size());
    dp.g.resize(spec.size());
    for (int i = 0; i < spec.nu; ++i) {
        for (int j = 0; j < spec.nv; ++j) {
            const std::size_t k = dp.index(i, j);
            try {
                const PatchJets pj = patch.eval(dp.u_coord[i], dp.v_coord[j]);
                dp.f[k] = pj.f.val;
                dp.g[k] = mode == SampleMode::monge3 ? 0.0 : pj.g.val;
            } catch (const DomainError&) {
                dp.f[k] = kNaN;
                dp.g[k] = mode == SampleMode::monge3 ? 0.0 : kNaN;
            }
        }
    }
    return dp;
}

GridResult fd_grid(const DiscretePatch& dp) {
    GridResult result;
    result.spec = GridSpec{dp.u_coord.front(), dp.u_coord.back(), dp.v_coord.front(), dp.v_coord.back(), dp.nu, dp.nv};
    result.rows.resize(static_cast<std::size_t>(dp.nu) * dp.nv);
    auto finite_at = [&](int i, int j) {
        return std::isfinite(dp.f_at(i, j)) && std::isfinite(dp.g_at(i, j));
    };
    for (int i = 0; i < dp.nu; ++i) {
        for (int j = 0; j < dp.nv; ++j) {
            GridRow& row = result.rows[dp.index(i, j)];
            row.u = dp.u_coord[i];
            row.v = dp.v_coord[j];
            if (i == 0 || j == 0 || i == dp.nu - 1 || j == dp.nv - 1) {
                flag_row(row, "boundary");
                continue;
            }
            bool clean = true;
            for (int a = -1; a <= 1 && clean; ++a) {
                for (int b = -1; b <= 1 && clean; ++b) clean = finite_at(i + a, j + b);
            }
            if (!clean) {
                flag_row(row, "nonfinite");
                continue;
            }
            try {
                fill(row, geometry_from_jets(fd_jets(dp, i, j)));
            } catch (const Error&) {
                flag_row(row, "eval_error");
            }
        }
    }
    result.flagged = static_cast<std::size_t>(std::count_if(result.rows.begin(), result.rows.end(),
                                                            [](const GridRow& r) { return !r.ok(); }));
    return result;
}

void write_samples_csv(const DiscretePatch& dp, std::ostream& out) {
    const bool with_g = dp.mode == SampleMode::monge4;
    out << (with_g ? "u,v,f,g\n" : "u,v,f\n");
    for (int i = 0; i < dp.nu; ++i) {
        for (int j = 0; j < dp.nv; ++j) {
            out << format_real(dp.u_coord[i]) << ',' << format_real(dp.v_coord[j]) << ',' << format_real(dp.f_at(i, j));
            if (with_g) out << ',' << format_real(dp.g_at(i, j));
            out << '\n';
        }
    }
}

void export_csv(const GridResult& result, std::ostream& out) {
    out << "u,v,E,F,G,W2,K,KN,H1,H2,Hnorm,chen,wintgen,flag\n";
    for (const GridRow& r : result.rows) {
        for (double x : {r.u, r.v, r.E, r.F, r.G, r.W2, r.K, r.KN, r.H1, r.H2, r.Hnorm, r.chen, r.wintgen}) {
            out << format_real(x) << ',';
        }
        out << r.flag << '\n';
    }
}

void export_csv(const GridResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    export_csv(result, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace monge4
