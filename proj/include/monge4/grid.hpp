#pragma once

// Grid sampling of patches, finite-difference jets on sampled (range-image
// style) data, and CSV import/export.
//
// Input CSV:  header "u,v,f" (monge3: g = 0) or "u,v,f,g" (monge4); rows in
//             any order; uniform spacing inferred and checked to 1e-9 relative.
// Output CSV: header "u,v,E,F,G,W2,K,KN,H1,H2,Hnorm,chen,wintgen,flag", LF line
//             endings, shortest round-trip decimals, "nan" cells on flagged
//             rows. flag is "ok" or the reason the row has no values.

#include <iosfwd>
#include <string>
#include <vector>

#include "monge4/classify.hpp"
#include "monge4/grid_spec.hpp"
#include "monge4/patch.hpp"

namespace monge4 {

struct GridRow {
    double u = 0.0;
    double v = 0.0;
    double E = 0.0, F = 0.0, G = 0.0, W2 = 0.0;
    double K = 0.0, KN = 0.0, H1 = 0.0, H2 = 0.0, Hnorm = 0.0;
    double chen = 0.0;
    double wintgen = 0.0;
    std::string flag = "ok";

    bool ok() const { return flag == "ok"; }
};

struct GridResult {
    GridSpec spec;
    std::vector<GridRow> rows;  // u-major, v fastest; nu * nv rows
    std::size_t flagged = 0;

    const GridRow& at(int i, int j) const { return rows[static_cast<std::size_t>(i) * spec.nv + j]; }
};

/// Evaluates invariants and classification residuals at every node. Points
/// that fail to evaluate are kept as flagged rows.
GridResult sample_grid(const MongePatch& patch, const GridSpec& spec, int workers = 1);

enum class SampleMode { monge3, monge4 };
const char* to_string(SampleMode m) noexcept;

/// Sampled heights on a uniform grid; node (i, j) sits at (u0 + i hu, v0 + j hv).
struct DiscretePatch {
    int nu = 0;
    int nv = 0;
    double u0 = 0.0, v0 = 0.0;
    double hu = 0.0, hv = 0.0;
    std::vector<double> f;  // row-major, index i * nv + j
    std::vector<double> g;  // all zero in monge3 mode
    std::vector<double> u_coord;  // exact coordinates as read
    std::vector<double> v_coord;
    SampleMode mode = SampleMode::monge4;
    std::string provenance;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * nv + j; }
    double f_at(int i, int j) const { return f[index(i, j)]; }
    double g_at(int i, int j) const { return g[index(i, j)]; }
};

/// Second-order central differences at an interior node. Throws
/// ParameterError on a boundary index; non-finite input yields non-finite jets.
PatchJets fd_jets(const DiscretePatch& dp, int i, int j);

struct SampleRow {
    double u = 0.0;
    double v = 0.0;
    double f = 0.0;
    double g = 0.0;
    std::size_t line = 0;  // 1-based source line, for diagnostics
};

/// Validates that the rows form a complete uniform rectangle.
DiscretePatch ingest_samples(const std::vector<SampleRow>& rows, SampleMode mode, std::string provenance = {});

/// Reads the input CSV format. The mode follows the header unless forced.
DiscretePatch ingest_csv(std::istream& in, std::string provenance = {});
DiscretePatch ingest_csv_file(const std::string& path);

/// Samples f and g of a patch on a grid (for synthetic range images).
DiscretePatch sample_patch(const MongePatch& patch, const GridSpec& spec, SampleMode mode = SampleMode::monge4);

/// Runs the curvature pipeline on finite-difference jets. The boundary ring
/// and nodes next to non-finite samples are flagged.
GridResult fd_grid(const DiscretePatch& dp);

void write_samples_csv(const DiscretePatch& dp, std::ostream& out);
void export_csv(const GridResult& result, std::ostream& out);
/// Throws IoError if the file cannot be written.
void export_csv(const GridResult& result, const std::string& path);

}  // namespace monge4
