#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>

#include "monge4/classify.hpp"
#include "monge4/error.hpp"
#include "monge4/expr.hpp"
#include "monge4/grid.hpp"
#include "monge4/invariants.hpp"
#include "monge4/patch.hpp"
#include "monge4/serialize.hpp"
#include "monge4/verify.hpp"

namespace py = pybind11;
using namespace monge4;

namespace {

using Range = std::optional<std::pair<double, double>>;

std::optional<Interval> to_interval(const Range& r) {
    if (!r) return std::nullopt;
    return Interval{r->first, r->second};
}

Domain to_domain(const Range& u, const Range& v) { return Domain{to_interval(u), to_interval(v)}; }

GridSpec to_grid(double u0, double u1, double v0, double v1, int nu, int nv) {
    GridSpec g{u0, u1, v0, v1, nu, nv};
    g.validate();
    return g;
}

py::dict invariants_dict(const InvariantSet& inv) {
    py::dict d;
    d["K"] = inv.K;
    d["KN"] = inv.KN;
    d["H1"] = inv.H1;
    d["H2"] = inv.H2;
    d["Hnorm"] = inv.Hnorm;
    return d;
}

// Columns reshaped to (nu, nv); flags stay a flat list in row order.
py::dict grid_dict(const GridResult& r) {
    const auto nu = static_cast<py::ssize_t>(r.spec.nu), nv = static_cast<py::ssize_t>(r.spec.nv);
    py::dict d;
    auto column = [&](const char* name, double GridRow::*field) {
        py::array_t<double> a({nu, nv});
        auto m = a.mutable_unchecked<2>();
        for (py::ssize_t i = 0; i < nu; ++i)
            for (py::ssize_t j = 0; j < nv; ++j) m(i, j) = r.at(static_cast<int>(i), static_cast<int>(j)).*field;
        d[name] = std::move(a);
    };
    column("u", &GridRow::u);
    column("v", &GridRow::v);
    column("E", &GridRow::E);
    column("F", &GridRow::F);
    column("G", &GridRow::G);
    column("W2", &GridRow::W2);
    column("K", &GridRow::K);
    column("KN", &GridRow::KN);
    column("H1", &GridRow::H1);
    column("H2", &GridRow::H2);
    column("Hnorm", &GridRow::Hnorm);
    column("chen", &GridRow::chen);
    column("wintgen", &GridRow::wintgen);
    py::list flags;
    for (const GridRow& row : r.rows) flags.append(row.flag);
    d["flag"] = flags;
    d["flagged"] = r.flagged;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Curvature invariants of Monge patches in E^4";

    auto base = py::register_exception<Error>(m, "Monge4Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
    py::register_exception<IngestError>(m, "IngestError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<Jet2>(m, "Jet2")
        .def_readonly("val", &Jet2::val)
        .def_readonly("du", &Jet2::du)
        .def_readonly("dv", &Jet2::dv)
        .def_readonly("duu", &Jet2::duu)
        .def_readonly("duv", &Jet2::duv)
        .def_readonly("dvv", &Jet2::dvv)
        .def("as_tuple", [](const Jet2& j) { return py::make_tuple(j.val, j.du, j.dv, j.duu, j.duv, j.dvv); })
        .def("__repr__", [](const Jet2& j) {
            return "Jet2(" + format_real(j.val) + ", " + format_real(j.du) + ", " + format_real(j.dv) + ", " +
                   format_real(j.duu) + ", " + format_real(j.duv) + ", " + format_real(j.dvv) + ")";
        });

    py::class_<Expr>(m, "Expr")
        .def("eval", [](const Expr& e, double u, double v) { return e.eval({seed_u(u, v), seed_v(u, v)}); },
             py::arg("u"), py::arg("v"))
        .def_property_readonly("source", &Expr::source)
        .def("__str__", &Expr::to_string);

    m.def(
        "parse_expression",
        [](const std::string& text, bool profile) {
            return parse_expression(text, profile ? kProfileVars : kSurfaceVars);
        },
        py::arg("text"), py::arg("profile") = false);

    py::class_<MongePatch>(m, "MongePatch")
        .def_property_readonly("family", [](const MongePatch& p) { return std::string(to_string(p.family())); })
        .def_property_readonly("warnings", &MongePatch::warnings)
        .def_property_readonly("integrability_residual", &MongePatch::integrability_residual)
        .def("eval", [](const MongePatch& p, double u, double v) {
            const PatchJets j = p.eval(u, v);
            return py::make_tuple(j.f, j.g);
        })
        .def("to_json", [](const MongePatch& p) { return patch_to_json(p).dump(); });

    m.def(
        "explicit_patch",
        [](const std::string& f, const std::string& g, Range u, Range v) { return make_explicit(f, g, to_domain(u, v)); },
        py::arg("f"), py::arg("g"), py::arg("u_range") = py::none(), py::arg("v_range") = py::none());
    m.def(
        "translation_patch",
        [](const std::string& f3, const std::string& f4, const std::string& g3, const std::string& g4, Range u,
           Range v) { return make_translation(f3, f4, g3, g4, to_domain(u, v)); },
        py::arg("f3"), py::arg("f4"), py::arg("g3"), py::arg("g4"), py::arg("u_range") = py::none(),
        py::arg("v_range") = py::none());
    m.def(
        "aminov_patch",
        [](const std::string& r, Range u, Range v) { return make_aminov(r, to_interval(u), to_interval(v)); },
        py::arg("r"), py::arg("u_range") = py::none(), py::arg("v_range") = py::none());
    m.def(
        "gradient_patch",
        [](const std::string& p, const std::string& q, Range u, Range v, double integ_tol) {
            SampleSpec s;
            s.integ_tol = integ_tol;
            return make_gradient(p, q, to_domain(u, v), s);
        },
        py::arg("p"), py::arg("q"), py::arg("u_range") = py::none(), py::arg("v_range") = py::none(),
        py::arg("integ_tol") = 1e-8);
    m.def("patch_from_json", [](const std::string& text) { return patch_from_json(nlohmann::json::parse(text)); });
    m.def(
        "minimal_aminov_patch",
        [](double a, double b, int sigma, bool same_signs) {
            return make_aminov(minimal_aminov_profile(a, b, sigma, same_signs ? ExponentSigns::same : ExponentSigns::opposite),
                               std::nullopt);
        },
        py::arg("a"), py::arg("b") = 0.0, py::arg("sigma") = 1, py::arg("same_signs") = false);
    m.def(
        "minimal_translation_family",
        [](double c3, double c4, double e3, double e4, double p3, double p4, double a, double b, double c, double d) {
            return minimal_translation_family({c3, c4, e3, e4, p3, p4, a, b, c, d});
        },
        py::kw_only(), py::arg("c3") = 0.0, py::arg("c4") = 0.0, py::arg("e3") = 0.0, py::arg("e4") = 0.0,
        py::arg("p3") = 0.0, py::arg("p4") = 0.0, py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("c") = 0.0,
        py::arg("d") = 0.0);

    m.def("invariants", [](const MongePatch& p, double u, double v) { return invariants_dict(invariants_at(p, u, v)); },
          py::arg("patch"), py::arg("u"), py::arg("v"));
    m.def(
        "first_form",
        [](const MongePatch& p, double u, double v) {
            const FirstForm ff = first_form(p.eval(u, v));
            py::dict d;
            d["E"] = ff.E;
            d["F"] = ff.F;
            d["G"] = ff.G;
            d["W2"] = ff.W2;
            d["A"] = ff.A;
            d["B"] = ff.B;
            d["C"] = ff.C;
            return d;
        },
        py::arg("patch"), py::arg("u"), py::arg("v"));

    m.def(
        "_classify_json",
        [](const MongePatch& p, double u0, double u1, double v0, double v1, int nu, int nv, double tol, double rank_tol,
           int workers) {
            py::gil_scoped_release release;
            return report_to_json(classify_surface(p, to_grid(u0, u1, v0, v1, nu, nv), {tol, rank_tol}, workers)).dump();
        });
    m.def("_sample_grid", [](const MongePatch& p, double u0, double u1, double v0, double v1, int nu, int nv, int workers) {
        GridResult r;
        {
            py::gil_scoped_release release;
            r = sample_grid(p, to_grid(u0, u1, v0, v1, nu, nv), workers);
        }
        return grid_dict(r);
    });
    m.def(
        "curvature_from_csv",
        [](const std::string& path) { return grid_dict(fd_grid(ingest_csv_file(path))); }, py::arg("path"));
    m.def("max_mean_curvature", [](const MongePatch& p, double u0, double u1, double v0, double v1, int nu, int nv) {
        return max_mean_curvature(p, to_grid(u0, u1, v0, v1, nu, nv));
    });

    m.def(
        "integrate_profile_ode",
        [](double r0, double r0p, double lo, double hi, int steps) {
            const ProfileTable t = integrate_profile_ode(r0, r0p, Interval{lo, hi}, steps);
            const auto n = static_cast<py::ssize_t>(t.rows.size());
            py::array_t<double> u(n), r(n), rp(n), residual(n);
            for (py::ssize_t k = 0; k < n; ++k) {
                const ProfileRow& row = t.rows[static_cast<std::size_t>(k)];
                u.mutable_at(k) = row.u;
                r.mutable_at(k) = row.r;
                rp.mutable_at(k) = row.rp;
                residual.mutable_at(k) = row.residual;
            }
            py::dict d;
            d["u"] = u;
            d["r"] = r;
            d["rp"] = rp;
            d["residual"] = residual;
            d["max_abs_residual"] = t.max_abs_residual;
            return d;
        },
        py::arg("r0"), py::arg("r0p"), py::arg("lo"), py::arg("hi"), py::arg("steps"));

    m.def("run_identity_suite", [] {
        py::list out;
        for (const CheckResult& c : run_identity_suite()) out.append(py::make_tuple(c.name, c.passed, c.detail));
        return out;
    });
}
