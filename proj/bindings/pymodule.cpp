#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "secondary/errors.hpp"
#include "secondary/json_io.hpp"
#include "secondary/svg.hpp"

namespace py = pybind11;
using namespace secondary;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::object: {
            py::dict d;
            for (const auto& [k, v] : j.items()) d[py::str(k)] = json_to_py(v);
            return d;
        }
        case Json::value_t::array: {
            py::list l;
            for (const Json& v : j) l.append(json_to_py(v));
            return l;
        }
        case Json::value_t::string:
            return py::str(j.get<std::string>());
        case Json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case Json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float:
            return py::float_(j.get<double>());
        default:
            return py::none();
    }
}

Configuration make_configuration(const std::vector<std::pair<long long, long long>>& pts) {
    std::vector<Point> points;
    points.reserve(pts.size());
    for (const auto& [x, y] : pts) points.push_back(Point{Rational(x), Rational(y)});
    return validate_configuration(points);
}

Rational rational_from_py(const py::handle& v) {
    if (py::isinstance<py::int_>(v)) return Rational(v.cast<long long>());
    return parse_rational(v.cast<std::string>());
}

std::vector<std::pair<Subdivision, long long>> chain_to_terms(const ChainElement& chain) {
    std::vector<std::pair<Subdivision, long long>> out;
    for (const auto& [d, c] : chain) out.emplace_back(d, c);
    return out;
}

std::string subdivision_repr(const Subdivision& d) {
    std::ostringstream ss;
    ss << "Subdivision(cells=[";
    for (size_t i = 0; i < d.cells.size(); ++i) {
        if (i) ss << ", ";
        ss << "[";
        for (size_t j = 0; j < d.cells[i].vertices.size(); ++j) {
            if (j) ss << ",";
            ss << d.cells[i].vertices[j];
        }
        ss << "]";
    }
    ss << "], walls=" << d.walls.size() << ")";
    return ss.str();
}

}  // namespace

PYBIND11_MODULE(secondary_workbench, m) {
    m.doc() = "Exact planar subdivision workbench: enumeration, regularity, rigidity,"
              " dual fans, and the signed refinement complex";

    py::register_exception<WorkbenchError>(m, "WorkbenchError");

    py::class_<Configuration>(m, "Configuration")
        .def(py::init(&make_configuration), py::arg("points"))
        .def("__len__", &Configuration::size)
        .def_property_readonly("points", [](const Configuration& c) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const Point& p : c.points) out.emplace_back(to_string(p.x), to_string(p.y));
            return out;
        });

    py::class_<Region>(m, "Region")
        .def_property_readonly("boundary", [](const Region& r) { return r.boundary; })
        .def("__repr__", [](const Region& r) {
            std::ostringstream ss;
            ss << "Region([";
            for (size_t i = 0; i < r.boundary.size(); ++i) ss << (i ? "," : "") << r.boundary[i];
            ss << "])";
            return ss.str();
        });

    py::class_<Subdivision>(m, "Subdivision")
        .def_property_readonly("region", [](const Subdivision& d) { return d.region.boundary; })
        .def_property_readonly("cells",
                               [](const Subdivision& d) {
                                   std::vector<std::vector<int>> out;
                                   for (const Cell& c : d.cells) out.push_back(c.vertices);
                                   return out;
                               })
        .def_property_readonly("walls", [](const Subdivision& d) { return d.walls; })
        .def_property_readonly("unused", [](const Subdivision& d) { return d.unused; })
        .def_property_readonly("codim", [](const Subdivision& d) { return codimension(d); })
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def("__repr__", &subdivision_repr);

    py::class_<PerturbationScheme>(m, "PerturbationScheme")
        .def_property_readonly("seed", [](const PerturbationScheme& s) { return s.seed; })
        .def_property_readonly("t", [](const PerturbationScheme& s) { return to_string(s.t); })
        .def_property_readonly("k", [](const PerturbationScheme& s) { return s.k; });

    m.def("configuration", &make_configuration, py::arg("points"),
          "Validate integer points (no duplicates, no collinear triple)");
    m.def("hull_region", [](const Configuration& c) { return hull_region(c); });
    m.def("region_of", [](const Configuration& c, const std::vector<int>& boundary) {
        return validate_region(c, boundary);
    });

    m.def(
        "enumerate_subdivisions",
        [](const Configuration& c, const Region& region, std::optional<int> maxCodim,
           long long budget) { return enumerate_subdivisions(c, region, maxCodim, budget); },
        py::arg("config"), py::arg("region"), py::arg("max_codim") = std::nullopt,
        py::arg("budget") = kDefaultBudget);

    m.def(
        "subdivision_from_weights",
        [](const Configuration& c, const std::vector<py::object>& weights) {
            WeightVector w;
            for (const py::object& v : weights) w.push_back(rational_from_py(v));
            return subdivision_from_weights(c, w);
        },
        py::arg("config"), py::arg("weights"),
        "Concave-majorant subdivision of the hull for integer or \"p/q\" weights");

    m.def("is_regular", [](const Configuration& c, const Subdivision& d) {
        RegularityResult r = is_regular(c, d);
        std::optional<std::vector<std::string>> witness;
        if (r.witness) {
            witness.emplace();
            for (const Rational& v : *r.witness) witness->push_back(to_string(v));
        }
        return std::make_pair(r.regular, witness);
    });

    m.def("secondary_cone", [](const Configuration& c, const Subdivision& d) {
        return json_to_py(secondary_cone_json(secondary_cone(c, d)));
    });
    m.def("normal_fan", [](const Configuration& c, const Subdivision& d) -> py::object {
        std::optional<AffineFan> fan = normal_fan(c, d);
        return fan ? json_to_py(affine_fan_json(*fan)) : py::object(py::none());
    });
    m.def("dual_graph", [](const Configuration& c, const Subdivision& d) {
        return json_to_py(gwd_json(dual_gwd(c, d)));
    });
    m.def(
        "rep_rank",
        [](const Configuration& c, const Subdivision& d,
           const PerturbationScheme* scheme) { return rep_dim(dual_gwd(c, d), scheme); },
        py::arg("config"), py::arg("subdivision"), py::arg("scheme") = nullptr,
        "(rank, representation dimension modulo translations)");
    m.def(
        "too_rigid",
        [](const Configuration& c, const Subdivision& d) { return is_too_rigid(dual_gwd(c, d)); });

    m.def(
        "stabilize",
        [](const Configuration& c, const Region& region, std::uint64_t seed, long long budget) {
            return stabilize_t(c, region, seed, budget);
        },
        py::arg("config"), py::arg("region"), py::arg("seed") = 1, py::arg("budget") = kDefaultBudget);
    m.def("perturbedly_regular", &is_perturbedly_regular);

    m.def(
        "classify",
        [](const Configuration& c, const Region& region, std::uint64_t seed, long long budget) {
            return json_to_py(classification_json(classify_all(c, region, seed, std::nullopt, budget)));
        },
        py::arg("config"), py::arg("region"), py::arg("seed") = 1, py::arg("budget") = kDefaultBudget);

    m.def(
        "differential",
        [](const Configuration& c, const Subdivision& d, const PerturbationScheme& scheme,
           long long budget) { return chain_to_terms(differential(c, unit_chain(d), scheme, budget)); },
        py::arg("config"), py::arg("subdivision"), py::arg("scheme"),
        py::arg("budget") = kDefaultBudget);

    m.def(
        "compose_units",
        [](const Configuration& c, const Subdivision& a, const Wall& g, const Subdivision& b) {
            return chain_to_terms(compose(c, unit_chain(a), g, unit_chain(b)));
        },
        py::arg("config"), py::arg("a"), py::arg("edge"), py::arg("b"),
        "Signed single-edge gluing of two subdivisions");
    m.def("glue", &glue_unsigned, "Unsigned multi-edge gluing");

    m.def(
        "perturbation_set",
        [](const Configuration& c, const Subdivision& d, const PerturbationScheme& scheme,
           long long budget) { return perturbation_set(c, d, scheme, budget); },
        py::arg("config"), py::arg("subdivision"), py::arg("scheme"),
        py::arg("budget") = kDefaultBudget);

    m.def(
        "verify",
        [](const Configuration& c, const Region& region, std::uint64_t seed, long long budget) {
            PerturbationScheme scheme = stabilize_t(c, region, seed, budget);
            ChainComplex cx = chain_complex(c, region, scheme, budget);
            DSquaredReport rep = verify_d_squared(cx);
            Json out{{"degrees", Json::array()},
                     {"d_squared_ok", rep.ok},
                     {"scheme", scheme_json(scheme)}};
            for (const auto& basis : cx.bases) out["degrees"].push_back(basis.size());
            if (rep.ok) out["homology"] = homology_ranks(cx);
            return json_to_py(out);
        },
        py::arg("config"), py::arg("region"), py::arg("seed") = 1, py::arg("budget") = kDefaultBudget,
        "Chain complex summary with the d-squared verdict and homology ranks");

    m.def("render_subdivision_svg", &render_subdivision_svg);
    m.def(
        "render_fan_svg",
        [](const Configuration& c, const Subdivision& d) -> py::object {
            std::optional<AffineFan> fan = normal_fan(c, d);
            return fan ? py::object(py::str(render_fan_svg(*fan))) : py::object(py::none());
        },
        "SVG of the normal fan, or None when the subdivision is irregular");
}
