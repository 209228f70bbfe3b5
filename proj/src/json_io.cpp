#include "secondary/json_io.hpp"

#include "secondary/errors.hpp"

namespace secondary {

namespace {

long long as_integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw MalformedInput(std::string(what) + " must be an integer");
    return j.get<long long>();
}

}  // namespace

ConfigFile parse_config_file(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw MalformedInput("not valid JSON");
    if (!j.is_object()) throw MalformedInput("top level must be an object");
    if (!j.contains("points") || !j["points"].is_array())
        throw MalformedInput("missing \"points\" array");

    std::vector<Point> points;
    for (const Json& p : j["points"]) {
        if (!p.is_array() || p.size() != 2) throw MalformedInput("each point must be [x, y]");
        points.push_back(Point{Rational(as_integer(p[0], "point coordinate")),
                               Rational(as_integer(p[1], "point coordinate"))});
    }

    ConfigFile file;
    file.config = validate_configuration(points);
    if (j.contains("region")) {
        if (!j["region"].is_array()) throw MalformedInput("\"region\" must be an array of labels");
        std::vector<int> boundary;
        for (const Json& v : j["region"])
            boundary.push_back(static_cast<int>(as_integer(v, "region label")));
        file.region = validate_region(file.config, boundary);
    }
    if (j.contains("seed")) file.seed = static_cast<std::uint64_t>(as_integer(j["seed"], "seed"));
    if (j.contains("budget")) file.budget = as_integer(j["budget"], "budget");
    return file;
}

Region effective_region(const ConfigFile& file) {
    return file.region ? *file.region : hull_region(file.config);
}

Json rational_json(const Rational& r) { return to_string(r); }

Json point_json(const Point& p) { return Json::array({rational_json(p.x), rational_json(p.y)}); }

Json configuration_json(const Configuration& config) {
    Json points = Json::array();
    for (const Point& p : config.points)
        points.push_back(Json::array({static_cast<long long>(numerator(p.x)),
                                      static_cast<long long>(numerator(p.y))}));
    return Json{{"points", points}};
}

Json subdivision_json(const Subdivision& d, std::optional<int> id) {
    Json out = Json::object();
    if (id) out["id"] = *id;
    out["region"] = d.region.boundary;
    Json cells = Json::array();
    for (const Cell& c : d.cells) cells.push_back(c.vertices);
    out["cells"] = cells;
    Json walls = Json::array();
    for (const Wall& w : d.walls) walls.push_back(Json::array({w.first, w.second}));
    out["walls"] = walls;
    out["unused"] = d.unused;
    out["codim"] = codimension(d);
    return out;
}

Json scheme_json(const PerturbationScheme& scheme) {
    return Json{{"seed", scheme.seed}, {"t", rational_json(scheme.t)}, {"k", scheme.k}};
}

Json classification_json(const Classification& classification) {
    Json rows = Json::array();
    int id = 0;
    for (const ClassificationRow& row : classification.rows) {
        Json r = subdivision_json(row.d, id++);
        r["status"] = status_name(row.status);
        r["too_rigid"] = row.too_rigid;
        r["rank"] = row.rank;
        r["rep_dim_mod_translations"] = row.rep_dim_mod_translations;
        rows.push_back(std::move(r));
    }
    return Json{{"scheme", scheme_json(classification.scheme)},
                {"count", rows.size()},
                {"rows", rows}};
}

Json gwd_json(const GwD& gwd) {
    Json edges = Json::array();
    for (const GwD::Edge& e : gwd.edges)
        edges.push_back(Json{{"cells", Json::array({e.cell_a, e.cell_b})},
                             {"wall", Json::array({e.wall.first, e.wall.second})},
                             {"direction", point_json(e.dir)}});
    Json rays = Json::array();
    for (const GwD::Ray& r : gwd.rays)
        rays.push_back(Json{{"cell", r.cell},
                            {"boundary_edge", Json::array({r.boundary_edge.first, r.boundary_edge.second})},
                            {"direction", point_json(r.dir)}});
    return Json{{"vertices", gwd.num_vertices}, {"edges", edges}, {"rays", rays}};
}

Json affine_fan_json(const AffineFan& fan) {
    Json vertices = Json::array();
    for (const Point& v : fan.vertices) vertices.push_back(point_json(v));
    Json edges = Json::array();
    for (const auto& [a, b] : fan.bounded_edges) edges.push_back(Json::array({a, b}));
    Json rays = Json::array();
    for (const AffineFan::Ray& r : fan.rays)
        rays.push_back(Json{{"cell", r.cell},
                            {"boundary_edge", Json::array({r.boundary_edge.first, r.boundary_edge.second})},
                            {"direction", point_json(r.direction)}});
    return Json{{"vertices", vertices}, {"bounded_edges", edges}, {"rays", rays}};
}

Json conical_fan_json(const ConicalFan& fan) {
    Json rays = Json::array();
    for (const Point& r : fan.rays) rays.push_back(point_json(r));
    return Json{{"rays", rays}};
}

Json secondary_cone_json(const SecondaryCone& cone) {
    auto rowsOf = [](const std::vector<QVec>& rows) {
        Json out = Json::array();
        for (const QVec& row : rows) {
            Json r = Json::array();
            for (const Rational& v : row) r.push_back(rational_json(v));
            out.push_back(std::move(r));
        }
        return out;
    };
    return Json{{"dim", cone.dim},
                {"equalities", rowsOf(cone.equalities)},
                {"inequalities", rowsOf(cone.inequalities)}};
}

Json chain_element_json(const ChainElement& element) {
    Json terms = Json::array();
    for (const auto& [d, coeff] : element) {
        Json term = subdivision_json(d);
        term["coefficient"] = coeff;
        terms.push_back(std::move(term));
    }
    return terms;
}

Json chain_complex_json(const ChainComplex& complex) {
    Json degrees = Json::array();
    for (const auto& basis : complex.bases) degrees.push_back(basis.size());

    Json bases = Json::array();
    for (int k = 0; k < static_cast<int>(complex.bases.size()); ++k) {
        Json level = Json::array();
        for (int i = 0; i < static_cast<int>(complex.bases[static_cast<size_t>(k)].size()); ++i)
            level.push_back(subdivision_json(complex.bases[static_cast<size_t>(k)][static_cast<size_t>(i)], i));
        bases.push_back(std::move(level));
    }

    Json blocks = Json::array();
    for (const auto& [key, block] : complex.differentials) {
        Json entries = Json::array();
        for (const auto& [rc, v] : block.entries)
            entries.push_back(Json::array({rc.first, rc.second, v}));
        blocks.push_back(Json{{"from_degree", key.first},
                              {"to_degree", key.second},
                              {"rows", block.rows},
                              {"cols", block.cols},
                              {"entries", entries}});
    }

    return Json{{"region", complex.region.boundary},
                {"degrees", degrees},
                {"bases", bases},
                {"differentials", blocks},
                {"provenance", Json{{"seed", complex.scheme.seed},
                                    {"t", rational_json(complex.scheme.t)},
                                    {"k", complex.scheme.k},
                                    {"budget", complex.budget}}}};
}

Json d_squared_report_json(const DSquaredReport& report, const ChainComplex& complex) {
    Json failures = Json::array();
    for (const DSquaredReport::Failure& f : report.failures) {
        const Subdivision& source =
            complex.bases[static_cast<size_t>(f.source_degree)][static_cast<size_t>(f.source_index)];
        const Subdivision& target =
            complex.bases[static_cast<size_t>(f.target_degree)][static_cast<size_t>(f.target_index)];
        Json paths = Json::array();
        for (const DSquaredReport::Path& p : f.paths) {
            const Subdivision& mid =
                complex.bases[static_cast<size_t>(p.mid_degree)][static_cast<size_t>(p.mid_index)];
            paths.push_back(Json{{"mid", subdivision_json(mid, p.mid_index)},
                                 {"first_step", p.first_step},
                                 {"second_step", p.second_step}});
        }
        failures.push_back(Json{{"source", subdivision_json(source, f.source_index)},
                                {"target", subdivision_json(target, f.target_index)},
                                {"total", f.total},
                                {"paths", paths}});
    }
    return Json{{"ok", report.ok}, {"failures", failures}};
}

}  // namespace secondary
