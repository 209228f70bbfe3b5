#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "secondary/errors.hpp"
#include "secondary/json_io.hpp"
#include "secondary/svg.hpp"

namespace {

using namespace secondary;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInput("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& outPath, const std::string& content) {
    if (outPath.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw WorkbenchError("cannot write file: " + outPath);
    out << content;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Shared per-subcommand inputs with flag > file > default precedence.
struct Inputs {
    std::string path;
    std::uint64_t seed = 1;
    long long budget = kDefaultBudget;
    std::optional<int> maxCodim;
    std::string regionSpec;
    std::string outPath;
    long long flipSign = -1;
    int maxK = kStabilizeMaxK;

    bool seedSet = false, budgetSet = false;

    ConfigFile file;
    Region region;

    void load() {
        file = parse_config_file(read_file(path));
        if (!seedSet && file.seed) seed = *file.seed;
        if (!budgetSet && file.budget) budget = *file.budget;
        if (!regionSpec.empty()) {
            std::vector<int> boundary;
            std::stringstream ss(regionSpec);
            std::string item;
            while (std::getline(ss, item, ',')) {
                size_t used = 0;
                int label = 0;
                try {
                    label = std::stoi(item, &used);
                } catch (const std::exception&) {
                    throw MalformedInput("region label is not an integer: '" + item + "'");
                }
                if (used != item.size())
                    throw MalformedInput("region label is not an integer: '" + item + "'");
                boundary.push_back(label);
            }
            region = validate_region(file.config, boundary);
        } else {
            region = effective_region(file);
        }
    }

    /// Full enumeration; its canonical order defines the stable ids used by
    /// the id-taking commands.
    std::vector<Subdivision> enumerate_all() const {
        return enumerate_subdivisions(file.config, region, std::nullopt, budget);
    }

    const Subdivision& by_id(const std::vector<Subdivision>& all, long long id) const {
        if (id < 0 || id >= static_cast<long long>(all.size())) throw UnknownId(id);
        return all[static_cast<size_t>(id)];
    }
};

void attach_common(CLI::App* cmd, Inputs& in, bool withSeed) {
    cmd->add_option("file", in.path, "input configuration (JSON)")->required();
    CLI::Option* budget = cmd->add_option("--budget", in.budget, "search-node budget");
    cmd->add_option("--region", in.regionSpec,
                    "comma-separated boundary labels (default: file region or convex hull)");
    CLI::Option* seed =
        withSeed ? cmd->add_option("--seed", in.seed, "perturbation seed (default 1)") : nullptr;
    cmd->parse_complete_callback([&in, budget, seed]() {
        in.budgetSet = budget->count() > 0;
        if (seed) in.seedSet = seed->count() > 0;
    });
}

int cmd_validate(Inputs& in) {
    in.load();  // throws on anything wrong
    Json report{{"command", "validate"},
                {"valid", true},
                {"points", in.file.config.size()},
                {"region", in.region.boundary}};
    write_output(in.outPath, dump(report));
    return 0;
}

int cmd_enumerate(Inputs& in) {
    in.load();
    std::vector<Subdivision> all =
        enumerate_subdivisions(in.file.config, in.region, in.maxCodim, in.budget);

    size_t maxWalls = 0;
    for (const Subdivision& d : all) maxWalls = std::max(maxWalls, d.walls.size());
    std::vector<int> byWalls(maxWalls + 1, 0);
    for (const Subdivision& d : all) ++byWalls[d.walls.size()];

    Json subdivisions = Json::array();
    int id = 0;
    for (const Subdivision& d : all) subdivisions.push_back(subdivision_json(d, id++));
    Json report{{"command", "enumerate"},
                {"config", configuration_json(in.file.config)},
                {"region", in.region.boundary},
                {"count", all.size()},
                {"by_wall_count", byWalls},
                {"subdivisions", subdivisions}};
    write_output(in.outPath, dump(report));
    return 0;
}

int cmd_classify(Inputs& in) {
    in.load();
    Classification cls =
        classify_all(in.file.config, in.region, in.seed, in.maxCodim, in.budget, in.maxK);
    Json report{{"command", "classify"},
                {"config", configuration_json(in.file.config)},
                {"region", in.region.boundary}};
    report.update(classification_json(cls));
    write_output(in.outPath, dump(report));
    return 0;
}

int cmd_differential(Inputs& in, long long id) {
    in.load();
    std::vector<Subdivision> all = in.enumerate_all();
    const Subdivision& d = in.by_id(all, id);
    PerturbationScheme scheme =
        stabilize_t(in.file.config, in.region, in.seed, in.budget, in.maxK);
    ChainElement image = differential(in.file.config, unit_chain(d), scheme, in.budget);
    Json report{{"command", "differential"},
                {"scheme", scheme_json(scheme)},
                {"input", subdivision_json(d, static_cast<int>(id))},
                {"terms", chain_element_json(image)}};
    write_output(in.outPath, dump(report));
    return 0;
}

int cmd_secondary_cone(Inputs& in, long long id) {
    in.load();
    std::vector<Subdivision> all = in.enumerate_all();
    const Subdivision& d = in.by_id(all, id);
    SecondaryCone cone = secondary_cone(in.file.config, d);
    RegularityResult reg = is_regular(in.file.config, d);
    Json report{{"command", "secondary-cone"},
                {"input", subdivision_json(d, static_cast<int>(id))},
                {"regular", reg.regular}};
    if (reg.witness) {
        Json w = Json::array();
        for (const Rational& v : *reg.witness) w.push_back(rational_json(v));
        report["witness"] = w;
    }
    report.update(secondary_cone_json(cone));
    write_output(in.outPath, dump(report));
    return 0;
}

int cmd_render(Inputs& in, long long subdivisionId, long long fanId, bool wantFan) {
    in.load();
    std::vector<Subdivision> all = in.enumerate_all();
    std::string svg;
    if (wantFan) {
        const Subdivision& d = in.by_id(all, fanId);
        std::optional<AffineFan> fan = normal_fan(in.file.config, d);
        if (!fan) throw WorkbenchError("subdivision " + std::to_string(fanId) +
                                       " is irregular: it has no normal fan to render");
        svg = render_fan_svg(*fan);
    } else {
        svg = render_subdivision_svg(in.file.config, in.by_id(all, subdivisionId));
    }
    write_output(in.outPath, svg);
    return 0;
}

struct LeibnizOutcome {
    bool ok = true;
    int checked = 0;
    Json failures = Json::array();
};

/// Checks d(a o b) = da o b + (-1)^{walls(a)+1} a o db over subdivisions a, b
/// of two adjacent cells of any enumerated subdivision, glued along their
/// shared wall. Each distinct (cell, cell, wall) gluing shape is used once.
LeibnizOutcome leibniz_spot_checks(const Configuration& config, const Region& region,
                                   DifferentialEngine& engine, long long budget, int maxGluings,
                                   int maxSidesEach) {
    LeibnizOutcome out;
    std::vector<Subdivision> all = enumerate_subdivisions(config, region, std::nullopt, budget);
    std::set<std::tuple<std::vector<int>, std::vector<int>, Wall>> seen;
    for (const Subdivision& top : all) {
        for (const Wall& g : top.walls) {
            if (static_cast<int>(seen.size()) >= maxGluings) return out;
            std::vector<const Cell*> incident;
            for (const Cell& c : top.cells) {
                const auto& vs = c.vertices;
                for (size_t i = 0; i < vs.size(); ++i) {
                    const int u = vs[i], v = vs[(i + 1) % vs.size()];
                    if (Wall{std::min(u, v), std::max(u, v)} == g) {
                        incident.push_back(&c);
                        break;
                    }
                }
            }
            if (incident.size() != 2) continue;
            if (!seen.insert({incident[0]->vertices, incident[1]->vertices, g}).second) continue;

            std::vector<Subdivision> sidesA =
                enumerate_subdivisions(config, Region{incident[0]->vertices}, std::nullopt, budget);
            std::vector<Subdivision> sidesB =
                enumerate_subdivisions(config, Region{incident[1]->vertices}, std::nullopt, budget);
            if (static_cast<int>(sidesA.size()) > maxSidesEach) sidesA.resize(static_cast<size_t>(maxSidesEach));
            if (static_cast<int>(sidesB.size()) > maxSidesEach) sidesB.resize(static_cast<size_t>(maxSidesEach));
            for (const Subdivision& da : sidesA) {
                for (const Subdivision& db : sidesB) {
                    ChainElement a = unit_chain(da), b = unit_chain(db);
                    ChainElement lhs = engine.apply(compose(config, a, g, b));
                    const long long koszul = da.walls.size() % 2 == 0 ? -1 : 1;  // (-1)^{walls+1}
                    ChainElement rhs =
                        chain_add(compose(config, engine.apply(a), g, b),
                                  chain_scale(compose(config, a, g, engine.apply(b)), koszul));
                    ++out.checked;
                    if (lhs != rhs) {
                        out.ok = false;
                        out.failures.push_back(Json{{"left", subdivision_json(da)},
                                                    {"gluing_edge", Json::array({g.first, g.second})},
                                                    {"right", subdivision_json(db)}});
                    }
                }
            }
        }
    }
    return out;
}

int cmd_verify(Inputs& in) {
    in.load();
    const Configuration& config = in.file.config;

    Json report{{"command", "verify"},
                {"config", configuration_json(config)},
                {"region", in.region.boundary}};
    Json checks = Json::array();
    bool allPass = true;

    Classification cls = classify_all(config, in.region, in.seed, std::nullopt, in.budget, in.maxK);
    const PerturbationScheme& scheme = cls.scheme;
    report["scheme"] = scheme_json(scheme);
    report["classification"] = classification_json(cls);

    DifferentialEngine engine(config, scheme, in.budget);
    if (in.flipSign >= 0) engine.set_flip_sign(in.flipSign);
    ChainComplex cx = chain_complex(config, in.region, engine, in.budget);
    report["complex"] = chain_complex_json(cx);

    DSquaredReport dsq = verify_d_squared(cx);
    report["d_squared"] = d_squared_report_json(dsq, cx);
    checks.push_back(Json{{"name", "d_squared_zero"}, {"pass", dsq.ok}});
    allPass = allPass && dsq.ok;
    if (dsq.ok) report["homology"] = homology_ranks(cx);

    if (region_is_hull(config, in.region)) {
        bool ok = true;
        Json disagreements = Json::array();
        int id = 0;
        for (const ClassificationRow& row : cls.rows) {
            const bool lp = is_regular(config, row.d).regular;
            const bool fan = normal_fan(config, row.d).has_value();
            const bool prep = prep_feasible(dual_gwd(config, row.d)).has_value();
            if (lp != fan || fan != prep) {
                ok = false;
                Json bad = subdivision_json(row.d, id);
                bad["is_regular"] = lp;
                bad["normal_fan"] = fan;
                bad["prep_feasible"] = prep;
                disagreements.push_back(std::move(bad));
            }
            ++id;
        }
        Json check{{"name", "regularity_triple_equivalence"}, {"pass", ok}};
        if (!ok) check["disagreements"] = disagreements;
        checks.push_back(std::move(check));
        allPass = allPass && ok;
    }

    LeibnizOutcome leibniz = leibniz_spot_checks(config, in.region, engine, in.budget, 6, 3);
    Json leibnizCheck{{"name", "leibniz"},
                      {"pass", leibniz.ok},
                      {"pairs_checked", leibniz.checked}};
    if (!leibniz.ok) leibnizCheck["failures"] = leibniz.failures;
    checks.push_back(std::move(leibnizCheck));
    allPass = allPass && leibniz.ok;

    {
        bool ok = true;
        for (std::uint64_t s : {in.seed + 1, in.seed + 2}) {
            Classification other =
                classify_all(config, in.region, s, std::nullopt, in.budget, in.maxK);
            if (other.rows.size() != cls.rows.size()) {
                ok = false;
                break;
            }
            for (size_t i = 0; i < cls.rows.size(); ++i)
                if (other.rows[i].status != cls.rows[i].status) ok = false;
        }
        checks.push_back(Json{{"name", "seed_independence"}, {"pass", ok}});
        allPass = allPass && ok;
    }

    report["checks"] = checks;
    report["pass"] = allPass;
    write_output(in.outPath, dump(report));
    return allPass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact workbench for planar point configurations: subdivision enumeration,"
                 " regularity and rigidity classification, dual fans, and the signed"
                 " refinement complex"};
    app.require_subcommand(1);

    Inputs in;
    long long id = 0;
    long long fanId = -1, subdivisionId = -1;

    CLI::App* validate = app.add_subcommand("validate", "check a configuration file");
    attach_common(validate, in, false);
    validate->add_option("-o,--output", in.outPath, "write the report here instead of stdout");

    CLI::App* enumerateCmd = app.add_subcommand("enumerate", "list every subdivision");
    attach_common(enumerateCmd, in, false);
    enumerateCmd->add_option("--max-codim", in.maxCodim, "keep codimension <= this");
    enumerateCmd->add_option("-o,--output", in.outPath, "output path");

    CLI::App* classify = app.add_subcommand("classify", "classify every subdivision");
    attach_common(classify, in, true);
    classify->add_option("--max-codim", in.maxCodim, "keep codimension <= this");
    classify->add_option("-o,--output", in.outPath, "output path");
    classify->add_option("--max-k", in.maxK, "stabilization sweep limit")->group("");

    CLI::App* diff = app.add_subcommand("differential", "signed differential of one subdivision");
    attach_common(diff, in, true);
    diff->add_option("--id", id, "subdivision id from `enumerate`")->required();
    diff->add_option("-o,--output", in.outPath, "output path");
    diff->add_option("--max-k", in.maxK, "stabilization sweep limit")->group("");

    CLI::App* verify = app.add_subcommand(
        "verify", "one-shot: complex, d-squared, Leibniz, regularity equivalences, seeds");
    attach_common(verify, in, true);
    verify->add_option("-o,--output", in.outPath, "output path");
    verify->add_option("--flip-sign", in.flipSign, "corrupt the n-th computed sign")->group("");
    verify->add_option("--max-k", in.maxK, "stabilization sweep limit")->group("");

    CLI::App* cone = app.add_subcommand("secondary-cone", "weight-space cone of one subdivision");
    attach_common(cone, in, false);
    cone->add_option("--id", id, "subdivision id from `enumerate`")->required();
    cone->add_option("-o,--output", in.outPath, "output path");

    CLI::App* render = app.add_subcommand("render", "SVG of a subdivision or its fan");
    attach_common(render, in, false);
    render->add_option("--subdivision", subdivisionId, "subdivision id to draw");
    render->add_option("--fan", fanId, "subdivision id whose normal fan to draw");
    render->add_option("-o,--output", in.outPath, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (validate->parsed()) return cmd_validate(in);
        if (enumerateCmd->parsed()) return cmd_enumerate(in);
        if (classify->parsed()) return cmd_classify(in);
        if (diff->parsed()) return cmd_differential(in, id);
        if (verify->parsed()) return cmd_verify(in);
        if (cone->parsed()) return cmd_secondary_cone(in, id);
        if (render->parsed()) {
            if ((subdivisionId < 0) == (fanId < 0)) {
                std::cerr << "render: pass exactly one of --subdivision or --fan\n";
                return 3;
            }
            return cmd_render(in, subdivisionId, fanId, fanId >= 0);
        }
    } catch (const MalformedInput& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        return 5;
    } catch (const NonGenericPerturbation& e) {
        std::cerr << e.what() << " (try another --seed)\n";
        return 4;
    } catch (const WorkbenchError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
