// Acceptance checks for the subdivision workbench. Each numbered criterion
// prints exactly one PASS/FAIL line with its measured values; the process
// exits 0 only when every criterion passes. Run with a criterion number as
// the sole argument to execute just that criterion.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "secondary/operad.hpp"

using namespace secondary;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << s << "s";
    return out.str();
}

Configuration make_config(const std::vector<std::pair<long long, long long>>& pts) {
    std::vector<Point> points;
    points.reserve(pts.size());
    for (const auto& [x, y] : pts) points.push_back(Point{Rational(x), Rational(y)});
    return validate_configuration(points);
}

struct NamedConfig {
    std::string name;
    Configuration config;
};

// Five desk-scale configurations: two convex polygons, two with one interior
// point, and one six-point set whose triangulations include irregular ones.
std::vector<NamedConfig> standard_configs() {
    std::vector<NamedConfig> out;
    out.push_back({"square", make_config({{0, 0}, {1, 0}, {0, 1}, {1, 1}})});
    out.push_back({"triangle+interior", make_config({{0, 0}, {3, 0}, {0, 3}, {1, 1}})});
    out.push_back({"pentagon", make_config({{0, 0}, {3, 0}, {4, 2}, {2, 4}, {-1, 2}})});
    out.push_back({"hexagon", make_config({{0, 0}, {4, 0}, {6, 3}, {5, 7}, {1, 8}, {-2, 3}})});
    out.push_back({"nested", make_config({{0, 0}, {16, 0}, {0, 16}, {8, 4}, {4, 8}, {4, 4}})});
    return out;
}

Configuration pentagon_config() {
    return make_config({{0, 0}, {3, 0}, {4, 2}, {2, 4}, {-1, 2}});
}

Configuration hexagon_config() {
    return make_config({{0, 0}, {4, 0}, {6, 3}, {5, 7}, {1, 8}, {-2, 3}});
}

Configuration nested_config() {
    return make_config({{0, 0}, {16, 0}, {0, 16}, {8, 4}, {4, 8}, {4, 4}});
}

// Square with an off-center inner square: five cells whose dual graph carries
// parallel wall directions, the canonical source of too-rigid duals.
Configuration frame_config() {
    return make_config({{0, 0}, {8, 0}, {8, 8}, {0, 8}, {1, 2}, {5, 2}, {5, 6}, {1, 6}});
}

std::vector<long long> wall_count_histogram(const std::vector<Subdivision>& subs) {
    std::vector<long long> hist;
    for (const auto& d : subs) {
        const size_t k = d.walls.size();
        if (hist.size() <= k) hist.resize(k + 1, 0);
        ++hist[k];
    }
    return hist;
}

bool is_triangulation(const Subdivision& d) {
    for (const auto& c : d.cells)
        if (c.vertices.size() != 3) return false;
    return true;
}

template <typename T>
std::string join(const std::vector<T>& xs, const char* sep = ",") {
    std::ostringstream out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out << sep;
        out << xs[i];
    }
    return out.str();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// --- criterion 1: subdivision counts of convex polygons ---------------------
// A convex pentagon has (1, 5, 5) subdivisions by wall count and 5
// triangulations; a convex hexagon has (1, 9, 21, 14) and 14 triangulations.
Outcome criterion_counts() {
    const Configuration pent = pentagon_config();
    auto t0 = Clock::now();
    const auto pentSubs = enumerate_subdivisions(pent, hull_region(pent));
    const double pentTime = seconds_since(t0);

    const Configuration hex = hexagon_config();
    t0 = Clock::now();
    const auto hexSubs = enumerate_subdivisions(hex, hull_region(hex));
    const double hexTime = seconds_since(t0);

    const auto pentHist = wall_count_histogram(pentSubs);
    const auto hexHist = wall_count_histogram(hexSubs);
    long long pentTri = 0, hexTri = 0;
    for (const auto& d : pentSubs) pentTri += is_triangulation(d);
    for (const auto& d : hexSubs) hexTri += is_triangulation(d);

    Outcome out;
    out.pass = pentHist == std::vector<long long>{1, 5, 5} && pentTri == 5 &&
               hexHist == std::vector<long long>{1, 9, 21, 14} && hexTri == 14 &&
               pentTime < 5.0 && hexTime < 5.0;
    out.detail = "pentagon by walls (" + join(pentHist) + "), " + std::to_string(pentTri) +
                 " triangulations in " + fmt_seconds(pentTime) + "; hexagon by walls (" +
                 join(hexHist) + "), " + std::to_string(hexTri) + " triangulations in " +
                 fmt_seconds(hexTime) + "; limit 5s each";
    return out;
}

// --- criterion 2: the differential squares to zero --------------------------
Outcome criterion_d_squared() {
    const auto t0 = Clock::now();
    std::vector<std::string> verdicts;
    bool allOk = true;
    for (const auto& [name, config] : standard_configs()) {
        const Region region = hull_region(config);
        const PerturbationScheme scheme = stabilize_t(config, region, 1);
        const ChainComplex complex = chain_complex(config, region, scheme);
        const DSquaredReport report = verify_d_squared(complex);
        allOk = allOk && report.ok;
        long long entries = 0;
        for (const auto& [key, block] : complex.differentials) entries += (long long)block.entries.size();
        verdicts.push_back(name + (report.ok ? " ok" : " FAILED") + " (" +
                           std::to_string(entries) + " matrix entries)");
    }
    const double total = seconds_since(t0);
    Outcome out;
    out.pass = allOk && total < 60.0;
    out.detail = join(verdicts, "; ") + "; total " + fmt_seconds(total) + " (limit 60s)";
    return out;
}

// --- criterion 3: three equivalent regularity tests --------------------------
// For every subdivision: the weight LP, the normal-fan construction, and the
// unperturbed positive-representation LP must agree exactly.
Outcome criterion_triple_equivalence() {
    long long checked = 0, regular = 0, mismatches = 0;
    for (const auto& [name, config] : standard_configs()) {
        for (const auto& d : enumerate_subdivisions(config, hull_region(config))) {
            const bool viaWeights = is_regular(config, d).regular;
            const bool viaFan = normal_fan(config, d).has_value();
            const bool viaRepresentation = prep_feasible(dual_gwd(config, d)).has_value();
            ++checked;
            regular += viaWeights;
            if (viaWeights != viaFan || viaFan != viaRepresentation) ++mismatches;
        }
    }
    Outcome out;
    out.pass = mismatches == 0 && checked > 0;
    out.detail = std::to_string(checked) + " subdivisions across 5 configurations (" +
                 std::to_string(regular) + " regular), " + std::to_string(mismatches) +
                 " disagreements";
    return out;
}

// --- criterion 4: random weight vectors induce regular subdivisions ---------
Outcome criterion_weight_sampling() {
    std::mt19937_64 rng(20260814);
    std::uniform_int_distribution<long long> dist(-1'000'000, 1'000'000);
    const int perConfig = 1000;
    long long samples = 0, validated = 0, classifiedRegular = 0, roundTrips = 0;
    for (const auto& [name, config] : standard_configs()) {
        const Region hull = hull_region(config);
        for (int s = 0; s < perConfig; ++s) {
            WeightVector w(config.size());
            for (auto& entry : w) entry = Rational(dist(rng));
            const Subdivision d = subdivision_from_weights(config, w);
            ++samples;
            if (validate_subdivision(config, hull, d.cells) == d) ++validated;
            const RegularityResult r = is_regular(config, d);
            if (!r.regular) continue;
            ++classifiedRegular;
            if (subdivision_from_weights(config, *r.witness) == d) ++roundTrips;
        }
    }
    Outcome out;
    out.pass = samples == 5 * perConfig && validated == samples &&
               classifiedRegular == samples && roundTrips == samples;
    out.detail = std::to_string(samples) + " seeded weight vectors: " +
                 std::to_string(validated) + " validated, " + std::to_string(classifiedRegular) +
                 " regular, " + std::to_string(roundTrips) + " witness round-trips";
    return out;
}

// --- criterion 5: representation-space dimension law -------------------------
// Every dual graph of full rank satisfies
// dim Rep modulo translations = 2 #cells - #walls - 2 = expected codimension.
Outcome criterion_rank_law() {
    long long checked = 0, tooRigid = 0, violations = 0;
    for (const auto& [name, config] : standard_configs()) {
        for (const auto& d : enumerate_subdivisions(config, hull_region(config))) {
            const GwD gwd = dual_gwd(config, d);
            if (is_too_rigid(gwd)) {
                ++tooRigid;
                continue;
            }
            const auto [rank, modTranslations] = rep_dim(gwd);
            const int expected = 2 * (int)d.cells.size() - (int)d.walls.size() - 2;
            ++checked;
            if (rank != (int)gwd.edges.size() || modTranslations != expected ||
                expected != codimension(d))
                ++violations;
        }
    }
    Outcome out;
    out.pass = violations == 0 && checked > 0;
    out.detail = std::to_string(checked) + " full-rank duals obey the law, " +
                 std::to_string(violations) + " violations (" + std::to_string(tooRigid) +
                 " too-rigid duals excluded)";
    return out;
}

// --- criterion 6: irregular triangulations exist and classify stably --------
Outcome criterion_irregular_exists() {
    const Configuration config = nested_config();
    const Region region = hull_region(config);
    long long irregularTriangulations = 0;
    for (const auto& d : enumerate_subdivisions(config, region))
        if (is_triangulation(d) && !is_regular(config, d).regular) ++irregularTriangulations;

    std::vector<std::vector<std::pair<Status, bool>>> perSeed;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const Classification c = classify_all(config, region, seed);
        std::vector<std::pair<Status, bool>> row;
        row.reserve(c.rows.size());
        for (const auto& r : c.rows) row.emplace_back(r.status, r.too_rigid);
        perSeed.push_back(std::move(row));
    }
    const bool stable = perSeed[0] == perSeed[1] && perSeed[1] == perSeed[2];

    Outcome out;
    out.pass = irregularTriangulations >= 1 && stable;
    out.detail = std::to_string(irregularTriangulations) +
                 " irregular triangulations on the six-point configuration; statuses " +
                 (stable ? "identical" : "DIFFER") + " across seeds 1,2,3";
    return out;
}

// --- criterion 7: too-rigid duals exist and perturbation sets are consistent -
// The frame configuration (parallel wall directions) must yield duals with
// rank < #walls whose rank is restored at the stabilized deformation, and
// replacing every too-rigid member of the naive codim<=1 summand list by its
// perturbation set must reproduce the perturbedly regular codim-1 list.
Outcome criterion_too_rigid() {
    const Configuration frame = frame_config();
    const Region frameHull = hull_region(frame);
    const PerturbationScheme frameScheme = stabilize_t(frame, frameHull, 1);
    const auto frameSubs = enumerate_subdivisions(frame, frameHull, 1);

    long long found = 0;
    bool ranksRestored = true;
    for (const auto& d : frameSubs) {
        const GwD gwd = dual_gwd(frame, d);
        if (!is_too_rigid(gwd)) continue;
        ++found;
        ranksRestored =
            ranksRestored && rep_dim(gwd, &frameScheme).first == (int)gwd.edges.size();
    }

    const Configuration nested = nested_config();
    const Region nestedHull = hull_region(nested);
    const PerturbationScheme nestedScheme = stabilize_t(nested, nestedHull, 1);
    for (const auto& d : enumerate_subdivisions(nested, nestedHull)) {
        const GwD gwd = dual_gwd(nested, d);
        if (!is_too_rigid(gwd)) continue;
        ++found;
        ranksRestored =
            ranksRestored && rep_dim(gwd, &nestedScheme).first == (int)gwd.edges.size();
    }

    // Naive summand list: nontrivial codim<=1 strata admitting a positive
    // representation at the undeformed directions.
    std::set<Subdivision> naive, processed, target;
    for (const auto& d : frameSubs) {
        if (d.walls.empty()) continue;
        if (codimension(d) == 1 && is_perturbedly_regular(frame, d, frameScheme))
            target.insert(d);
        if (!prep_feasible(dual_gwd(frame, d)).has_value()) continue;
        naive.insert(d);
    }
    long long replaced = 0;
    for (const auto& d : naive) {
        if (is_too_rigid(dual_gwd(frame, d))) {
            ++replaced;
            for (const auto& p : perturbation_set(frame, d, frameScheme)) processed.insert(p);
        } else {
            processed.insert(d);
        }
    }

    Outcome out;
    out.pass = found >= 1 && ranksRestored && processed == target;
    out.detail = std::to_string(found) + " duals with rank < #walls (frame codim<=1 + nested), " +
                 std::string(ranksRestored ? "all ranks restored at stabilized t" :
                                             "rank NOT restored") +
                 "; naive list " + std::to_string(naive.size()) + " with " +
                 std::to_string(replaced) + " too-rigid members replaced -> " +
                 std::to_string(processed.size()) + " == " + std::to_string(target.size()) +
                 " perturbedly regular codim-1 strata: " +
                 (processed == target ? "equal" : "DIFFER");
    return out;
}

// --- criterion 8: the differential is a derivation for edge gluing ----------
// d(a o_g b) = da o_g b + (-1)^{#walls(a)+1} a o_g db on every composable pair
// drawn from walls of the test configurations' subdivisions.
Outcome criterion_leibniz() {
    long long gluings = 0, identities = 0, failures = 0;
    for (const auto& [name, config] : standard_configs()) {
        const Region hull = hull_region(config);
        const PerturbationScheme scheme = stabilize_t(config, hull, 1);
        DifferentialEngine engine(config, scheme);

        std::set<std::tuple<std::vector<int>, std::vector<int>, Wall>> seen;
        for (const auto& d : enumerate_subdivisions(config, hull)) {
            const GwD gwd = dual_gwd(config, d);
            for (const auto& edge : gwd.edges) {
                const Cell& cellA = d.cells[(size_t)edge.cell_a];
                const Cell& cellB = d.cells[(size_t)edge.cell_b];
                if (!seen.insert({cellA.vertices, cellB.vertices, edge.wall}).second) continue;
                ++gluings;
                const auto sideA =
                    enumerate_subdivisions(config, validate_region(config, cellA.vertices));
                const auto sideB =
                    enumerate_subdivisions(config, validate_region(config, cellB.vertices));
                for (const auto& a : sideA) {
                    const ChainElement da = engine.apply(unit_chain(a));
                    const long long koszul = a.walls.size() % 2 == 0 ? -1 : 1;
                    for (const auto& b : sideB) {
                        const ChainElement db = engine.apply(unit_chain(b));
                        const ChainElement lhs =
                            engine.apply(compose(config, unit_chain(a), edge.wall, unit_chain(b)));
                        const ChainElement rhs = chain_add(
                            compose(config, da, edge.wall, unit_chain(b)),
                            chain_scale(compose(config, unit_chain(a), edge.wall, db), koszul));
                        ++identities;
                        if (lhs != rhs) ++failures;
                    }
                }
            }
        }
    }
    Outcome out;
    out.pass = failures == 0 && identities > 0;
    out.detail = std::to_string(identities) + " identities over " + std::to_string(gluings) +
                 " distinct gluings across 5 configurations, " + std::to_string(failures) +
                 " failures";
    return out;
}

// --- criterion 9: total homology of convex-polygon complexes ----------------
Outcome criterion_homology() {
    std::vector<std::string> parts;
    bool ok = true;
    for (const Configuration& config : {pentagon_config(), hexagon_config()}) {
        const Region region = hull_region(config);
        const ChainComplex complex =
            chain_complex(config, region, stabilize_t(config, region, 1));
        const std::vector<int> ranks = homology_ranks(complex);
        long long total = 0;
        for (int r : ranks) total += r;
        ok = ok && total == 1;
        parts.push_back(std::string(config.size() == 5 ? "pentagon" : "hexagon") + " ranks (" +
                        join(ranks) + ") total " + std::to_string(total));
    }
    Outcome out;
    out.pass = ok;
    out.detail = join(parts, "; ") + "; expected total 1 each";
    return out;
}

// --- criterion 10: deterministic reports, seed-independent statuses ---------
Outcome criterion_determinism() {
    const fs::path dir =
        fs::temp_directory_path() / ("workbench-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path configPath = dir / "pentagon.json";
    {
        std::ofstream f(configPath);
        f << "{\"points\":[[0,0],[3,0],[4,2],[2,4],[-1,2]]}\n";
    }
    auto runVerify = [&](const fs::path& out) {
        const std::string cmd = std::string("\"") + WORKBENCH_BIN + "\" verify \"" +
                                configPath.string() + "\" --seed 1 -o \"" + out.string() +
                                "\" > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    const int exit1 = runVerify(dir / "run1.json");
    const int exit2 = runVerify(dir / "run2.json");
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream buf;
        buf << f.rdbuf();
        return buf.str();
    };
    const std::string run1 = slurp(dir / "run1.json");
    const std::string run2 = slurp(dir / "run2.json");
    const bool bytesEqual = !run1.empty() && run1 == run2;

    long long stableConfigs = 0;
    for (const Configuration& config : {pentagon_config(), nested_config()}) {
        const Region region = hull_region(config);
        std::vector<std::vector<Status>> statuses;
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            const Classification c = classify_all(config, region, seed);
            std::vector<Status> row;
            for (const auto& r : c.rows) row.push_back(r.status);
            statuses.push_back(std::move(row));
        }
        if (statuses[0] == statuses[1] && statuses[1] == statuses[2]) ++stableConfigs;
    }
    fs::remove_all(dir);

    Outcome out;
    out.pass = exit1 == 0 && exit2 == 0 && bytesEqual && stableConfigs == 2;
    out.detail = std::string("verify exits (") + std::to_string(exit1) + "," +
                 std::to_string(exit2) + "), reports " +
                 (bytesEqual ? "byte-identical" : "DIFFER") + " (" +
                 std::to_string(run1.size()) + " bytes); statuses stable across seeds 1,2,3 on " +
                 std::to_string(stableConfigs) + "/2 configurations";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"convex polygon subdivision counts", criterion_counts},
        {"differential squares to zero", criterion_d_squared},
        {"regularity triple equivalence", criterion_triple_equivalence},
        {"random weight vectors are regular", criterion_weight_sampling},
        {"representation dimension law", criterion_rank_law},
        {"irregular triangulations exist", criterion_irregular_exists},
        {"too-rigid duals and perturbation sets", criterion_too_rigid},
        {"differential is a gluing derivation", criterion_leibniz},
        {"convex polygon total homology", criterion_homology},
        {"deterministic reports", criterion_determinism},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int passed = 0, ran = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const int number = (int)i + 1;
        if (only != 0 && number != only) continue;
        ++ran;
        Outcome outcome;
        const auto t0 = Clock::now();
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        passed += outcome.pass;
        std::cout << "[" << (number < 10 ? " " : "") << number << "] "
                  << (outcome.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
                  << outcome.detail << " [" << fmt_seconds(seconds_since(t0)) << "]"
                  << std::endl;
    }
    std::cout << "acceptance: " << passed << "/" << ran << " criteria passed" << std::endl;
    return passed == ran ? 0 : 1;
}
