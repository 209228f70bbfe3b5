#include "secondary/rigidity.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "secondary/errors.hpp"
#include "secondary/lp.hpp"

namespace secondary {

PerturbationScheme make_scheme(const Configuration& config, std::uint64_t seed) {
    PerturbationScheme scheme;
    scheme.seed = seed;
    std::mt19937_64 rng(seed);
    const Integer den = Integer(1) << 54;
    long long index = 0;
    for (int i = 0; i < config.size(); ++i)
        for (int j = i + 1; j < config.size(); ++j) {
            // 40 random bits plus the pair index: positive and pairwise distinct
            // by construction (index < 4096 for any desk-scale configuration).
            std::uint64_t r = rng() >> 24;
            Integer num = Integer(r) * 4096 + (index++) + 1;
            scheme.theta.emplace(std::make_pair(i, j), Rational(num, den));
        }
    return scheme;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Regular: return "regular";
        case Status::IrregularPerturbedlyRegular: return "irregular_perturbedly_regular";
        default: return "irregular_not_perturbedly_regular";
    }
}

namespace {

bool positively_generates(const std::vector<Point>& dirs) {
    if (dirs.size() < 3) return false;
    // Fails iff some closed half-plane {x : <h, x> <= 0} contains every
    // direction; an extreme separating half-plane can be rotated until its
    // boundary touches a generator, so testing h = +-rot90 of each direction
    // is exhaustive.
    for (const Point& d : dirs) {
        for (const Point& h : {rot90(d), Point{d.y, Rational(-d.x)}}) {
            bool allIn = true;
            for (const Point& g : dirs)
                if (dot(h, g) > 0) { allIn = false; break; }
            if (allIn) return false;
        }
    }
    return true;
}

}  // namespace

GwD dual_gwd(const Configuration& config, const Subdivision& d) {
    GwD gwd;
    gwd.num_vertices = static_cast<int>(d.cells.size());

    for (const Wall& wall : d.walls) {
        std::vector<int> incident;
        for (size_t ci = 0; ci < d.cells.size(); ++ci) {
            const auto& v = d.cells[ci].vertices;
            if (std::find(v.begin(), v.end(), wall.first) != v.end() &&
                std::find(v.begin(), v.end(), wall.second) != v.end())
                incident.push_back(static_cast<int>(ci));
        }
        int a = incident[0], b = incident[1];
        Point seg = config[wall.second] - config[wall.first];
        Point normal = primitive_direction(rot90(seg));
        // Orient into the higher-indexed cell: test against a vertex of b off the wall.
        for (int u : d.cells[static_cast<size_t>(b)].vertices) {
            if (u == wall.first || u == wall.second) continue;
            if (dot(normal, config[u] - config[wall.first]) < 0)
                normal = Point{Rational(-normal.x), Rational(-normal.y)};
            break;
        }
        gwd.edges.push_back({a, b, wall, normal});
    }

    const auto& bd = d.region.boundary;
    for (size_t i = 0; i < bd.size(); ++i) {
        int u = bd[i], v = bd[(i + 1) % bd.size()];
        int cell = -1;
        for (size_t ci = 0; ci < d.cells.size(); ++ci) {
            const auto& cv = d.cells[ci].vertices;
            for (size_t j = 0; j < cv.size(); ++j)
                if (cv[j] == u && cv[(j + 1) % cv.size()] == v) cell = static_cast<int>(ci);
        }
        Point e = config[v] - config[u];
        gwd.rays.push_back({cell, {std::min(u, v), std::max(u, v)},
                            primitive_direction(Point{e.y, Rational(-e.x)})});
    }

    // Standing assumption: outgoing directions at every vertex positively
    // generate the plane (true for duals of convex-cell subdivisions).
    for (int ci = 0; ci < gwd.num_vertices; ++ci) {
        std::vector<Point> outgoing;
        for (const auto& e : gwd.edges) {
            if (e.cell_a == ci) outgoing.push_back(e.dir);
            if (e.cell_b == ci) outgoing.push_back(Point{Rational(-e.dir.x), Rational(-e.dir.y)});
        }
        for (const auto& r : gwd.rays)
            if (r.cell == ci) outgoing.push_back(r.dir);
        if (!positively_generates(outgoing))
            throw InvalidSubdivision("dual vertex directions do not positively generate the plane");
    }
    return gwd;
}

Point effective_direction(const GwD::Edge& edge, const PerturbationScheme* scheme) {
    if (!scheme) return edge.dir;
    Rational f = scheme->t * scheme->perturbation(edge.wall);
    Point r = rot90(edge.dir);
    return Point{Rational(edge.dir.x + f * r.x), Rational(edge.dir.y + f * r.y)};
}

QMat rep_matrix(const GwD& gwd, const PerturbationScheme* scheme) {
    const int v = gwd.num_vertices;
    QMat m;
    for (const auto& e : gwd.edges) {
        Point d = effective_direction(e, scheme);
        QVec row(static_cast<size_t>(2 * v), Rational(0));
        row[static_cast<size_t>(2 * e.cell_a)] = -d.y;
        row[static_cast<size_t>(2 * e.cell_a + 1)] = d.x;
        row[static_cast<size_t>(2 * e.cell_b)] = d.y;
        row[static_cast<size_t>(2 * e.cell_b + 1)] = -d.x;
        m.push_back(std::move(row));
    }
    return m;
}

std::pair<int, int> rep_dim(const GwD& gwd, const PerturbationScheme* scheme) {
    int rank = rank_of(rep_matrix(gwd, scheme));
    return {rank, 2 * gwd.num_vertices - rank - 2};
}

bool is_too_rigid(const GwD& gwd, const PerturbationScheme* scheme) {
    return rep_dim(gwd, scheme).first < static_cast<int>(gwd.edges.size());
}

std::optional<QVec> prep_feasible(const GwD& gwd, const PerturbationScheme* scheme) {
    const int v = gwd.num_vertices;
    const int e = static_cast<int>(gwd.edges.size());
    const int n = 2 * v + e;
    std::vector<LinearConstraint> cons;
    for (int i = 0; i < e; ++i) {
        const auto& edge = gwd.edges[static_cast<size_t>(i)];
        Point d = effective_direction(edge, scheme);
        QVec rx(static_cast<size_t>(n), Rational(0)), ry(static_cast<size_t>(n), Rational(0));
        rx[static_cast<size_t>(2 * edge.cell_b)] = 1;
        rx[static_cast<size_t>(2 * edge.cell_a)] = -1;
        rx[static_cast<size_t>(2 * v + i)] = -d.x;
        ry[static_cast<size_t>(2 * edge.cell_b + 1)] = 1;
        ry[static_cast<size_t>(2 * edge.cell_a + 1)] = -1;
        ry[static_cast<size_t>(2 * v + i)] = -d.y;
        cons.push_back({std::move(rx), RelOp::Eq, Rational(0)});
        cons.push_back({std::move(ry), RelOp::Eq, Rational(0)});
        QVec rl(static_cast<size_t>(n), Rational(0));
        rl[static_cast<size_t>(2 * v + i)] = 1;
        cons.push_back({std::move(rl), RelOp::Ge, Rational(1)});
    }
    return lp_feasible(n, cons);
}

namespace {

/// Everything t-dependent we compare across the stabilization sweep.
struct Facts {
    bool prep_t;
    int rank_t;

    friend bool operator==(const Facts& a, const Facts& b) {
        return a.prep_t == b.prep_t && a.rank_t == b.rank_t;
    }
};

std::vector<Facts> evaluate_at(const std::vector<GwD>& duals, PerturbationScheme& scheme, int k) {
    scheme.k = k;
    scheme.t = Rational(Integer(1), Integer(1) << k);
    std::vector<Facts> facts;
    facts.reserve(duals.size());
    for (const auto& g : duals)
        facts.push_back({prep_feasible(g, &scheme).has_value(), rep_dim(g, &scheme).first});
    return facts;
}

}  // namespace

PerturbationScheme stabilize_t(const Configuration& config, const Region& region,
                               std::uint64_t seed, long long budget, int max_k) {
    auto subdivisions = enumerate_subdivisions(config, region, std::nullopt, budget);
    std::vector<GwD> duals;
    duals.reserve(subdivisions.size());
    for (const auto& d : subdivisions) duals.push_back(dual_gwd(config, d));

    PerturbationScheme scheme = make_scheme(config, seed);
    std::vector<int> ks;
    for (int k = 16; k <= max_k; k += 8) ks.push_back(k);
    std::vector<std::optional<std::vector<Facts>>> evals(ks.size());
    auto eval = [&](size_t i) -> const std::vector<Facts>& {
        if (!evals[i]) evals[i] = evaluate_at(duals, scheme, ks[i]);
        return *evals[i];
    };

    for (size_t i = 0; i + 2 < ks.size(); ++i) {
        if (!(eval(i) == eval(i + 1) && eval(i + 1) == eval(i + 2))) continue;
        scheme.k = ks[i];
        scheme.t = Rational(Integer(1), Integer(1) << ks[i]);
        for (size_t s = 0; s < duals.size(); ++s)
            if (eval(i)[s].rank_t < static_cast<int>(duals[s].edges.size()))
                throw NonGenericPerturbation("a too-rigid dual survives at t = 2^-" +
                                             std::to_string(ks[i]) + "; change the seed");
        return scheme;
    }
    throw NonGenericPerturbation("classification did not stabilize by k = " +
                                 std::to_string(max_k) + "; change the seed");
}

PerturbationScheme stabilize_t(const Configuration& config, std::uint64_t seed) {
    return stabilize_t(config, hull_region(config), seed);
}

bool is_perturbedly_regular(const Configuration& config, const Subdivision& d,
                            const PerturbationScheme& scheme) {
    if (!scheme.stabilized()) throw WorkbenchError("perturbation scheme is not stabilized");
    return prep_feasible(dual_gwd(config, d), &scheme).has_value();
}

Classification classify_all(const Configuration& config, const Region& region, std::uint64_t seed,
                            std::optional<int> max_codim, long long budget, int max_k) {
    PerturbationScheme scheme = stabilize_t(config, region, seed, budget, max_k);
    auto subdivisions = enumerate_subdivisions(config, region, std::nullopt, budget);
    const bool hullRegion = region_is_hull(config, region);

    Classification cls;
    cls.scheme = scheme;
    for (const auto& d : subdivisions) {
        if (max_codim && codimension(d) > *max_codim) continue;
        GwD gwd = dual_gwd(config, d);
        auto [rank, dim] = rep_dim(gwd, nullptr);
        bool regular = hullRegion ? is_regular(config, d).regular
                                  : prep_feasible(gwd, nullptr).has_value();
        Status status;
        if (regular)
            status = Status::Regular;
        else if (prep_feasible(gwd, &scheme).has_value())
            status = Status::IrregularPerturbedlyRegular;
        else
            status = Status::IrregularNotPerturbedlyRegular;
        cls.rows.push_back({d, status, rank < static_cast<int>(gwd.edges.size()), rank, dim,
                            codimension(d)});
    }
    return cls;
}

std::vector<Subdivision> perturbation_set(const Configuration& config, const Subdivision& d,
                                          const PerturbationScheme& scheme, long long budget) {
    if (!scheme.stabilized()) throw WorkbenchError("perturbation scheme is not stabilized");
    if (!is_too_rigid(dual_gwd(config, d))) throw NotTooRigid();

    auto candidates = enumerate_subdivisions(config, d.region, 1, budget);
    std::set<Wall> baseWalls(d.walls.begin(), d.walls.end());
    std::vector<Subdivision> members;
    for (const auto& cand : candidates) {
        if (codimension(cand) != 1) continue;
        if (!std::includes(cand.walls.begin(), cand.walls.end(), d.walls.begin(), d.walls.end()))
            continue;
        if (!is_perturbedly_regular(config, cand, scheme)) continue;

        // Limit test: representations must survive with the new walls' scalars
        // pushed to zero while t shrinks (epsilon/t grows, epsilon -> 0).
        GwD gwd = dual_gwd(config, cand);
        const int v = gwd.num_vertices;
        const int e = static_cast<int>(gwd.edges.size());
        bool member = true;
        for (int s = 1; s <= 3 && member; ++s) {
            PerturbationScheme sample = scheme;
            sample.k = scheme.k + 8 * s;
            sample.t = Rational(Integer(1), Integer(1) << sample.k);
            Rational eps(Integer(1), Integer(1) << (scheme.k + 4 * s));
            std::vector<LinearConstraint> cons;
            const int n = 2 * v + e;
            for (int i = 0; i < e; ++i) {
                const auto& edge = gwd.edges[static_cast<size_t>(i)];
                Point dir = effective_direction(edge, &sample);
                QVec rx(static_cast<size_t>(n), Rational(0)), ry(static_cast<size_t>(n), Rational(0));
                rx[static_cast<size_t>(2 * edge.cell_b)] = 1;
                rx[static_cast<size_t>(2 * edge.cell_a)] = -1;
                rx[static_cast<size_t>(2 * v + i)] = -dir.x;
                ry[static_cast<size_t>(2 * edge.cell_b + 1)] = 1;
                ry[static_cast<size_t>(2 * edge.cell_a + 1)] = -1;
                ry[static_cast<size_t>(2 * v + i)] = -dir.y;
                cons.push_back({std::move(rx), RelOp::Eq, Rational(0)});
                cons.push_back({std::move(ry), RelOp::Eq, Rational(0)});
                QVec lo(static_cast<size_t>(n), Rational(0));
                lo[static_cast<size_t>(2 * v + i)] = 1;
                if (baseWalls.count(edge.wall)) {
                    cons.push_back({std::move(lo), RelOp::Ge, Rational(1)});
                } else {
                    cons.push_back({lo, RelOp::Ge, Rational(0)});
                    QVec hi(static_cast<size_t>(n), Rational(0));
                    hi[static_cast<size_t>(2 * v + i)] = -1;
                    cons.push_back({std::move(hi), RelOp::Ge, Rational(-eps)});
                }
            }
            member = lp_feasible(n, cons).has_value();
        }
        if (member) members.push_back(cand);
    }
    return members;
}

}  // namespace secondary
