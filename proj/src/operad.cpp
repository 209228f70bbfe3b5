#include "secondary/operad.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "secondary/errors.hpp"

namespace secondary {

int permutation_sign(const std::vector<Wall>& order) {
    int inversions = 0;
    for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j)
            if (order[j] < order[i]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

std::pair<Subdivision, int> normalize(const BasisElement& element) {
    std::vector<Wall> sorted = element.wall_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != element.d.walls)
        throw InvalidSubdivision("wall order is not a permutation of the subdivision's walls");
    return {element.d, permutation_sign(element.wall_order)};
}

ChainElement unit_chain(const Subdivision& d) { return ChainElement{{d, 1}}; }

void chain_add_term(ChainElement& chain, const Subdivision& d, long long coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = chain.emplace(d, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) chain.erase(it);
    }
}

ChainElement chain_add(const ChainElement& a, const ChainElement& b) {
    ChainElement out = a;
    for (const auto& [d, c] : b) chain_add_term(out, d, c);
    return out;
}

ChainElement chain_scale(const ChainElement& a, long long s) {
    ChainElement out;
    if (s == 0) return out;
    for (const auto& [d, c] : a) out.emplace(d, c * s);
    return out;
}

int sigma(const Configuration& config, const Cell& parent_cell, const Subdivision& split,
          const PerturbationScheme& scheme) {
    if (split.region.boundary != parent_cell.vertices) throw WrongRegion();
    if (codimension(split) != 1) throw NotCodimOne(codimension(split));
    assert(scheme.stabilized());

    GwD gwd = dual_gwd(config, split);
    std::optional<QVec> witness = prep_feasible(gwd, &scheme);
    if (!witness) throw NotPerturbedlyRegular();

    const int v = gwd.num_vertices;
    const int e = static_cast<int>(gwd.edges.size());
    const int n = 2 * v;  // codim 1 <=> e = 2v - 3, so 3 + e columns fill the square
    assert(e + 3 == n);

    QMat m = rep_matrix(gwd, &scheme);
    QMat b(static_cast<size_t>(n), QVec(static_cast<size_t>(n), Rational(0)));
    for (int i = 0; i < v; ++i) {
        b[static_cast<size_t>(2 * i)][0] = 1;      // translation along x
        b[static_cast<size_t>(2 * i + 1)][1] = 1;  // translation along y
    }
    // Ray of the positive-representation cone: the witness positions. They lie
    // in ker(M) (every difference is parallel to its direction) and are not a
    // pure translation (every lambda is >= 1).
    for (int i = 0; i < n; ++i) b[static_cast<size_t>(i)][2] = (*witness)[static_cast<size_t>(i)];
    for (int j = 0; j < e; ++j) {
        QVec rhs(static_cast<size_t>(e), Rational(0));
        rhs[static_cast<size_t>(j)] = 1;
        std::optional<QVec> u = solve_any(m, rhs);
        if (!u)
            throw NonGenericPerturbation(
                "deformed directions leave a codim-1 split's dual graph too rigid; change the seed");
        for (int i = 0; i < n; ++i)
            b[static_cast<size_t>(i)][static_cast<size_t>(3 + j)] = (*u)[static_cast<size_t>(i)];
    }
    int s = det_sign(std::move(b));
    assert(s != 0);  // the three kernel columns and any right inverse are independent
    return s;
}

DifferentialEngine::DifferentialEngine(const Configuration& config,
                                       const PerturbationScheme& scheme, long long budget)
    : config_(config), scheme_(scheme), budget_(budget) {}

const std::vector<std::pair<Subdivision, int>>& DifferentialEngine::splits_of(const Cell& cell) {
    auto it = cache_.find(cell);
    if (it != cache_.end()) return it->second;
    std::vector<std::pair<Subdivision, int>> out;
    for (Subdivision& s : refinement_splits(config_, cell, 1, budget_)) {
        if (codimension(s) != 1) continue;
        if (!prep_feasible(dual_gwd(config_, s), &scheme_)) continue;  // not perturbedly regular
        int sg = sigma(config_, cell, s, scheme_);
        if (sigma_count_ == flip_index_) sg = -sg;  // test hook
        ++sigma_count_;
        out.emplace_back(std::move(s), sg);
    }
    return cache_.emplace(cell, std::move(out)).first->second;
}

ChainElement DifferentialEngine::apply(const ChainElement& element) {
    ChainElement out;
    for (const auto& [d, coeff] : element) {
        const long long prefactor = d.walls.size() % 2 == 0 ? 1 : -1;
        for (int ci = 0; ci < static_cast<int>(d.cells.size()); ++ci) {
            for (const auto& [split, sg] : splits_of(d.cells[static_cast<size_t>(ci)])) {
                Subdivision refined = refine_cell(config_, d, ci, split);
                std::vector<Wall> order = d.walls;
                order.insert(order.end(), split.walls.begin(), split.walls.end());
                chain_add_term(out, refined, coeff * prefactor * sg * permutation_sign(order));
            }
        }
    }
    return out;
}

ChainElement differential(const Configuration& config, const ChainElement& element,
                          const PerturbationScheme& scheme, long long budget) {
    DifferentialEngine engine(config, scheme, budget);
    return engine.apply(element);
}

namespace {

/// Index i with (cycle[i], cycle[i+1]) == (u, v), or -1.
int directed_edge_pos(const std::vector<int>& cycle, int u, int v) {
    const int n = static_cast<int>(cycle.size());
    for (int i = 0; i < n; ++i)
        if (cycle[static_cast<size_t>(i)] == u && cycle[static_cast<size_t>((i + 1) % n)] == v)
            return i;
    return -1;
}

void require_disjoint_interiors(const Configuration& config, const Subdivision& a,
                                const Subdivision& b) {
    for (const Cell& x : a.cells)
        for (const Cell& y : b.cells)
            if (convex_interiors_overlap(cell_points(config, x), cell_points(config, y)))
                throw RegionsOverlap();
}

Region checked_union_region(const Configuration& config, std::vector<int> cycle) {
    try {
        return validate_region(config, std::move(cycle));
    } catch (const WorkbenchError&) {
        throw UnionNotSimple();
    }
}

}  // namespace

ChainElement compose(const Configuration& config, const ChainElement& a, const Wall& g,
                     const ChainElement& b) {
    if (a.empty() || b.empty()) return {};
    const Subdivision& da = a.begin()->first;
    const Subdivision& db = b.begin()->first;
    const std::vector<int>& ca = da.region.boundary;
    const std::vector<int>& cb = db.region.boundary;

    const int fa = directed_edge_pos(ca, g.first, g.second);
    const int ra = directed_edge_pos(ca, g.second, g.first);
    const int fb = directed_edge_pos(cb, g.first, g.second);
    const int rb = directed_edge_pos(cb, g.second, g.first);
    if ((fa < 0 && ra < 0) || (fb < 0 && rb < 0)) throw NotSharedEdge();

    // The two counterclockwise regions must traverse g in opposite directions;
    // matching directions put both interiors on the same side of g.
    int ia, ib;
    if (fa >= 0 && rb >= 0) {
        ia = fa;
        ib = rb;
    } else if (ra >= 0 && fb >= 0) {
        ia = ra;
        ib = fb;
    } else {
        throw RegionsOverlap();
    }
    require_disjoint_interiors(config, da, db);

    // Splice the two boundary cycles at g: all of A starting after the gluing
    // edge, then B's complementary path (endpoints shared, so n - 2 vertices).
    const int m = static_cast<int>(ca.size());
    const int n = static_cast<int>(cb.size());
    std::vector<int> cycle;
    cycle.reserve(static_cast<size_t>(m + n - 2));
    for (int k = 0; k < m; ++k) cycle.push_back(ca[static_cast<size_t>((ia + 1 + k) % m)]);
    for (int k = 1; k <= n - 2; ++k) cycle.push_back(cb[static_cast<size_t>((ib + 1 + k) % n)]);
    Region unionRegion = checked_union_region(config, std::move(cycle));

    ChainElement out;
    for (const auto& [dA, cA] : a) {
        for (const auto& [dB, cB] : b) {
            std::vector<Cell> cells = dA.cells;
            cells.insert(cells.end(), dB.cells.begin(), dB.cells.end());
            Subdivision glued = validate_subdivision(config, unionRegion, std::move(cells));
            std::vector<Wall> order = dA.walls;
            order.push_back(g);
            order.insert(order.end(), dB.walls.begin(), dB.walls.end());
            chain_add_term(out, glued, cA * cB * permutation_sign(order));
        }
    }
    return out;
}

Subdivision glue_unsigned(const Configuration& config, const Subdivision& a,
                          const Subdivision& b) {
    require_disjoint_interiors(config, a, b);

    std::set<std::pair<int, int>> directed;
    auto addCycle = [&directed](const std::vector<int>& cyc) {
        const int n = static_cast<int>(cyc.size());
        for (int i = 0; i < n; ++i)
            directed.insert({cyc[static_cast<size_t>(i)], cyc[static_cast<size_t>((i + 1) % n)]});
    };
    addCycle(a.region.boundary);
    addCycle(b.region.boundary);

    // Shared edges appear once per direction and cancel; the remainder must
    // stitch into a single simple cycle.
    bool anyShared = false;
    for (const auto& [u, v] : directed)
        if (directed.count({v, u})) anyShared = true;
    if (!anyShared) throw NotSharedEdge();

    std::map<int, int> next;
    for (const auto& [u, v] : directed) {
        if (directed.count({v, u})) continue;
        if (next.count(u)) throw UnionNotSimple();
        next[u] = v;
    }
    if (next.empty()) throw UnionNotSimple();

    std::vector<int> cycle;
    cycle.push_back(next.begin()->first);
    for (int at = next.begin()->second; at != cycle.front();) {
        cycle.push_back(at);
        auto it = next.find(at);
        if (it == next.end()) throw UnionNotSimple();
        at = it->second;
    }
    if (cycle.size() != next.size()) throw UnionNotSimple();

    Region unionRegion = checked_union_region(config, std::move(cycle));
    std::vector<Cell> cells = a.cells;
    cells.insert(cells.end(), b.cells.begin(), b.cells.end());
    return validate_subdivision(config, unionRegion, std::move(cells));
}

ChainComplex chain_complex(const Configuration& config, const Region& region,
                           DifferentialEngine& engine, long long budget) {
    ChainComplex cx;
    cx.region = region;
    cx.scheme = engine.scheme();
    cx.budget = budget;

    std::vector<Subdivision> all = enumerate_subdivisions(config, region, std::nullopt, budget);
    size_t maxDegree = 0;
    for (const Subdivision& d : all) maxDegree = std::max(maxDegree, d.walls.size());
    cx.bases.assign(maxDegree + 1, {});
    for (Subdivision& d : all) cx.bases[d.walls.size()].push_back(std::move(d));

    std::map<Subdivision, std::pair<int, int>> index;
    for (int deg = 0; deg < static_cast<int>(cx.bases.size()); ++deg)
        for (int i = 0; i < static_cast<int>(cx.bases[static_cast<size_t>(deg)].size()); ++i)
            index.emplace(cx.bases[static_cast<size_t>(deg)][static_cast<size_t>(i)],
                          std::make_pair(deg, i));

    for (int k = 0; k < static_cast<int>(cx.bases.size()); ++k) {
        const auto& basis = cx.bases[static_cast<size_t>(k)];
        for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
            ChainElement image = engine.apply(unit_chain(basis[static_cast<size_t>(j)]));
            for (const auto& [target, coeff] : image) {
                const auto [l, i] = index.at(target);  // enumeration is complete
                SparseMatrix& block = cx.differentials[{k, l}];
                block.rows = static_cast<int>(cx.bases[static_cast<size_t>(l)].size());
                block.cols = static_cast<int>(basis.size());
                block.entries[{i, j}] = coeff;
            }
        }
    }
    return cx;
}

ChainComplex chain_complex(const Configuration& config, const Region& region,
                           const PerturbationScheme& scheme, long long budget) {
    DifferentialEngine engine(config, scheme, budget);
    return chain_complex(config, region, engine, budget);
}

DSquaredReport verify_d_squared(const ChainComplex& complex) {
    // comp[(k, l)][(i, j)] = coefficient of target i (degree l) in d(d(source j, degree k)).
    std::map<std::pair<int, int>, std::map<std::pair<int, int>, long long>> comp;
    for (const auto& [key1, m1] : complex.differentials) {
        const auto [k, mid] = key1;
        for (const auto& [key2, m2] : complex.differentials) {
            if (key2.first != mid) continue;
            const int l = key2.second;
            auto& acc = comp[{k, l}];
            for (const auto& [rc1, c1] : m1.entries) {
                const auto [p, j] = rc1;  // p = mid-degree index, j = source index
                for (const auto& [rc2, c2] : m2.entries) {
                    if (rc2.second != p) continue;
                    acc[{rc2.first, j}] += c2 * c1;
                }
            }
        }
    }

    DSquaredReport report;
    for (const auto& [degrees, matrix] : comp) {
        const auto [k, l] = degrees;
        for (const auto& [rc, total] : matrix) {
            if (total == 0) continue;
            report.ok = false;
            DSquaredReport::Failure failure;
            failure.source_degree = k;
            failure.source_index = rc.second;
            failure.target_degree = l;
            failure.target_index = rc.first;
            failure.total = total;
            // Every one-step path source -> mid -> target with its two coefficients.
            for (const auto& [key1, m1] : complex.differentials) {
                if (key1.first != k) continue;
                auto it2 = complex.differentials.find({key1.second, l});
                if (it2 == complex.differentials.end()) continue;
                for (const auto& [rc1, c1] : m1.entries) {
                    if (rc1.second != rc.second) continue;
                    auto hit = it2->second.entries.find({rc.first, rc1.first});
                    if (hit == it2->second.entries.end()) continue;
                    failure.paths.push_back({key1.second, rc1.first, c1, hit->second});
                }
            }
            report.failures.push_back(std::move(failure));
        }
    }
    return report;
}

namespace {

void append_dense_rows(QMat& mat, const SparseMatrix& block) {
    const size_t base = mat.size();
    mat.resize(base + static_cast<size_t>(block.rows),
               QVec(static_cast<size_t>(block.cols), Rational(0)));
    for (const auto& [rc, v] : block.entries)
        mat[base + static_cast<size_t>(rc.first)][static_cast<size_t>(rc.second)] = v;
}

}  // namespace

std::vector<int> homology_ranks(const ChainComplex& complex) {
    if (!verify_d_squared(complex).ok) throw DSquaredNonzero();

    // The differential can jump degrees, and one element's image may spread
    // over several degrees, so the per-degree rank is computed against the
    // total operator: H_k = dim(ker d intersect C_k) - dim(im d intersect C_k),
    // the second term via rank(d) - rank(d with the degree-k rows removed).
    // On a degree-homogeneous complex this reduces to the usual
    // dim C_k - rank(out of k) - rank(into k).
    const int degrees = static_cast<int>(complex.bases.size());
    std::vector<int> offset(static_cast<size_t>(degrees) + 1, 0);
    for (int k = 0; k < degrees; ++k)
        offset[static_cast<size_t>(k) + 1] =
            offset[static_cast<size_t>(k)] + static_cast<int>(complex.bases[static_cast<size_t>(k)].size());
    const int total = offset[static_cast<size_t>(degrees)];

    QMat totalMatrix(static_cast<size_t>(total), QVec(static_cast<size_t>(total), Rational(0)));
    for (const auto& [key, block] : complex.differentials)
        for (const auto& [rc, v] : block.entries)
            totalMatrix[static_cast<size_t>(offset[static_cast<size_t>(key.second)] + rc.first)]
                       [static_cast<size_t>(offset[static_cast<size_t>(key.first)] + rc.second)] = v;
    const int rankTotal = rank_of(totalMatrix);

    std::vector<int> ranks(static_cast<size_t>(degrees), 0);
    for (int k = 0; k < degrees; ++k) {
        const int dimK = static_cast<int>(complex.bases[static_cast<size_t>(k)].size());
        if (dimK == 0) continue;

        QMat outgoing;  // stack of every block leaving degree k; shared column space C_k
        for (const auto& [key, block] : complex.differentials)
            if (key.first == k) append_dense_rows(outgoing, block);
        const int rankOut = outgoing.empty() ? 0 : rank_of(std::move(outgoing));

        QMat withoutK;  // total matrix minus the rows landing in degree k
        withoutK.reserve(static_cast<size_t>(total - dimK));
        for (int r = 0; r < total; ++r)
            if (r < offset[static_cast<size_t>(k)] || r >= offset[static_cast<size_t>(k) + 1])
                withoutK.push_back(totalMatrix[static_cast<size_t>(r)]);
        const int imageInK = rankTotal - (withoutK.empty() ? 0 : rank_of(std::move(withoutK)));

        ranks[static_cast<size_t>(k)] = dimK - rankOut - imageInK;
    }
    return ranks;
}

}  // namespace secondary
