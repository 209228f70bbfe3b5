#pragma once

#include <map>
#include <utility>
#include <vector>

#include "secondary/rigidity.hpp"

namespace secondary {

/// A subdivision together with an ordering of its walls. Identified up to
/// wall-order permutation with the permutation's sign; the canonical form uses
/// the sorted wall order.
struct BasisElement {
    Subdivision d;
    std::vector<Wall> wall_order;  ///< permutation of d.walls
};

/// Sign (+1/-1) of the permutation taking `order` to its sorted form.
/// `order` must have pairwise distinct entries.
int permutation_sign(const std::vector<Wall>& order);

/// (canonical subdivision, sign of the wall-order permutation).
std::pair<Subdivision, int> normalize(const BasisElement& element);

/// Integer combination of canonical basis elements; zero coefficients are
/// never stored.
using ChainElement = std::map<Subdivision, long long>;

ChainElement unit_chain(const Subdivision& d);
void chain_add_term(ChainElement& chain, const Subdivision& d, long long coeff);
ChainElement chain_add(const ChainElement& a, const ChainElement& b);
ChainElement chain_scale(const ChainElement& a, long long s);

/// Canonical sign of a perturbedly regular codim-1 split: orientation of the
/// square matrix [t_x, t_y, r, u_1..u_e] where t_x, t_y are the translations,
/// r is a positive-representation witness of the split's dual graph at the
/// scheme's deformed directions, and u_j solves M u = e_j for the j-th wall in
/// the split's canonical wall order. Throws NotCodimOne / NotPerturbedlyRegular;
/// throws NonGenericPerturbation if the deformed directions leave the dual
/// graph too rigid (the kernel is then not 3-dimensional).
int sigma(const Configuration& config, const Cell& parent_cell, const Subdivision& split,
          const PerturbationScheme& scheme);

/// Shared split/sign cache for differential computations. Splits of a cell and
/// their signs depend only on the cell's label cycle, so they are computed once
/// per cell shape, in a deterministic order (canonical split order within each
/// cell, cells first requested first).
class DifferentialEngine {
  public:
    DifferentialEngine(const Configuration& config, const PerturbationScheme& scheme,
                       long long budget = kDefaultBudget);

    /// Test hook: flip the sign of the index-th sigma computed by this engine
    /// (0-based, counting cache fills in order). Must be set before use.
    void set_flip_sign(long long index) { flip_index_ = index; }

    /// Perturbedly regular codim-1 splits of the cell with their signs, in
    /// canonical split order.
    const std::vector<std::pair<Subdivision, int>>& splits_of(const Cell& cell);

    /// The signed differential: for each term (D, omega) the sum over cells c
    /// and perturbedly regular codim-1 splits s of c of
    ///   (-1)^{#walls(D)} * sigma(s) * (D with c refined, omega then s's walls),
    /// normalized to canonical wall order with permutation signs.
    ChainElement apply(const ChainElement& element);

    long long sigmas_computed() const { return sigma_count_; }
    const PerturbationScheme& scheme() const { return scheme_; }

  private:
    const Configuration& config_;
    PerturbationScheme scheme_;
    long long budget_;
    long long flip_index_ = -1;
    long long sigma_count_ = 0;
    std::map<Cell, std::vector<std::pair<Subdivision, int>>> cache_;
};

/// One-shot differential (fresh engine).
ChainElement differential(const Configuration& config, const ChainElement& element,
                          const PerturbationScheme& scheme, long long budget = kDefaultBudget);

/// Single-edge composition: glue every term of `a` to every term of `b` along
/// the shared boundary edge g; the glued wall order is (walls of a, g, walls
/// of b), then canonical normalization. Bilinear over integer coefficients.
/// Throws NotSharedEdge / RegionsOverlap / UnionNotSimple.
ChainElement compose(const Configuration& config, const ChainElement& a, const Wall& g,
                     const ChainElement& b);

/// Unsigned multi-edge gluing: the union subdivision of two subdivisions whose
/// regions meet along one or more shared boundary edges. Throws NotSharedEdge /
/// RegionsOverlap / UnionNotSimple.
Subdivision glue_unsigned(const Configuration& config, const Subdivision& a, const Subdivision& b);

/// Sparse integer matrix of a differential block; entries keyed (row, col)
/// where rows index the target basis and columns the source basis.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::map<std::pair<int, int>, long long> entries;
};

/// Every subdivision of a region, graded by wall count, with all nonzero
/// differential blocks. A codim-1 split can add more than one wall (a star
/// adds three), so blocks may jump degrees; they are keyed by
/// (source degree, target degree).
struct ChainComplex {
    Region region;
    std::vector<std::vector<Subdivision>> bases;  ///< bases[k] = wall-count-k elements, sorted
    std::map<std::pair<int, int>, SparseMatrix> differentials;
    PerturbationScheme scheme;
    long long budget = kDefaultBudget;
};

/// Assemble the complex by applying the engine's differential to every basis
/// element. Throws BudgetExceeded via enumeration.
ChainComplex chain_complex(const Configuration& config, const Region& region,
                           DifferentialEngine& engine, long long budget = kDefaultBudget);

/// Fresh-engine convenience.
ChainComplex chain_complex(const Configuration& config, const Region& region,
                           const PerturbationScheme& scheme, long long budget = kDefaultBudget);

/// Result of checking that every two-step composition of differential blocks
/// vanishes. On failure, each offending (source, target) pair is reported with
/// all contributing one-step paths and their signed coefficients.
struct DSquaredReport {
    struct Path {
        int mid_degree = 0;
        int mid_index = 0;
        long long first_step = 0;   ///< coefficient of mid in d(source)
        long long second_step = 0;  ///< coefficient of target in d(mid)
    };
    struct Failure {
        int source_degree = 0, source_index = 0;
        int target_degree = 0, target_index = 0;
        long long total = 0;  ///< nonzero sum over paths
        std::vector<Path> paths;
    };
    bool ok = true;
    std::vector<Failure> failures;
};

DSquaredReport verify_d_squared(const ChainComplex& complex);

/// Homology rank at each wall-count degree over the rationals, computed
/// against the total (degree-jumping) differential:
/// dim(ker d intersect C_k) - dim(im d intersect C_k). Reduces to the usual
/// dim C_k - rank(out) - rank(in) when d is degree-homogeneous.
/// Throws DSquaredNonzero unless verify_d_squared passes.
std::vector<int> homology_ranks(const ChainComplex& complex);

}  // namespace secondary
