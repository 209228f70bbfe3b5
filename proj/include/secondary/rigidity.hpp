#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "secondary/regularity.hpp"
#include "secondary/subdivision.hpp"

namespace secondary {

/// Dual graph with directions: one vertex per cell, one directed-edge datum per
/// wall, one outgoing ray per region boundary edge.
struct GwD {
    struct Edge {
        int cell_a, cell_b;  ///< canonical cell order, cell_a < cell_b
        Wall wall;           ///< label pair
        Point dir;           ///< primitive wall normal pointing into cell_b
    };
    struct Ray {
        int cell;
        Wall boundary_edge;
        Point dir;  ///< primitive outward normal of the region edge
    };
    int num_vertices = 0;
    std::vector<Edge> edges;  ///< canonical wall order
    std::vector<Ray> rays;    ///< region boundary order
};

/// Seeded generic first-order deformation of wall directions:
/// wall {i, j} deforms as d + t * theta_{ij} * rot90(d).
struct PerturbationScheme {
    std::uint64_t seed = 0;
    std::map<std::pair<int, int>, Rational> theta;  ///< per label pair i < j, pairwise distinct
    Rational t = 0;                                 ///< stabilized value, 2^-k
    int k = 0;

    bool stabilized() const { return t != 0; }
    Rational perturbation(const Wall& wall) const { return theta.at(wall); }
};

/// Coefficients only (t = 0); stabilize_t picks t.
PerturbationScheme make_scheme(const Configuration& config, std::uint64_t seed);

GwD dual_gwd(const Configuration& config, const Subdivision& d);

/// Direction of a wall after deformation (identity when scheme is null).
Point effective_direction(const GwD::Edge& edge, const PerturbationScheme* scheme);

/// Representation-space constraint matrix: one row per internal edge in
/// canonical wall order, columns (x, y) per vertex; row (a, b, d) encodes
/// cross(p_b - p_a, d) = 0.
QMat rep_matrix(const GwD& gwd, const PerturbationScheme* scheme = nullptr);

/// (rank of the matrix, kernel dimension minus the 2 translations).
std::pair<int, int> rep_dim(const GwD& gwd, const PerturbationScheme* scheme = nullptr);

/// rank < #edges: the graph has more deformations than expected.
bool is_too_rigid(const GwD& gwd, const PerturbationScheme* scheme = nullptr);

/// Positive representation: {p_b - p_a = lambda_e * d_e, lambda_e >= 1}.
/// Witness layout: [x_0, y_0, ..., x_{v-1}, y_{v-1}, lambda_0, ..., lambda_{e-1}].
std::optional<QVec> prep_feasible(const GwD& gwd, const PerturbationScheme* scheme = nullptr);

enum class Status { Regular, IrregularPerturbedlyRegular, IrregularNotPerturbedlyRegular };

const char* status_name(Status s);

struct ClassificationRow {
    Subdivision d;
    Status status;
    bool too_rigid;                 ///< of the unperturbed dual
    int rank;                       ///< unperturbed rank of the representation matrix
    int rep_dim_mod_translations;   ///< 2v - rank - 2
    int codim;
};

struct Classification {
    std::vector<ClassificationRow> rows;  ///< canonical enumeration order
    PerturbationScheme scheme;
};

constexpr int kStabilizeMaxK = 64;

/// Sweeps t = 2^-k for k = 16, 24, ..., max_k; accepts the smallest k whose
/// full classification agrees with the next two, then checks that no dual is
/// too rigid at that t. Throws NonGenericPerturbation otherwise.
PerturbationScheme stabilize_t(const Configuration& config, const Region& region,
                               std::uint64_t seed, long long budget = kDefaultBudget,
                               int max_k = kStabilizeMaxK);

/// Hull-region convenience.
PerturbationScheme stabilize_t(const Configuration& config, std::uint64_t seed);

bool is_perturbedly_regular(const Configuration& config, const Subdivision& d,
                            const PerturbationScheme& scheme);

/// Classify every subdivision of the region at the stabilized scheme.
Classification classify_all(const Configuration& config, const Region& region, std::uint64_t seed,
                            std::optional<int> max_codim = std::nullopt,
                            long long budget = kDefaultBudget, int max_k = kStabilizeMaxK);

/// For a too-rigid subdivision: the codim-1 perturbedly regular refinements
/// whose perturbed positive representations survive with the extra walls'
/// scalars forced toward zero along shrinking t samples. Throws NotTooRigid.
std::vector<Subdivision> perturbation_set(const Configuration& config, const Subdivision& d,
                                          const PerturbationScheme& scheme,
                                          long long budget = kDefaultBudget);

}  // namespace secondary
