#pragma once

#include <stdexcept>
#include <string>

namespace secondary {

/// Base class for all workbench errors so callers can catch one type.
struct WorkbenchError : std::runtime_error {
    explicit WorkbenchError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two configuration points coincide.
struct DuplicatePoint : WorkbenchError {
    int i, j;
    DuplicatePoint(int i_, int j_)
        : WorkbenchError("duplicate point: labels " + std::to_string(i_) + " and " + std::to_string(j_)),
          i(i_), j(j_) {}
};

/// Three configuration points lie on one line.
struct CollinearTriple : WorkbenchError {
    int i, j, k;
    CollinearTriple(int i_, int j_, int k_)
        : WorkbenchError("collinear triple: labels " + std::to_string(i_) + ", " + std::to_string(j_) +
                         ", " + std::to_string(k_)),
          i(i_), j(j_), k(k_) {}
};

/// A subdivision failed a structural validity check.
struct InvalidSubdivision : WorkbenchError {
    explicit InvalidSubdivision(const std::string& why) : WorkbenchError("invalid subdivision: " + why) {}
};

/// Regularity queries require the region to be the convex hull of the configuration.
struct WrongRegion : WorkbenchError {
    WrongRegion() : WorkbenchError("region is not the convex hull of the configuration") {}
};

/// Enumeration exhausted its search-node budget.
struct BudgetExceeded : WorkbenchError {
    long long limit;
    explicit BudgetExceeded(long long limit_)
        : WorkbenchError("enumeration budget exceeded: " + std::to_string(limit_) + " nodes"),
          limit(limit_) {}
};

/// The perturbation sweep failed to stabilize (or left a too-rigid dual alive).
struct NonGenericPerturbation : WorkbenchError {
    explicit NonGenericPerturbation(const std::string& why)
        : WorkbenchError("non-generic perturbation: " + why) {}
};

/// perturbation_set requires a too-rigid input.
struct NotTooRigid : WorkbenchError {
    NotTooRigid() : WorkbenchError("subdivision's dual graph is not too rigid") {}
};

/// sigma requires a codimension-1 split.
struct NotCodimOne : WorkbenchError {
    explicit NotCodimOne(int codim)
        : WorkbenchError("split has codimension " + std::to_string(codim) + ", expected 1") {}
};

/// sigma requires a perturbedly regular split.
struct NotPerturbedlyRegular : WorkbenchError {
    NotPerturbedlyRegular() : WorkbenchError("split is not perturbedly regular at the scheme's t") {}
};

/// Gluing errors.
struct RegionsOverlap : WorkbenchError {
    RegionsOverlap() : WorkbenchError("regions to glue have overlapping interiors") {}
};
struct NotSharedEdge : WorkbenchError {
    NotSharedEdge() : WorkbenchError("gluing edge is not a boundary edge of both regions") {}
};
struct UnionNotSimple : WorkbenchError {
    UnionNotSimple() : WorkbenchError("glued boundary is not a simple polygon") {}
};

/// CLI: an id from a prior enumeration does not exist.
struct UnknownId : WorkbenchError {
    explicit UnknownId(long long id) : WorkbenchError("unknown subdivision id: " + std::to_string(id)) {}
};

/// homology_ranks requires a verified complex.
struct DSquaredNonzero : WorkbenchError {
    DSquaredNonzero() : WorkbenchError("differential does not square to zero") {}
};

}  // namespace secondary
