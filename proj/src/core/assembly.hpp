#pragma once

#include <functional>
#include <vector>

#include "core/grid.hpp"
#include "core/linalg.hpp"

namespace bsfv {

/// Control-volume face, named by global direction.
enum class Face { East, North, West, South };

/// Predicate selecting which (row, face) contributions an assembly emits.
/// Used to carve out the degeneracy-region edges for the fitted scheme.
using FaceFilter = std::function<bool(int i, int j, Face face)>;

inline bool all_faces(int, int, Face) { return true; }

/// Raw assembly output: couplings of interior rows to interior unknowns and
/// to Dirichlet frame nodes. Duplicate triplets sum at finalization.
struct AssemblyParts {
    std::vector<Triplet> interior;  // N^2 x N^2
    std::vector<Triplet> boundary;  // N^2 x (4N+4)

    void append(const AssemblyParts& other) {
        interior.insert(interior.end(), other.interior.begin(), other.interior.end());
        boundary.insert(boundary.end(), other.boundary.begin(), other.boundary.end());
    }
};

inline int boundary_count(int n) { return 4 * n + 4; }

/// Index of frame node (i,j) (i or j in {0, N+1}) in the boundary vector;
/// -1 for interior nodes. Enumeration is row-major over the frame.
inline int boundary_index(int i, int j, int n) {
    const bool on_frame = i == 0 || i == n + 1 || j == 0 || j == n + 1;
    if (!on_frame) return -1;
    if (i == 0) return j;
    if (i == n + 1) return (n + 2) + 2 * n + j;
    return (n + 2) + 2 * (i - 1) + (j == 0 ? 0 : 1);
}

/// Dirichlet values on the frame at one time level, in boundary_index order.
std::vector<double> frame_values(const TensorGrid& grid,
                                 const std::function<double(double x, double y)>& value);

/// Route one coefficient to the interior matrix or the boundary coupling.
inline void emit(AssemblyParts& parts, int row, int ci, int cj, int n, double value) {
    const int b = boundary_index(ci, cj, n);
    if (b < 0) {
        parts.interior.push_back(Triplet{row, flat_index(ci, cj, n), value});
    } else {
        parts.boundary.push_back(Triplet{row, b, value});
    }
}

/// Finalized operator pair: interior matrix A and boundary coupling B, so the
/// full row reads (A u + B g) with g the frame values.
struct AssembledOperator {
    SparseOperator matrix;
    SparseOperator boundary_coupling;
};

AssembledOperator finalize(const AssemblyParts& parts, int n);

} // namespace bsfv
