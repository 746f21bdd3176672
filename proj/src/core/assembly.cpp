#include "core/assembly.hpp"

namespace bsfv {

std::vector<double> frame_values(const TensorGrid& grid,
                                 const std::function<double(double x, double y)>& value) {
    const int n = grid.n();
    std::vector<double> out(static_cast<size_t>(boundary_count(n)), 0.0);
    for (int i = 0; i <= n + 1; ++i) {
        for (int j = 0; j <= n + 1; ++j) {
            const int b = boundary_index(i, j, n);
            if (b >= 0) out[static_cast<size_t>(b)] = value(grid.x.x(i), grid.y.x(j));
        }
    }
    return out;
}

AssembledOperator finalize(const AssemblyParts& parts, int n) {
    AssembledOperator out;
    out.matrix = SparseOperator::from_triplets(n * n, n * n, parts.interior);
    out.boundary_coupling = SparseOperator::from_triplets(n * n, boundary_count(n), parts.boundary);
    return out;
}

} // namespace bsfv
