#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "core/types.hpp"

namespace bsfv {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/// Immutable sparse matrix. Duplicate triplets are summed at finalization;
/// afterwards the operator supports products, factorization, and entry scans.
class SparseOperator {
public:
    SparseOperator();
    ~SparseOperator();
    SparseOperator(SparseOperator&&) noexcept;
    SparseOperator& operator=(SparseOperator&&) noexcept;
    SparseOperator(const SparseOperator&);
    SparseOperator& operator=(const SparseOperator&);

    static SparseOperator from_triplets(int rows, int cols, std::span<const Triplet> triplets);

    int rows() const;
    int cols() const;

    std::vector<double> apply(std::span<const double> v) const;

    /// Max absolute row sum.
    double inf_norm() const;

    /// Entry at (row, col); zero if not stored.
    double entry(int row, int col) const;

    /// All stored entries, sorted by (row, col). Exact zeros are dropped.
    std::vector<Triplet> entries() const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

private:
    std::unique_ptr<Impl> impl_;
};

/// Reusable factorization of a square operator (direct sparse LU).
class Factorization {
public:
    explicit Factorization(const SparseOperator& op);
    ~Factorization();
    Factorization(Factorization&&) noexcept;

    std::vector<double> solve(std::span<const double> rhs) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Solve op*x = rhs with residual guarantee
///   ||op*x - rhs||_inf <= 1e-10 (||op||_inf ||x||_inf + ||rhs||_inf).
/// Falls back to a stabilized Krylov iteration if the direct solve misses the
/// bound; reports the residual on failure.
std::vector<double> solve(const SparseOperator& op, std::span<const double> rhs);

/// Write the nonzero entries as "row col value" text triples, row-major,
/// for external sparsity-structure plotting.
void write_pattern(const SparseOperator& op, std::ostream& out);

} // namespace bsfv
