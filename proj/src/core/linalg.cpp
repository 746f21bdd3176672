#include "core/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace bsfv {

struct SparseOperator::Impl {
    Eigen::SparseMatrix<double> mat;
};

SparseOperator::SparseOperator() : impl_(std::make_unique<Impl>()) {}
SparseOperator::~SparseOperator() = default;
SparseOperator::SparseOperator(SparseOperator&&) noexcept = default;
SparseOperator& SparseOperator::operator=(SparseOperator&&) noexcept = default;
SparseOperator::SparseOperator(const SparseOperator& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}
SparseOperator& SparseOperator::operator=(const SparseOperator& other) {
    impl_ = std::make_unique<Impl>(*other.impl_);
    return *this;
}

SparseOperator SparseOperator::from_triplets(int rows, int cols,
                                             std::span<const Triplet> triplets) {
    require(rows > 0 && cols > 0, "from_triplets: dimensions must be positive");
    std::vector<Eigen::Triplet<double>> list;
    list.reserve(triplets.size());
    for (const Triplet& t : triplets) {
        require(t.row >= 0 && t.row < rows && t.col >= 0 && t.col < cols,
                "from_triplets: index out of range at (" + std::to_string(t.row) + "," +
                    std::to_string(t.col) + ")");
        require(std::isfinite(t.value), "from_triplets: non-finite value");
        list.emplace_back(t.row, t.col, t.value);
    }
    SparseOperator op;
    op.impl_->mat.resize(rows, cols);
    op.impl_->mat.setFromTriplets(list.begin(), list.end());
    op.impl_->mat.makeCompressed();
    return op;
}

int SparseOperator::rows() const { return static_cast<int>(impl_->mat.rows()); }
int SparseOperator::cols() const { return static_cast<int>(impl_->mat.cols()); }

std::vector<double> SparseOperator::apply(std::span<const double> v) const {
    require(static_cast<int>(v.size()) == cols(), "apply: size mismatch");
    Eigen::Map<const Eigen::VectorXd> vv(v.data(), static_cast<Eigen::Index>(v.size()));
    Eigen::VectorXd out = impl_->mat * vv;
    return std::vector<double>(out.data(), out.data() + out.size());
}

double SparseOperator::inf_norm() const {
    std::vector<double> row_sum(static_cast<size_t>(rows()), 0.0);
    for (int k = 0; k < impl_->mat.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(impl_->mat, k); it; ++it) {
            row_sum[static_cast<size_t>(it.row())] += std::fabs(it.value());
        }
    }
    double best = 0.0;
    for (double s : row_sum) best = std::max(best, s);
    return best;
}

double SparseOperator::entry(int row, int col) const {
    require(row >= 0 && row < rows() && col >= 0 && col < cols(), "entry: index out of range");
    return impl_->mat.coeff(row, col);
}

std::vector<Triplet> SparseOperator::entries() const {
    std::vector<Triplet> out;
    out.reserve(static_cast<size_t>(impl_->mat.nonZeros()));
    for (int k = 0; k < impl_->mat.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(impl_->mat, k); it; ++it) {
            if (it.value() != 0.0) {
                out.push_back(Triplet{static_cast<int>(it.row()), static_cast<int>(it.col()),
                                      it.value()});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return out;
}

struct Factorization::Impl {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

Factorization::Factorization(const SparseOperator& op) : impl_(std::make_unique<Impl>()) {
    require(op.rows() == op.cols(), "Factorization: operator must be square");
    impl_->lu.compute(op.impl().mat);
    require(impl_->lu.info() == Eigen::Success,
            "Factorization: singular or numerically unstable operator",
            Status::SingularOperator);
}

Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;

std::vector<double> Factorization::solve(std::span<const double> rhs) const {
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    Eigen::VectorXd x = impl_->lu.solve(b);
    require(impl_->lu.info() == Eigen::Success, "Factorization::solve failed",
            Status::SolveFailure);
    return std::vector<double>(x.data(), x.data() + x.size());
}

namespace {

double inf_norm_vec(std::span<const double> v) {
    double best = 0.0;
    for (double e : v) best = std::max(best, std::fabs(e));
    return best;
}

double residual_inf(const SparseOperator& op, std::span<const double> x,
                    std::span<const double> rhs) {
    std::vector<double> ax = op.apply(x);
    double best = 0.0;
    for (size_t k = 0; k < ax.size(); ++k) best = std::max(best, std::fabs(ax[k] - rhs[k]));
    return best;
}

} // namespace

std::vector<double> solve(const SparseOperator& op, std::span<const double> rhs) {
    require(op.rows() == op.cols(), "solve: operator must be square");
    require(static_cast<int>(rhs.size()) == op.rows(), "solve: rhs size mismatch");

    const double op_norm = op.inf_norm();
    const double rhs_norm = inf_norm_vec(rhs);
    auto bound = [&](std::span<const double> x) {
        return 1e-10 * (op_norm * inf_norm_vec(x) + rhs_norm);
    };

    std::vector<double> x;
    bool direct_ok = true;
    try {
        Factorization f(op);
        x = f.solve(rhs);
    } catch (const Error&) {
        direct_ok = false;
    }
    if (direct_ok && residual_inf(op, x, rhs) <= bound(x)) return x;

    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>> krylov;
    krylov.setTolerance(1e-12);
    krylov.setMaxIterations(20 * op.rows());
    krylov.compute(op.impl().mat);
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    Eigen::VectorXd xk = krylov.solve(b);
    std::vector<double> xv(xk.data(), xk.data() + xk.size());
    const double res = residual_inf(op, xv, rhs);
    if (krylov.info() == Eigen::Success && res <= bound(xv)) return xv;

    throw Error(Status::SolveFailure,
                "solve: no method met the residual bound; last residual " + std::to_string(res));
}

void write_pattern(const SparseOperator& op, std::ostream& out) {
    char line[96];
    for (const Triplet& t : op.entries()) {
        std::snprintf(line, sizeof line, "%d %d %.17g\n", t.row, t.col, t.value);
        out << line;
    }
    require(out.good(), "write_pattern: stream failure", Status::IoFailure);
}

} // namespace bsfv
