#pragma once

#include <cstddef>
#include <vector>

namespace miembed {

/// Dense row-major square matrix.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

struct SymmetricEigen {
    std::vector<double> values;                // descending
    std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k], unit norm
};

/// Cyclic Jacobi rotations. Deterministic for a given input; eigenpairs are
/// sorted by descending eigenvalue, ties kept in index order.
SymmetricEigen symmetric_eigen(SquareMatrix a, double tolerance = 1e-14, int max_sweeps = 100);

}  // namespace miembed
