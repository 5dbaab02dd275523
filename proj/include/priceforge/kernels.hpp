#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops shared by the profile, matching and clustering
// code. `serial::` is the reference; `parallel::` is the OpenMP version the
// library uses. Each output element is produced by the same sequential loop in
// both, so results are bit-identical regardless of thread count.
namespace priceforge::kernels {

/// Dense row-major matrix; one row per historical day (or week).
struct RowMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    RowMatrix() = default;
    RowMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    std::span<double> row(std::size_t r) { return {values.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

namespace serial {

/// out[c] = (1/rows) sum_r m[r][c], summed in row order.
std::vector<double> column_means(const RowMatrix& m);
/// Population std of every row.
std::vector<double> row_stds(const RowMatrix& m);
/// out[q] = (1/rows) sum_r (fine[r][q] - coarse[r][q / ratio]).
std::vector<double> column_mean_deviation(const RowMatrix& fine, const RowMatrix& coarse);
/// out[r] = sum_c |m[r][c] - profile[c]|.
std::vector<double> row_abs_deviation(const RowMatrix& m, std::span<const double> profile);
/// Symmetric n x n matrix of Euclidean distances between rows.
RowMatrix pairwise_distances(const RowMatrix& m);

}  // namespace serial

namespace parallel {

std::vector<double> column_means(const RowMatrix& m);
std::vector<double> row_stds(const RowMatrix& m);
std::vector<double> column_mean_deviation(const RowMatrix& fine, const RowMatrix& coarse);
std::vector<double> row_abs_deviation(const RowMatrix& m, std::span<const double> profile);
RowMatrix pairwise_distances(const RowMatrix& m);

}  // namespace parallel

/// Threads available to the parallel kernels (1 without OpenMP).
int max_threads();

}  // namespace priceforge::kernels
