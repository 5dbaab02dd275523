#include "priceforge/kernels.hpp"

#include <cmath>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "priceforge/error.hpp"

namespace priceforge::kernels {

namespace {

inline double column_mean(const RowMatrix& m, std::size_t c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows; ++r) {
        sum += m.values[r * m.cols + c];
    }
    return sum / static_cast<double>(m.rows);
}

inline double row_std(const RowMatrix& m, std::size_t r) {
    const double* row = m.values.data() + r * m.cols;
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) {
        sum += row[c];
    }
    const double mean = sum / static_cast<double>(m.cols);
    double ss = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) {
        ss += (row[c] - mean) * (row[c] - mean);
    }
    return std::sqrt(ss / static_cast<double>(m.cols));
}

inline double column_deviation(const RowMatrix& fine, const RowMatrix& coarse, std::size_t ratio, std::size_t q) {
    double sum = 0.0;
    for (std::size_t r = 0; r < fine.rows; ++r) {
        sum += fine.values[r * fine.cols + q] - coarse.values[r * coarse.cols + q / ratio];
    }
    return sum / static_cast<double>(fine.rows);
}

inline double row_abs(const RowMatrix& m, std::span<const double> profile, std::size_t r) {
    const double* row = m.values.data() + r * m.cols;
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) {
        sum += std::abs(row[c] - profile[c]);
    }
    return sum;
}

inline double distance(const RowMatrix& m, std::size_t a, std::size_t b) {
    const double* x = m.values.data() + a * m.cols;
    const double* y = m.values.data() + b * m.cols;
    double ss = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) {
        ss += (x[c] - y[c]) * (x[c] - y[c]);
    }
    return std::sqrt(ss);
}

void require_rows(const RowMatrix& m) {
    if (m.rows == 0 || m.cols == 0) {
        throw Error(ErrorCode::EmptyInput, "kernel input has no rows");
    }
}

std::size_t fine_ratio(const RowMatrix& fine, const RowMatrix& coarse) {
    require_rows(fine);
    if (fine.rows != coarse.rows || coarse.cols == 0 || fine.cols % coarse.cols != 0) {
        throw Error(ErrorCode::DimensionMismatch, "fine/coarse matrices do not align");
    }
    return fine.cols / coarse.cols;
}

void require_profile(const RowMatrix& m, std::span<const double> profile) {
    require_rows(m);
    if (profile.size() != m.cols) {
        throw Error(ErrorCode::DimensionMismatch, "profile length differs from row length");
    }
}

}  // namespace

namespace serial {

std::vector<double> column_means(const RowMatrix& m) {
    require_rows(m);
    std::vector<double> out(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) {
        out[c] = column_mean(m, c);
    }
    return out;
}

std::vector<double> row_stds(const RowMatrix& m) {
    require_rows(m);
    std::vector<double> out(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
        out[r] = row_std(m, r);
    }
    return out;
}

std::vector<double> column_mean_deviation(const RowMatrix& fine, const RowMatrix& coarse) {
    const std::size_t ratio = fine_ratio(fine, coarse);
    std::vector<double> out(fine.cols);
    for (std::size_t q = 0; q < fine.cols; ++q) {
        out[q] = column_deviation(fine, coarse, ratio, q);
    }
    return out;
}

std::vector<double> row_abs_deviation(const RowMatrix& m, std::span<const double> profile) {
    require_profile(m, profile);
    std::vector<double> out(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
        out[r] = row_abs(m, profile, r);
    }
    return out;
}

RowMatrix pairwise_distances(const RowMatrix& m) {
    require_rows(m);
    RowMatrix out(m.rows, m.rows);
    for (std::size_t a = 0; a < m.rows; ++a) {
        for (std::size_t b = 0; b < m.rows; ++b) {
            out.at(a, b) = a == b ? 0.0 : distance(m, std::min(a, b), std::max(a, b));
        }
    }
    return out;
}

}  // namespace serial

namespace parallel {

std::vector<double> column_means(const RowMatrix& m) {
    require_rows(m);
    std::vector<double> out(m.cols);
    const auto cols = static_cast<std::ptrdiff_t>(m.cols);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
        out[static_cast<std::size_t>(c)] = column_mean(m, static_cast<std::size_t>(c));
    }
    return out;
}

std::vector<double> row_stds(const RowMatrix& m) {
    require_rows(m);
    std::vector<double> out(m.rows);
    const auto rows = static_cast<std::ptrdiff_t>(m.rows);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
        out[static_cast<std::size_t>(r)] = row_std(m, static_cast<std::size_t>(r));
    }
    return out;
}

std::vector<double> column_mean_deviation(const RowMatrix& fine, const RowMatrix& coarse) {
    const std::size_t ratio = fine_ratio(fine, coarse);
    std::vector<double> out(fine.cols);
    const auto cols = static_cast<std::ptrdiff_t>(fine.cols);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t q = 0; q < cols; ++q) {
        out[static_cast<std::size_t>(q)] = column_deviation(fine, coarse, ratio, static_cast<std::size_t>(q));
    }
    return out;
}

std::vector<double> row_abs_deviation(const RowMatrix& m, std::span<const double> profile) {
    require_profile(m, profile);
    std::vector<double> out(m.rows);
    const auto rows = static_cast<std::ptrdiff_t>(m.rows);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
        out[static_cast<std::size_t>(r)] = row_abs(m, profile, static_cast<std::size_t>(r));
    }
    return out;
}

RowMatrix pairwise_distances(const RowMatrix& m) {
    require_rows(m);
    RowMatrix out(m.rows, m.rows);
    const auto rows = static_cast<std::ptrdiff_t>(m.rows);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t a = 0; a < rows; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        for (std::size_t b = 0; b < m.rows; ++b) {
            out.at(ua, b) = ua == b ? 0.0 : distance(m, std::min(ua, b), std::max(ua, b));
        }
    }
    return out;
}

}  // namespace parallel

int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace priceforge::kernels
