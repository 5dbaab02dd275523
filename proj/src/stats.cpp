#include "priceforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <fftw3.h>

#include "priceforge/error.hpp"

namespace priceforge::stats {

namespace {

void require_nonempty(std::span<const double> values) {
    if (values.empty()) {
        throw Error(ErrorCode::EmptyInput, "statistic of an empty sample");
    }
}

}  // namespace

Moments moments(std::span<const double> values) {
    require_nonempty(values);
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / n)};
}

double population_std(std::span<const double> values) {
    return moments(values).std;
}

double percentile(std::span<const double> values, double fraction) {
    require_nonempty(values);
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw Error(ErrorCode::BadFraction, "percentile fraction must lie in (0, 1)");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = fraction * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] + w * (sorted[hi] - sorted[lo]);
}

double scott_bin_width(std::span<const double> values) {
    if (values.size() < 2) {
        throw Error(ErrorCode::DegenerateSample, "Scott rule needs at least two values");
    }
    const double sd = population_std(values);
    if (sd <= 0.0) {
        throw Error(ErrorCode::DegenerateSample, "Scott rule undefined for zero spread");
    }
    return 3.49 * sd * std::pow(static_cast<double>(values.size()), -1.0 / 3.0);
}

Histogram scott_histogram(std::span<const double> values) {
    const double width = scott_bin_width(values);
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const auto bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
    Histogram h;
    h.bin_edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        h.bin_edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    }
    h.bin_edges.back() = hi;
    h.counts.assign(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
        h.counts[std::min(b, bins - 1)]++;
    }
    return h;
}

void write_histogram_csv(const Histogram& histogram, std::ostream& out) {
    char buf[96];
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%zu\n", histogram.bin_edges[b], histogram.bin_edges[b + 1],
                      histogram.counts[b]);
        out << buf;
    }
}

std::vector<FrequencyPeak> dominant_frequencies(std::span<const double> values, double dt_hours, std::size_t top_k) {
    const std::size_t n = values.size();
    if (n < 8) {
        throw Error(ErrorCode::TooShort, "periodogram needs at least 8 samples");
    }
    const double mean = moments(values).mean;
    std::vector<double> input(n);
    for (std::size_t i = 0; i < n; ++i) {
        input[i] = values[i] - mean;
    }
    const std::size_t n_freq = n / 2 + 1;
    auto* output = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_freq));
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), input.data(), output, FFTW_ESTIMATE);
    fftw_execute(plan);
    std::vector<double> power(n_freq);
    double max_power = 0.0;
    for (std::size_t k = 0; k < n_freq; ++k) {
        power[k] = (output[k][0] * output[k][0] + output[k][1] * output[k][1]) / static_cast<double>(n);
        if (k > 0) {
            max_power = std::max(max_power, power[k]);
        }
    }
    fftw_destroy_plan(plan);
    fftw_free(output);

    double scale = 0.0;
    for (double v : input) {
        scale += v * v;
    }
    std::vector<FrequencyPeak> peaks;
    // Numerically flat spectrum: nothing to report.
    if (max_power <= 1e-20 * std::max(1.0, scale)) {
        return peaks;
    }
    for (std::size_t k = 1; k < n_freq; ++k) {
        const double left = power[k - 1];
        const double right = k + 1 < n_freq ? power[k + 1] : -1.0;
        const bool is_peak = (k == 1 || power[k] > left) && power[k] >= right;
        if (is_peak && power[k] > 1e-12 * max_power) {
            peaks.push_back({static_cast<double>(k) / (static_cast<double>(n) * dt_hours), power[k]});
        }
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const FrequencyPeak& a, const FrequencyPeak& b) { return a.power > b.power; });
    if (peaks.size() > top_k) {
        peaks.resize(top_k);
    }
    return peaks;
}

StatsSummary summarize(std::span<const double> values, double integral_scale) {
    const Moments m = moments(values);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return {*lo, *hi, m.mean, m.std, integral_scale * sum};
}

}  // namespace priceforge::stats
