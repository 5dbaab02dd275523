#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace priceforge::stats {

struct Moments {
    double mean = 0.0;
    double std = 0.0;  // population form, divisor n
};

struct StatsSummary {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std = 0.0;
    double integral = 0.0;  // EUR per horizon for 1 MW held constant
};

struct Histogram {
    std::vector<double> bin_edges;
    std::vector<std::size_t> counts;
};

struct FrequencyPeak {
    double frequency = 0.0;  // 1/h
    double power = 0.0;
};

Moments moments(std::span<const double> values);

/// Population standard deviation; the mean is computed internally.
double population_std(std::span<const double> values);

/// Linear interpolation between closest ranks at position 1 + f (n - 1).
double percentile(std::span<const double> values, double fraction);

/// Scott (1979): h = 3.49 * std * n^(-1/3).
double scott_bin_width(std::span<const double> values);

/// Equal-width bins spanning [min, max] with the bin count implied by the
/// Scott width; the last bin is right-closed.
Histogram scott_histogram(std::span<const double> values);

void write_histogram_csv(const Histogram& histogram, std::ostream& out);

/// Periodogram of the mean-removed series sampled every `dt_hours`. Returns the
/// `top_k` strongest local maxima, zero frequency excluded.
std::vector<FrequencyPeak> dominant_frequencies(std::span<const double> values, double dt_hours, std::size_t top_k);

/// min/max/mean/std plus `integral = scale * sum(values)`.
StatsSummary summarize(std::span<const double> values, double integral_scale);

}  // namespace priceforge::stats
