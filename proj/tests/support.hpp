#pragma once

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "priceforge/ingest.hpp"
#include "priceforge/synth.hpp"

namespace pftest {

inline priceforge::DayRecord day_of(std::vector<double> da, std::vector<double> id) {
    priceforge::DayRecord rec;
    rec.da = std::move(da);
    rec.id = std::move(id);
    return rec;
}

// id equal to the hourly da replicated per quarter, plus an optional offset per quarter
inline std::vector<double> replicate(const std::vector<double>& hourly, const std::vector<double>& extra = {}) {
    std::vector<double> out(hourly.size() * 4);
    for (std::size_t q = 0; q < out.size(); ++q) {
        out[q] = hourly[q / 4] + (extra.empty() ? 0.0 : extra[q % extra.size()]);
    }
    return out;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double pstd(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

inline priceforge::PriceSeries small_year(std::size_t n_days, std::size_t skip = 0) {
    auto spec = priceforge::synth::synth2023();
    spec.n_days = n_days;
    spec.start_date = priceforge::add_days(spec.start_date, static_cast<long>(skip));
    return priceforge::synth::generate(spec);
}

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("pftest_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::string str(const std::string& leaf = {}) const { return leaf.empty() ? path_.string() : (path_ / leaf).string(); }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace pftest
