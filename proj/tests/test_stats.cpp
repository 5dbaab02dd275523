#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "priceforge/error.hpp"
#include "priceforge/stats.hpp"
#include "support.hpp"

using namespace priceforge;
using doctest::Approx;

namespace {

std::vector<double> wobble(std::size_t n, double a = 0.618034) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = std::fmod(static_cast<double>(i + 1) * a, 1.0);
        v[i] = 100.0 * u - 30.0 + 7.0 * std::sin(0.3 * static_cast<double>(i));
    }
    return v;
}

}  // namespace

TEST_CASE("moments of the toy grid") {
    const std::vector<double> x{0, 5, 10, 15};
    const auto m = stats::moments(x);
    CHECK(m.mean == Approx(7.5));
    CHECK(m.std == Approx(std::sqrt(31.25)).epsilon(1e-12));
    CHECK(m.std == Approx(5.5902).epsilon(1e-4));
    const std::vector<double> c{4.2, 4.2, 4.2};
    CHECK(stats::moments(c).mean == Approx(4.2));
    CHECK(stats::moments(c).std == 0.0);
    CHECK_THROWS_AS(stats::moments(std::vector<double>{}), Error);
}

TEST_CASE("moments shift and scale") {
    const auto x = wobble(200);
    const auto base = stats::moments(x);
    for (double c : {-50.0, 0.5, 1e3}) {
        std::vector<double> y(x);
        for (double& v : y) v += c;
        const auto m = stats::moments(y);
        CHECK(m.mean == Approx(base.mean + c).epsilon(1e-12));
        CHECK(m.std == Approx(base.std).epsilon(1e-9));
    }
    for (double a : {-3.0, 0.25, 7.0}) {
        std::vector<double> y(x);
        for (double& v : y) v *= a;
        CHECK(stats::moments(y).std == Approx(std::abs(a) * base.std).epsilon(1e-12));
    }
}

TEST_CASE("percentile examples") {
    const std::vector<double> a{1, 2, 3, 4};
    CHECK(stats::percentile(a, 0.5) == Approx(2.5));
    CHECK(stats::percentile(a, 1.0 - 1e-9) == Approx(4.0).epsilon(1e-8));
    const std::vector<double> b{50, 10, 40, 30, 20};
    CHECK(stats::percentile(b, 0.85) == Approx(44.0));
    CHECK_THROWS_AS(stats::percentile(a, 0.0), Error);
    CHECK_THROWS_AS(stats::percentile(a, 1.0), Error);
    CHECK_THROWS_AS(stats::percentile(std::vector<double>{}, 0.5), Error);
}

TEST_CASE("percentile is monotone and bounded") {
    const auto x = wobble(37);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    double prev = -1e300;
    for (int i = 1; i < 100; ++i) {
        const double p = stats::percentile(x, i / 100.0);
        CHECK(p >= prev);
        CHECK(p >= *lo);
        CHECK(p <= *hi);
        prev = p;
    }
}

TEST_CASE("Scott bin width") {
    const std::vector<double> x{-1, 1, -1, 1, -1, 1, -1, 1};
    CHECK(stats::scott_bin_width(x) == Approx(3.49 * std::pow(8.0, -1.0 / 3.0)).epsilon(1e-12));
    CHECK(stats::scott_bin_width(x) == Approx(1.745).epsilon(1e-4));
    CHECK_THROWS_AS(stats::scott_bin_width(std::vector<double>{2, 2, 2}), Error);
    try {
        stats::scott_histogram(std::vector<double>{2, 2, 2});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateSample);
    }
}

TEST_CASE("histogram counts cover the sample") {
    for (std::size_t n : {2u, 9u, 365u}) {
        const auto x = wobble(n, 0.41421356);
        const auto h = stats::scott_histogram(x);
        CHECK(h.bin_edges.size() == h.counts.size() + 1);
        CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == n);
        CHECK(h.bin_edges.front() <= *std::min_element(x.begin(), x.end()));
        CHECK(h.bin_edges.back() >= *std::max_element(x.begin(), x.end()));
    }
    std::ostringstream os;
    stats::write_histogram_csv(stats::scott_histogram(wobble(50)), os);
    CHECK(os.str().rfind("bin_lo", 0) == 0);
}

TEST_CASE("periodogram finds the sine frequency") {
    std::vector<double> x(96 * 7);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = 3.0 + std::sin(2.0 * std::numbers::pi * 0.5 * 0.25 * static_cast<double>(i));
    }
    const auto peaks = stats::dominant_frequencies(x, 0.25, 3);
    REQUIRE_FALSE(peaks.empty());
    CHECK(peaks[0].frequency == Approx(0.5));
    CHECK(stats::dominant_frequencies(std::vector<double>(64, 1.5), 0.25, 3).empty());
    CHECK_THROWS_AS(stats::dominant_frequencies(std::vector<double>{1.0}, 0.25, 3), Error);
}

TEST_CASE("summary integral") {
    const std::vector<double> flat(24, 100.0);
    const auto s = stats::summarize(flat, 1.0);
    CHECK(s.min == 100.0);
    CHECK(s.max == 100.0);
    CHECK(s.std == 0.0);
    CHECK(s.integral == Approx(2400.0));
    const std::vector<double> q(96, 100.0);
    CHECK(stats::summarize(q, 0.25).integral == Approx(2400.0));
}
