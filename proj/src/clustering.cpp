#include "priceforge/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "priceforge/error.hpp"
#include "priceforge/stats.hpp"

namespace priceforge::clustering {

namespace {

constexpr std::size_t kMaxLloydIterations = 300;

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double ss = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        ss += (a[c] - b[c]) * (a[c] - b[c]);
    }
    return ss;
}

void check_k(const FeatureMatrix& features, std::size_t k) {
    if (k < 1 || k > features.values.rows) {
        throw Error(ErrorCode::BadK, "k = " + std::to_string(k) + " outside [1, " +
                                         std::to_string(features.values.rows) + "]");
    }
}

/// Renumbers clusters by first appearance in row order.
std::vector<std::size_t> canonical_order(const std::vector<std::size_t>& assignment, std::size_t k) {
    std::vector<std::size_t> remap(k, k);
    std::size_t next = 0;
    for (std::size_t label : assignment) {
        if (remap[label] == k) {
            remap[label] = next++;
        }
    }
    return remap;
}

kernels::RowMatrix member_means(const kernels::RowMatrix& x, const std::vector<std::size_t>& assignment,
                                std::size_t k) {
    kernels::RowMatrix means(k, x.cols);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t r = 0; r < x.rows; ++r) {
        const std::size_t s = assignment[r];
        ++counts[s];
        for (std::size_t c = 0; c < x.cols; ++c) {
            means.at(s, c) += x.at(r, c);
        }
    }
    for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t c = 0; c < x.cols; ++c) {
            means.at(s, c) /= static_cast<double>(std::max<std::size_t>(counts[s], 1));
        }
    }
    return means;
}

/// Fills weights, relabels clusters canonically and sets centres/medoids.
ClusterSet finish(const FeatureMatrix& features, std::vector<std::size_t> assignment, std::size_t k,
                  Algorithm algorithm, std::vector<std::size_t> medoids) {
    const auto remap = canonical_order(assignment, k);
    for (auto& label : assignment) {
        label = remap[label];
    }
    ClusterSet out;
    out.k = k;
    out.algorithm = algorithm;
    out.representative = representative_of(algorithm);
    out.weights.assign(k, 0.0);
    for (std::size_t label : assignment) {
        out.weights[label] += 1.0;
    }
    for (double& w : out.weights) {
        w /= static_cast<double>(assignment.size());
    }
    if (out.representative == Representative::Medoid) {
        out.medoids.assign(k, 0);
        for (std::size_t s = 0; s < medoids.size(); ++s) {
            out.medoids[remap[s]] = medoids[s];
        }
        out.centers = kernels::RowMatrix(k, features.values.cols);
        for (std::size_t s = 0; s < k; ++s) {
            const auto row = features.values.row(out.medoids[s]);
            std::copy(row.begin(), row.end(), out.centers.row(s).begin());
        }
    } else {
        out.centers = member_means(features.values, assignment, k);
    }
    out.assignment = std::move(assignment);
    return out;
}

/// Member minimizing the summed distance to the other members of its cluster.
std::vector<std::size_t> cluster_medoids(const kernels::RowMatrix& dist, const std::vector<std::size_t>& assignment,
                                         std::size_t k) {
    std::vector<std::size_t> best(k, 0);
    std::vector<double> best_cost(k, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        double cost = 0.0;
        for (std::size_t j = 0; j < assignment.size(); ++j) {
            if (assignment[j] == assignment[i]) {
                cost += dist.at(i, j);
            }
        }
        if (cost < best_cost[assignment[i]]) {
            best_cost[assignment[i]] = cost;
            best[assignment[i]] = i;
        }
    }
    return best;
}

}  // namespace

std::string_view to_string(Criterion c) {
    switch (c) {
        case Criterion::A: return "a";
        case Criterion::B: return "b";
        case Criterion::C: return "c";
    }
    return "?";
}

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::KMeans: return "kmeans";
        case Algorithm::KMedoids: return "kmedoids";
        case Algorithm::HierarchicalMedoid: return "hier-m";
        case Algorithm::HierarchicalCentroid: return "hier-c";
    }
    return "?";
}

std::optional<Criterion> parse_criterion(std::string_view text) {
    for (Criterion c : {Criterion::A, Criterion::B, Criterion::C}) {
        if (text == to_string(c)) {
            return c;
        }
    }
    return std::nullopt;
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
    for (Algorithm a : {Algorithm::KMeans, Algorithm::KMedoids, Algorithm::HierarchicalMedoid,
                        Algorithm::HierarchicalCentroid}) {
        if (text == to_string(a)) {
            return a;
        }
    }
    return std::nullopt;
}

Representative representative_of(Algorithm a) {
    return (a == Algorithm::KMedoids || a == Algorithm::HierarchicalMedoid) ? Representative::Medoid
                                                                             : Representative::Centroid;
}

kernels::RowMatrix raw_features(std::span<const DayRecord> days, Criterion criterion) {
    if (days.empty()) {
        throw Error(ErrorCode::EmptyInput, "no days to cluster");
    }
    const std::size_t cols = criterion == Criterion::A ? 1 : 2;
    kernels::RowMatrix out(days.size(), cols);
    for (std::size_t r = 0; r < days.size(); ++r) {
        const DayRecord& day = days[r];
        const stats::Moments da = stats::moments(day.da);
        out.at(r, 0) = da.mean;
        if (criterion == Criterion::B) {
            out.at(r, 1) = da.std;
        } else if (criterion == Criterion::C) {
            if (day.id.size() != kQuartersPerHour * day.da.size()) {
                throw Error(ErrorCode::MissingIdPrices, "criterion (c) needs quarter-hourly ID prices");
            }
            std::vector<double> deviation(day.id.size());
            for (std::size_t q = 0; q < deviation.size(); ++q) {
                deviation[q] = day.id[q] - day.da[q / kQuartersPerHour];
            }
            out.at(r, 1) = stats::population_std(deviation);
        }
    }
    return out;
}

FeatureMatrix extract_features(std::span<const DayRecord> days, Criterion criterion) {
    FeatureMatrix out;
    out.criterion = criterion;
    out.values = raw_features(days, criterion);
    const std::size_t n = out.values.rows;
    for (std::size_t c = 0; c < out.values.cols; ++c) {
        std::vector<double> column(n);
        for (std::size_t r = 0; r < n; ++r) {
            column[r] = out.values.at(r, c);
        }
        const stats::Moments m = stats::moments(column);
        const bool constant = m.std <= 1e-12 * std::max(1.0, std::abs(m.mean));
        out.shift.push_back(m.mean);
        out.scale.push_back(constant ? 0.0 : m.std);
        for (std::size_t r = 0; r < n; ++r) {
            out.values.at(r, c) = constant ? 0.0 : (column[r] - m.mean) / m.std;
        }
    }
    return out;
}

ClusterSet kmeans(const FeatureMatrix& features, std::size_t k) {
    check_k(features, k);
    const kernels::RowMatrix& x = features.values;
    const std::size_t n = x.rows;

    const std::vector<double> global = kernels::parallel::column_means(x);
    std::vector<std::size_t> seeds;
    std::vector<char> chosen(n, 0);
    {
        std::size_t first = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < n; ++r) {
            const double d = squared_distance(x.row(r), global);
            if (d < best) {
                best = d;
                first = r;
            }
        }
        seeds.push_back(first);
        chosen[first] = 1;
    }
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (seeds.size() < k) {
        const auto last = x.row(seeds.back());
        std::size_t pick = n;
        double farthest = -1.0;
        for (std::size_t r = 0; r < n; ++r) {
            nearest[r] = std::min(nearest[r], squared_distance(x.row(r), last));
            if (!chosen[r] && nearest[r] > farthest) {
                farthest = nearest[r];
                pick = r;
            }
        }
        seeds.push_back(pick);
        chosen[pick] = 1;
    }

    kernels::RowMatrix centroids(k, x.cols);
    for (std::size_t s = 0; s < k; ++s) {
        const auto row = x.row(seeds[s]);
        std::copy(row.begin(), row.end(), centroids.row(s).begin());
    }

    std::vector<std::size_t> assignment(n, k);
    for (std::size_t iter = 0; iter < kMaxLloydIterations; ++iter) {
        std::vector<std::size_t> next(n, 0);
        std::vector<double> dist(n, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t s = 0; s < k; ++s) {
                const double d = squared_distance(x.row(r), centroids.row(s));
                if (d < best) {
                    best = d;
                    next[r] = s;
                }
            }
            dist[r] = best;
        }
        // Refill emptied clusters with the point farthest from its centroid.
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t s : next) {
            ++sizes[s];
        }
        for (std::size_t s = 0; s < k; ++s) {
            if (sizes[s] != 0) {
                continue;
            }
            std::size_t donor = n;
            double farthest = -1.0;
            for (std::size_t r = 0; r < n; ++r) {
                if (sizes[next[r]] > 1 && dist[r] > farthest) {
                    farthest = dist[r];
                    donor = r;
                }
            }
            --sizes[next[donor]];
            next[donor] = s;
            dist[donor] = 0.0;
            sizes[s] = 1;
        }
        centroids = member_means(x, next, k);
        if (next == assignment) {
            break;
        }
        assignment = std::move(next);
    }
    return finish(features, std::move(assignment), k, Algorithm::KMeans, {});
}

ClusterSet kmedoids(const FeatureMatrix& features, std::size_t k) {
    check_k(features, k);
    const std::size_t n = features.values.rows;
    const kernels::RowMatrix dist = kernels::parallel::pairwise_distances(features.values);

    std::vector<std::size_t> medoids;
    std::vector<char> is_medoid(n, 0);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

    // BUILD
    {
        std::size_t first = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double total = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                total += dist.at(i, j);
            }
            if (total < best) {
                best = total;
                first = i;
            }
        }
        medoids.push_back(first);
        is_medoid[first] = 1;
        for (std::size_t j = 0; j < n; ++j) {
            nearest[j] = dist.at(first, j);
        }
    }
    while (medoids.size() < k) {
        std::size_t pick = n;
        double best_gain = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_medoid[i]) {
                continue;
            }
            double gain = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                gain += std::max(0.0, nearest[j] - dist.at(i, j));
            }
            if (gain > best_gain) {
                best_gain = gain;
                pick = i;
            }
        }
        medoids.push_back(pick);
        is_medoid[pick] = 1;
        for (std::size_t j = 0; j < n; ++j) {
            nearest[j] = std::min(nearest[j], dist.at(pick, j));
        }
    }

    const auto total_cost = [&](const std::vector<std::size_t>& meds) {
        double cost = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t m : meds) {
                best = std::min(best, dist.at(m, j));
            }
            cost += best;
        }
        return cost;
    };

    // SWAP: apply the best improving medoid/non-medoid exchange until none improves.
    double cost = total_cost(medoids);
    for (std::size_t iter = 0; iter < 10000; ++iter) {
        double best_cost = cost;
        std::size_t best_slot = k;
        std::size_t best_candidate = n;
        std::vector<std::size_t> trial = medoids;
        for (std::size_t slot = 0; slot < k; ++slot) {
            for (std::size_t h = 0; h < n; ++h) {
                if (is_medoid[h]) {
                    continue;
                }
                trial[slot] = h;
                const double c = total_cost(trial);
                if (c < best_cost - 1e-12 * std::max(1.0, cost)) {
                    best_cost = c;
                    best_slot = slot;
                    best_candidate = h;
                }
            }
            trial[slot] = medoids[slot];
        }
        if (best_slot == k) {
            break;
        }
        is_medoid[medoids[best_slot]] = 0;
        medoids[best_slot] = best_candidate;
        is_medoid[best_candidate] = 1;
        cost = best_cost;
    }

    std::sort(medoids.begin(), medoids.end());
    std::vector<std::size_t> assignment(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < k; ++s) {
            if (dist.at(medoids[s], j) < best) {
                best = dist.at(medoids[s], j);
                assignment[j] = s;
            }
        }
    }
    // A medoid always belongs to its own cluster, even when tied with another.
    for (std::size_t s = 0; s < k; ++s) {
        assignment[medoids[s]] = s;
    }
    return finish(features, std::move(assignment), k, Algorithm::KMedoids, std::move(medoids));
}

ClusterSet hierarchical(const FeatureMatrix& features, std::size_t k, Representative representative) {
    check_k(features, k);
    const kernels::RowMatrix& x = features.values;
    const std::size_t n = x.rows;

    // Lance-Williams recurrence for Ward on squared Euclidean distances.
    kernels::RowMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d.at(i, j) = d.at(j, i) = squared_distance(x.row(i), x.row(j));
        }
    }
    std::vector<std::size_t> size(n, 1);
    std::vector<std::size_t> owner(n);
    std::iota(owner.begin(), owner.end(), 0);
    std::vector<char> active(n, 1);
    std::size_t clusters = n;
    while (clusters > k) {
        std::size_t bi = n;
        std::size_t bj = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) {
                continue;
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                if (active[j] && d.at(i, j) < best) {
                    best = d.at(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        const double ni = static_cast<double>(size[bi]);
        const double nj = static_cast<double>(size[bj]);
        for (std::size_t m = 0; m < n; ++m) {
            if (!active[m] || m == bi || m == bj) {
                continue;
            }
            const double nm = static_cast<double>(size[m]);
            const double merged =
                ((ni + nm) * d.at(bi, m) + (nj + nm) * d.at(bj, m) - nm * d.at(bi, bj)) / (ni + nj + nm);
            d.at(bi, m) = d.at(m, bi) = merged;
        }
        size[bi] += size[bj];
        active[bj] = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (owner[r] == bj) {
                owner[r] = bi;
            }
        }
        --clusters;
    }

    std::vector<std::size_t> label(n, n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (active[i]) {
            label[i] = next++;
        }
    }
    std::vector<std::size_t> assignment(n);
    for (std::size_t r = 0; r < n; ++r) {
        assignment[r] = label[owner[r]];
    }
    const Algorithm algorithm = representative == Representative::Medoid ? Algorithm::HierarchicalMedoid
                                                                        : Algorithm::HierarchicalCentroid;
    std::vector<std::size_t> medoids;
    if (representative == Representative::Medoid) {
        medoids = cluster_medoids(kernels::parallel::pairwise_distances(x), assignment, k);
    }
    return finish(features, std::move(assignment), k, algorithm, std::move(medoids));
}

ClusterSet run(const FeatureMatrix& features, Algorithm algorithm, std::size_t k) {
    switch (algorithm) {
        case Algorithm::KMeans: return kmeans(features, k);
        case Algorithm::KMedoids: return kmedoids(features, k);
        case Algorithm::HierarchicalMedoid: return hierarchical(features, k, Representative::Medoid);
        case Algorithm::HierarchicalCentroid: return hierarchical(features, k, Representative::Centroid);
    }
    throw Error(ErrorCode::BadSpec, "unknown clustering algorithm");
}

double wcss(const FeatureMatrix& features, const ClusterSet& clusters) {
    const kernels::RowMatrix means = member_means(features.values, clusters.assignment, clusters.k);
    double total = 0.0;
    for (std::size_t r = 0; r < features.values.rows; ++r) {
        total += squared_distance(features.values.row(r), means.row(clusters.assignment[r]));
    }
    return total;
}

std::size_t knee_of_curve(std::span<const double> curve) {
    if (curve.size() < 2) {
        throw Error(ErrorCode::BadKMax, "knee detection needs at least two points");
    }
    const auto [lo, hi] = std::minmax_element(curve.begin(), curve.end());
    const double range = *hi - *lo;
    if (range <= 0.0) {
        return 1;
    }
    const double last_x = static_cast<double>(curve.size() - 1);
    const double y0 = (curve.front() - *lo) / range;
    const double y1 = (curve.back() - *lo) / range;
    std::size_t knee = 1;
    double best = 1e-12;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double xn = static_cast<double>(i) / last_x;
        const double yn = (curve[i] - *lo) / range;
        const double below = y0 + (y1 - y0) * xn - yn;
        if (below > best) {
            best = below;
            knee = i + 1;
        }
    }
    return knee;
}

std::size_t elbow_k(const FeatureMatrix& features, Algorithm algorithm, std::size_t k_max) {
    if (k_max < 2) {
        throw Error(ErrorCode::BadKMax, "elbow search needs k_max >= 2");
    }
    const std::size_t upper = std::min(k_max, features.values.rows);
    if (upper < 2) {
        throw Error(ErrorCode::BadKMax, "elbow search needs at least two days");
    }
    std::vector<double> curve;
    for (std::size_t k = 1; k <= upper; ++k) {
        curve.push_back(wcss(features, run(features, algorithm, k)));
    }
    return knee_of_curve(curve);
}

std::vector<WeightedScenario> cluster_scenarios(const ClusterSet& clusters, std::span<const DayRecord> days) {
    if (clusters.assignment.size() != days.size()) {
        throw Error(ErrorCode::DimensionMismatch, "cluster assignment does not cover the supplied days");
    }
    std::vector<WeightedScenario> out(clusters.k);
    for (std::size_t s = 0; s < clusters.k; ++s) {
        out[s].weight = clusters.weights[s];
        if (clusters.representative == Representative::Medoid) {
            const DayRecord& medoid = days[clusters.medoids[s]];
            out[s].prices = {medoid.da, medoid.id};
            continue;
        }
        std::vector<std::size_t> members;
        for (std::size_t r = 0; r < days.size(); ++r) {
            if (clusters.assignment[r] == s) {
                members.push_back(r);
            }
        }
        kernels::RowMatrix da(members.size(), days.front().da.size());
        kernels::RowMatrix id(members.size(), days.front().id.size());
        for (std::size_t m = 0; m < members.size(); ++m) {
            const DayRecord& day = days[members[m]];
            std::copy(day.da.begin(), day.da.end(), da.row(m).begin());
            if (id.cols != 0) {
                std::copy(day.id.begin(), day.id.end(), id.row(m).begin());
            }
        }
        out[s].prices.da = kernels::parallel::column_means(da);
        if (id.cols != 0) {
            out[s].prices.id = kernels::parallel::column_means(id);
        }
    }
    return out;
}

}  // namespace priceforge::clustering
