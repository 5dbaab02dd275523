#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "priceforge/ingest.hpp"
#include "priceforge/kernels.hpp"
#include "priceforge/scenario.hpp"

namespace priceforge::clustering {

/// (a) daily DA mean; (b) daily DA mean and std; (c) daily DA mean and the
/// daily std of the ID-DA deviation.
enum class Criterion { A, B, C };
enum class Algorithm { KMeans, KMedoids, HierarchicalMedoid, HierarchicalCentroid };
enum class Representative { Centroid, Medoid };

std::string_view to_string(Criterion c);
std::string_view to_string(Algorithm a);
std::optional<Criterion> parse_criterion(std::string_view text);
std::optional<Algorithm> parse_algorithm(std::string_view text);
Representative representative_of(Algorithm a);

/// Z-normalized features, one row per day. Constant columns become zero.
struct FeatureMatrix {
    kernels::RowMatrix values;
    std::vector<double> shift;
    std::vector<double> scale;
    Criterion criterion = Criterion::A;
};

/// Un-normalized feature rows.
kernels::RowMatrix raw_features(std::span<const DayRecord> days, Criterion criterion);
FeatureMatrix extract_features(std::span<const DayRecord> days, Criterion criterion);

struct ClusterSet {
    std::size_t k = 0;
    Algorithm algorithm = Algorithm::KMeans;
    Representative representative = Representative::Centroid;
    /// Cluster of every row; clusters are numbered by first appearance.
    std::vector<std::size_t> assignment;
    std::vector<double> weights;
    /// Row index of each cluster's medoid (Medoid representatives only).
    std::vector<std::size_t> medoids;
    /// Per-cluster centre in feature space (centroid or medoid row).
    kernels::RowMatrix centers;
};

/// Lloyd iterations from farthest-point seeding.
ClusterSet kmeans(const FeatureMatrix& features, std::size_t k);
/// PAM build + swap.
ClusterSet kmedoids(const FeatureMatrix& features, std::size_t k);
/// Agglomerative Ward linkage cut at k clusters.
ClusterSet hierarchical(const FeatureMatrix& features, std::size_t k, Representative representative);

ClusterSet run(const FeatureMatrix& features, Algorithm algorithm, std::size_t k);

/// Within-cluster sum of squared distances to the member mean.
double wcss(const FeatureMatrix& features, const ClusterSet& clusters);

/// Knee of a WCSS curve given for k = 1 .. curve.size(): the point farthest
/// below the chord joining the normalized end points. Returns 1 without a knee.
std::size_t knee_of_curve(std::span<const double> curve);

std::size_t elbow_k(const FeatureMatrix& features, Algorithm algorithm, std::size_t k_max);

/// One unscaled price scenario per cluster: the member mean (Centroid) or the
/// medoid day's raw prices (Medoid), weighted by cluster share.
std::vector<WeightedScenario> cluster_scenarios(const ClusterSet& clusters, std::span<const DayRecord> days);

}  // namespace priceforge::clustering
