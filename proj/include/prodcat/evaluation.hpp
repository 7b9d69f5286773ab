// Clustering quality metrics: Rand index, per-cluster and total class
// entropy (log base 2), the per-cluster market/vendor facet-entropy report
// and the 400/100-style holdout evaluation protocol.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prodcat/clustering.hpp"
#include "prodcat/corpus.hpp"

namespace prodcat {

// Maps arbitrary label strings to dense integer ids (first-seen order).
std::vector<std::uint32_t> encode_labels(std::span<const std::string> labels);

// Fraction of point pairs on which the two partitions agree (together in
// both, or apart in both), out of n-choose-2. Computed exactly from the
// contingency table in 64-bit integers. Throws if lengths differ or n < 2.
double rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
double rand_index(std::span<const std::string> a, std::span<const std::string> b);

// -sum p_j log2 p_j over the classes present in one cluster.
// Throws on an empty cluster.
double cluster_entropy(std::span<const std::size_t> class_counts);

// Size-weighted mean of per-cluster entropies.
double total_entropy(const std::vector<std::vector<std::size_t>>& per_cluster_counts);

// Per-cluster class-count table: counts[cluster][class].
std::vector<std::vector<std::size_t>> contingency_by_cluster(std::span<const std::uint32_t> cluster,
                                                             std::span<const std::uint32_t> truth_class,
                                                             std::size_t n_clusters);

struct EvalReport {
    double rand_index = 0.0;
    double total_entropy_bits = 0.0;
    std::vector<double> per_cluster_entropy;  // -1 marks an empty cluster
    std::size_t n_points = 0;
};

EvalReport evaluate_clustering(std::span<const std::uint32_t> pred, std::span<const std::string> truth,
                               std::size_t n_clusters);

struct FacetEntropyRow {
    std::size_t rank = 0;
    std::string cluster_name;
    std::size_t n_products = 0;
    std::size_t n_markets = 0;
    double market_entropy_bits = 0.0;
    double market_entropy_norm = 0.0;
    std::size_t n_vendors = 0;
    double vendor_entropy_bits = 0.0;
    double vendor_entropy_norm = 0.0;
};

// One row per nonempty cluster. Facet counts are (product, facet-value)
// incidences: a product cross-posted in three markets contributes one count
// to each. Normalized entropy divides the raw bits by
// log2(max(2, distinct facet values in the cluster)). Rows are sorted by
// product count descending (ties by cluster index) and ranked from 1.
std::vector<FacetEntropyRow> facet_entropy_report(std::span<const std::uint32_t> assignment,
                                                  std::span<const std::size_t> point_product,
                                                  std::span<const DistinctProduct> products,
                                                  const std::vector<std::string>& cluster_names,
                                                  std::size_t n_clusters);

// Clusters the training points (seeded or random per config), assigns the
// holdout points to the final centroids and scores the holdout assignment
// against its ground-truth labels.
EvalReport holdout_evaluate(std::span<const SparseVector> train_points,
                            std::span<const SparseVector> holdout_points,
                            std::span<const std::string> holdout_truth, std::size_t dim,
                            const KMeansConfig& config, const CentroidSet* seeds);

}  // namespace prodcat
