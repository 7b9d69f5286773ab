// Seeded and random-init K-means under cosine similarity (spherical
// K-means: centroids renormalized after each mean update) or Euclidean
// distance, plus the low-similarity outlier filter.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prodcat/kernels.hpp"
#include "prodcat/vectorizer.hpp"

namespace prodcat {

enum class KMeansInit { Seeded, Random };

struct KMeansConfig {
    std::size_t k = 34;
    Distance distance = Distance::Cosine;
    KMeansInit init = KMeansInit::Seeded;
    std::size_t max_iter = 100;
    double tol = 1e-6;  // on max centroid movement (L2 per centroid)
    std::uint64_t rng_seed = 0;
    // Skip Lloyd iterations entirely: pure nearest-centroid assignment
    // against the initial centroids.
    bool frozen_centroids = false;
};

// Manually labeled exemplar groups; map keeps labels in lexicographic order.
struct LabeledSeedSet {
    std::map<std::string, std::vector<SparseVector>> groups;
};

struct CentroidSet {
    DenseMatrix centroids;
    std::vector<std::string> labels;  // empty unless seeded

    std::size_t k() const { return centroids.n_rows; }
    std::size_t dim() const { return centroids.n_cols; }
    std::string label_of(std::size_t cluster) const;

    void save(const std::filesystem::path& path) const;
    static CentroidSet load(const std::filesystem::path& path);
};

struct ClusteringResult {
    std::vector<std::uint32_t> assignment;
    // Cosine: similarity to the assigned centroid. Euclidean: distance.
    std::vector<double> best_score;
    std::size_t n_iterations = 0;
    bool converged = false;
    // Sum of similarities (cosine) or sum of squared distances (euclidean).
    double objective = 0.0;
    // Objective after each assignment step, oldest first.
    std::vector<double> objective_history;
};

// Centroid per label = arithmetic mean of that label's vectors; cosine mode
// renormalizes to unit length. Labels attach in lexicographic order.
// Throws on an empty group or an all-zero mean ("degenerate seed group").
CentroidSet seed_centroids(const LabeledSeedSet& seeds, Distance distance, std::size_t dim);

// Lloyd iteration: assign to the nearest centroid (ties -> lowest index),
// recompute member means (cosine: renormalize), stop when assignments stop
// changing, centroid movement falls to tol, or max_iter is reached. The
// returned assignment is always a fixed point of the returned centroids.
// Random init draws k distinct points seeded by config.rng_seed. Empty
// clusters are re-seeded with the point currently worst-served by its
// centroid; in seeded mode the previous centroid is kept instead, so a
// labeled cluster can go empty but never wanders.
std::pair<CentroidSet, ClusteringResult> kmeans(std::span<const SparseVector> points, std::size_t dim,
                                                const KMeansConfig& config,
                                                const CentroidSet* initial = nullptr);

// Single assignment pass against fixed centroids.
ClusteringResult assign_to_centroids(std::span<const SparseVector> points, const CentroidSet& centroids,
                                     Distance distance);

struct OutlierSplit {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> outliers;
    std::vector<double> max_similarity;  // per input point
};

// A point is an outlier iff its max cosine similarity over all centroids is
// strictly below the threshold. Exhaustive and disjoint partition.
OutlierSplit filter_outliers(std::span<const SparseVector> points, const CentroidSet& centroids,
                             double threshold = 0.1);

}  // namespace prodcat
