// End-to-end experiment drivers shared by the CLI and the acceptance
// tests: the feature-spec x distance x init evaluation grid and the ranked
// facet-entropy report with its companion histograms.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "prodcat/clustering.hpp"
#include "prodcat/corpus.hpp"
#include "prodcat/evaluation.hpp"
#include "prodcat/synthgen.hpp"
#include "prodcat/textprep.hpp"

namespace prodcat {

enum class OutputFormat { Csv, Json };

struct GridOptions {
    std::vector<NgramSpec> specs = standard_ngram_specs();
    std::vector<Distance> distances = {Distance::Cosine, Distance::Euclidean};
    double holdout_fraction = 0.2;  // 100 of 500
    std::uint64_t rng_seed = 0;
    std::size_t random_restarts = 10;
    bool frozen_centroids = false;
    std::size_t max_iter = 100;
    double tol = 1e-6;
    std::unordered_set<std::string> stopwords = default_stopwords();
};

struct GridCell {
    NgramSpec spec;
    Distance distance = Distance::Cosine;
    KMeansInit init = KMeansInit::Seeded;
    double rand_mean = 0.0;
    double rand_sd = 0.0;
    double entropy_mean = 0.0;
    double entropy_sd = 0.0;
    std::size_t runs = 1;
};

struct GridTable {
    std::vector<GridCell> cells;
    std::size_t n_labels = 0;
    std::size_t n_train_titles = 0;
    std::size_t n_holdout_titles = 0;

    const GridCell* find(const NgramSpec& spec, Distance d, KMeansInit init) const;
};

// Stratified per-label split, at least one training sample per label.
struct SeedSplit {
    std::vector<LabeledTitle> train;
    std::vector<LabeledTitle> holdout;
};
SeedSplit split_labeled(std::span<const LabeledTitle> labeled, double holdout_fraction,
                        std::uint64_t rng_seed);

// Runs every (spec, distance, init) cell: TF-IDF model fitted over all
// corpus titles, seed centroids from the training labels, K-means over the
// corpus minus holdout, holdout assigned to the final centroids and scored
// against its labels. Random init is averaged over random_restarts seeds.
// Throws if the labeled set does not cover every label after the split.
GridTable run_grid(std::span<const std::string> corpus_titles,
                   std::span<const LabeledTitle> labeled, const GridOptions& options);

// table_rand.csv / table_entropy.csv: Distance row x (10 spec columns +
// Random); the Random column is the random-init mean under char(3,6).
// grid_long.csv carries every cell with mean and sd.
void write_grid_tables(const GridTable& table, const std::filesystem::path& out_dir,
                       OutputFormat format = OutputFormat::Csv);

struct ReportOptions {
    bool normalized_entropy = true;  // Table layout shows normalized values by default
};

// facet_report.csv with the exact column layout
// Rank,Cluster Name,No of Products,No of Markets,Market Entropy,No of
// Vendors,Vendor Entropy; plus vendor_market_hist.csv and
// product_vendor_hist.csv for external plotting.
void write_report(const std::vector<FacetEntropyRow>& rows,
                  const DistributionHistogram& vendor_market_hist,
                  const DistributionHistogram& product_vendor_hist,
                  const std::filesystem::path& out_dir, const ReportOptions& options = {});

void write_facet_report_csv(const std::vector<FacetEntropyRow>& rows,
                            const std::filesystem::path& path, bool normalized);
void write_histogram_csv(const DistributionHistogram& hist, const std::filesystem::path& path,
                         std::string_view bucket_name, std::string_view count_name);

}  // namespace prodcat
