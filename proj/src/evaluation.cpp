#include "prodcat/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace prodcat {
namespace {

std::uint64_t pairs_of(std::uint64_t n) { return n * (n - 1) / 2; }

double entropy_bits(std::span<const std::size_t> counts, std::size_t total) {
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    // -0.0 from a single-class cluster reads poorly in reports
    return h == 0.0 ? 0.0 : h;
}

}  // namespace

std::vector<std::uint32_t> encode_labels(std::span<const std::string> labels) {
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<std::uint32_t> out;
    out.reserve(labels.size());
    for (const std::string& label : labels) {
        auto [it, inserted] = ids.try_emplace(label, static_cast<std::uint32_t>(ids.size()));
        out.push_back(it->second);
    }
    return out;
}

double rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("partitions have different lengths");
    const std::uint64_t n = a.size();
    if (n < 2) throw std::invalid_argument("rand index needs at least 2 points");

    // Contingency table and its margins, all in exact integer arithmetic.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> cells;
    std::unordered_map<std::uint32_t, std::uint64_t> row_sum;
    std::unordered_map<std::uint32_t, std::uint64_t> col_sum;
    for (std::size_t i = 0; i < n; i++) {
        cells[{a[i], b[i]}]++;
        row_sum[a[i]]++;
        col_sum[b[i]]++;
    }

    std::uint64_t same_both = 0;  // pairs together in a AND together in b
    for (const auto& [cell, count] : cells) same_both += pairs_of(count);
    std::uint64_t same_a = 0;
    for (const auto& [label, count] : row_sum) same_a += pairs_of(count);
    std::uint64_t same_b = 0;
    for (const auto& [label, count] : col_sum) same_b += pairs_of(count);

    const std::uint64_t total = pairs_of(n);
    // agreements = together-in-both + apart-in-both
    //            = same_both + (total - same_a - same_b + same_both)
    const std::uint64_t agreements = total + 2 * same_both - same_a - same_b;
    return static_cast<double>(agreements) / static_cast<double>(total);
}

double rand_index(std::span<const std::string> a, std::span<const std::string> b) {
    const std::vector<std::uint32_t> ea = encode_labels(a);
    const std::vector<std::uint32_t> eb = encode_labels(b);
    return rand_index(std::span<const std::uint32_t>(ea), std::span<const std::uint32_t>(eb));
}

double cluster_entropy(std::span<const std::size_t> class_counts) {
    std::size_t total = 0;
    for (std::size_t c : class_counts) total += c;
    if (total == 0) throw std::invalid_argument("cluster entropy of an empty cluster");
    return entropy_bits(class_counts, total);
}

double total_entropy(const std::vector<std::vector<std::size_t>>& per_cluster_counts) {
    std::size_t grand_total = 0;
    double weighted = 0.0;
    for (const auto& counts : per_cluster_counts) {
        std::size_t total = 0;
        for (std::size_t c : counts) total += c;
        if (total == 0) continue;
        grand_total += total;
        weighted += static_cast<double>(total) * entropy_bits(counts, total);
    }
    if (grand_total == 0) throw std::invalid_argument("total entropy of an empty clustering");
    return weighted / static_cast<double>(grand_total);
}

std::vector<std::vector<std::size_t>> contingency_by_cluster(std::span<const std::uint32_t> cluster,
                                                             std::span<const std::uint32_t> truth_class,
                                                             std::size_t n_clusters) {
    if (cluster.size() != truth_class.size())
        throw std::invalid_argument("cluster/truth label lengths differ");
    std::uint32_t n_classes = 0;
    for (std::uint32_t t : truth_class) n_classes = std::max(n_classes, t + 1);

    std::vector<std::vector<std::size_t>> counts(n_clusters, std::vector<std::size_t>(n_classes, 0));
    for (std::size_t i = 0; i < cluster.size(); i++) {
        if (cluster[i] >= n_clusters) throw std::invalid_argument("cluster id out of range");
        counts[cluster[i]][truth_class[i]]++;
    }
    return counts;
}

EvalReport evaluate_clustering(std::span<const std::uint32_t> pred, std::span<const std::string> truth,
                               std::size_t n_clusters) {
    const std::vector<std::uint32_t> truth_ids = encode_labels(truth);
    const auto counts = contingency_by_cluster(pred, truth_ids, n_clusters);

    EvalReport report;
    report.n_points = pred.size();
    report.rand_index = rand_index(pred, std::span<const std::uint32_t>(truth_ids));
    report.total_entropy_bits = total_entropy(counts);
    report.per_cluster_entropy.reserve(n_clusters);
    for (const auto& cluster_counts : counts) {
        std::size_t total = 0;
        for (std::size_t c : cluster_counts) total += c;
        report.per_cluster_entropy.push_back(total == 0 ? -1.0 : entropy_bits(cluster_counts, total));
    }
    return report;
}

std::vector<FacetEntropyRow> facet_entropy_report(std::span<const std::uint32_t> assignment,
                                                  std::span<const std::size_t> point_product,
                                                  std::span<const DistinctProduct> products,
                                                  const std::vector<std::string>& cluster_names,
                                                  std::size_t n_clusters) {
    if (assignment.size() != point_product.size())
        throw std::invalid_argument("assignment/product index lengths differ");

    struct Tally {
        std::size_t n_products = 0;
        std::map<std::string, std::size_t> market_counts;
        std::map<std::string, std::size_t> vendor_counts;
    };
    std::vector<Tally> tallies(n_clusters);

    for (std::size_t i = 0; i < assignment.size(); i++) {
        if (assignment[i] >= n_clusters) throw std::invalid_argument("cluster id out of range");
        if (point_product[i] >= products.size())
            throw std::invalid_argument("product index out of range");
        Tally& t = tallies[assignment[i]];
        const DistinctProduct& p = products[point_product[i]];
        t.n_products++;
        for (const std::string& m : p.markets) t.market_counts[m]++;
        for (const std::string& v : p.vendors) t.vendor_counts[v]++;
    }

    const auto facet_entropy = [](const std::map<std::string, std::size_t>& counts, std::size_t& n_values,
                                  double& bits, double& norm) {
        n_values = counts.size();
        std::vector<std::size_t> flat;
        flat.reserve(counts.size());
        for (const auto& [value, count] : counts) flat.push_back(count);
        bits = cluster_entropy(flat);
        norm = bits / std::log2(static_cast<double>(std::max<std::size_t>(2, n_values)));
    };

    std::vector<FacetEntropyRow> rows;
    for (std::size_t c = 0; c < n_clusters; c++) {
        const Tally& t = tallies[c];
        if (t.n_products == 0) continue;
        FacetEntropyRow row;
        row.cluster_name = c < cluster_names.size() ? cluster_names[c] : "cluster-" + std::to_string(c);
        row.n_products = t.n_products;
        facet_entropy(t.market_counts, row.n_markets, row.market_entropy_bits, row.market_entropy_norm);
        facet_entropy(t.vendor_counts, row.n_vendors, row.vendor_entropy_bits, row.vendor_entropy_norm);
        rows.push_back(std::move(row));
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const FacetEntropyRow& a, const FacetEntropyRow& b) {
                         return a.n_products > b.n_products;
                     });
    for (std::size_t i = 0; i < rows.size(); i++) rows[i].rank = i + 1;
    return rows;
}

EvalReport holdout_evaluate(std::span<const SparseVector> train_points,
                            std::span<const SparseVector> holdout_points,
                            std::span<const std::string> holdout_truth, std::size_t dim,
                            const KMeansConfig& config, const CentroidSet* seeds) {
    if (holdout_points.size() != holdout_truth.size())
        throw std::invalid_argument("holdout points/labels lengths differ");
    auto [centroids, train_result] = kmeans(train_points, dim, config, seeds);
    const ClusteringResult holdout = assign_to_centroids(holdout_points, centroids, config.distance);
    return evaluate_clustering(holdout.assignment, holdout_truth, centroids.k());
}

}  // namespace prodcat
