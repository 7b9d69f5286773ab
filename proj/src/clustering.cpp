#include "prodcat/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "prodcat/rng.hpp"

namespace prodcat {
namespace {

void normalize_rows(DenseMatrix& m) {
    for (std::size_t r = 0; r < m.n_rows; r++) {
        double* row = m.row(r);
        double sq = 0.0;
        for (std::size_t j = 0; j < m.n_cols; j++) sq += row[j] * row[j];
        if (sq > 0.0) {
            const double inv = 1.0 / std::sqrt(sq);
            for (std::size_t j = 0; j < m.n_cols; j++) row[j] *= inv;
        }
    }
}

void scatter_point(const CsrMatrix& points, std::size_t r, double* row, std::size_t n_cols) {
    std::fill(row, row + n_cols, 0.0);
    for (std::size_t j = points.row_offsets[r]; j < points.row_offsets[r + 1]; j++)
        row[points.col_index[j]] = points.values[j];
}

// Serial, index-ordered objective so repeated runs sum in the same order.
double sum_scores(std::span<const double> scores) {
    double sum = 0.0;
    for (double s : scores) sum += s;
    return sum;
}

double max_centroid_movement(const DenseMatrix& a, const DenseMatrix& b) {
    double worst = 0.0;
    for (std::size_t r = 0; r < a.n_rows; r++) {
        const double* ra = a.row(r);
        const double* rb = b.row(r);
        double sq = 0.0;
        for (std::size_t j = 0; j < a.n_cols; j++) {
            const double d = ra[j] - rb[j];
            sq += d * d;
        }
        worst = std::max(worst, std::sqrt(sq));
    }
    return worst;
}

DenseMatrix random_centroids(const CsrMatrix& points, std::size_t k, std::uint64_t seed) {
    if (points.n_rows < k)
        throw std::invalid_argument("random init needs at least k points, have " +
                                    std::to_string(points.n_rows));
    // Partial Fisher-Yates: the first k slots end up holding k distinct rows.
    std::vector<std::size_t> order(points.n_rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < k; i++)
        std::swap(order[i], order[i + rng.pick(points.n_rows - i)]);

    DenseMatrix centroids(k, points.n_cols);
    for (std::size_t c = 0; c < k; c++)
        scatter_point(points, order[c], centroids.row(c), points.n_cols);
    return centroids;
}

// Steal the worst-served point for each empty cluster. "Worst" is lowest
// similarity under cosine, largest squared distance under euclidean; ties
// break to the lowest point index. Returns true if anything changed.
bool repair_empty_clusters(const CsrMatrix& points, DenseMatrix& centroids, Distance distance,
                           const std::vector<std::vector<std::uint32_t>>& members,
                           std::span<const double> scores) {
    std::vector<std::size_t> empties;
    for (std::size_t c = 0; c < members.size(); c++)
        if (members[c].empty()) empties.push_back(c);
    if (empties.empty()) return false;

    std::vector<char> taken(points.n_rows, 0);
    for (std::size_t c : empties) {
        std::size_t worst = points.n_rows;
        for (std::size_t i = 0; i < points.n_rows; i++) {
            if (taken[i]) continue;
            if (worst == points.n_rows) {
                worst = i;
                continue;
            }
            const bool is_worse = distance == Distance::Cosine ? scores[i] < scores[worst]
                                                               : scores[i] > scores[worst];
            if (is_worse) worst = i;
        }
        if (worst == points.n_rows) break;  // fewer points than empty clusters
        taken[worst] = 1;
        scatter_point(points, worst, centroids.row(c), points.n_cols);
    }
    return true;
}

}  // namespace

std::string CentroidSet::label_of(std::size_t cluster) const {
    if (cluster < labels.size()) return labels[cluster];
    return "cluster-" + std::to_string(cluster);
}

void CentroidSet::save(const std::filesystem::path& path) const {
    nlohmann::json obj;
    obj["dim"] = dim();
    obj["labels"] = labels;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < centroids.n_rows; r++) {
        const double* row = centroids.row(r);
        nlohmann::json index = nlohmann::json::array();
        nlohmann::json value = nlohmann::json::array();
        for (std::size_t j = 0; j < centroids.n_cols; j++) {
            if (row[j] == 0.0) continue;
            index.push_back(j);
            value.push_back(row[j]);
        }
        rows.push_back({{"index", std::move(index)}, {"value", std::move(value)}});
    }
    obj["rows"] = std::move(rows);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << obj.dump() << '\n';
}

CentroidSet CentroidSet::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open centroids file: " + path.string());
    nlohmann::json obj = nlohmann::json::parse(in);

    CentroidSet set;
    const auto dim = obj.at("dim").get<std::size_t>();
    set.labels = obj.at("labels").get<std::vector<std::string>>();
    const auto& rows = obj.at("rows");
    set.centroids = DenseMatrix(rows.size(), dim);
    for (std::size_t r = 0; r < rows.size(); r++) {
        const auto index = rows[r].at("index").get<std::vector<std::size_t>>();
        const auto value = rows[r].at("value").get<std::vector<double>>();
        if (index.size() != value.size())
            throw std::runtime_error("centroids file is inconsistent at row " + std::to_string(r));
        double* row = set.centroids.row(r);
        for (std::size_t j = 0; j < index.size(); j++) {
            if (index[j] >= dim) throw std::runtime_error("centroid index out of range");
            row[index[j]] = value[j];
        }
    }
    if (!set.labels.empty() && set.labels.size() != set.centroids.n_rows)
        throw std::runtime_error("centroids file is inconsistent: label count != row count");
    return set;
}

CentroidSet seed_centroids(const LabeledSeedSet& seeds, Distance distance, std::size_t dim) {
    if (seeds.groups.empty()) throw std::invalid_argument("seed set has no groups");

    CentroidSet set;
    set.centroids = DenseMatrix(seeds.groups.size(), dim);
    std::size_t c = 0;
    for (const auto& [label, vectors] : seeds.groups) {
        if (vectors.empty()) throw std::invalid_argument("empty seed group: " + label);
        double* row = set.centroids.row(c);
        for (const SparseVector& v : vectors)
            for (const auto& e : v.entries) {
                if (e.index >= dim) throw std::invalid_argument("seed vector index out of range");
                row[e.index] += e.weight;
            }
        double sq = 0.0;
        for (std::size_t j = 0; j < dim; j++) {
            row[j] /= static_cast<double>(vectors.size());
            sq += row[j] * row[j];
        }
        if (sq == 0.0) throw std::invalid_argument("degenerate seed group: " + label);
        set.labels.push_back(label);
        c++;
    }
    if (distance == Distance::Cosine) normalize_rows(set.centroids);
    return set;
}

std::pair<CentroidSet, ClusteringResult> kmeans(std::span<const SparseVector> points, std::size_t dim,
                                                const KMeansConfig& config, const CentroidSet* initial) {
    if (points.empty()) throw std::invalid_argument("cannot cluster zero points");
    if (initial == nullptr && config.init == KMeansInit::Seeded)
        throw std::invalid_argument("seeded init requires initial centroids");
    if (initial != nullptr && initial->dim() != dim)
        throw std::invalid_argument("initial centroids have the wrong dimensionality");

    const CsrMatrix matrix = CsrMatrix::from_vectors(points, dim);

    CentroidSet set;
    if (initial != nullptr) {
        set = *initial;
    } else {
        if (config.k == 0) throw std::invalid_argument("k must be positive");
        set.centroids = random_centroids(matrix, config.k, config.rng_seed);
    }
    const std::size_t k = set.k();
    const bool seeded = initial != nullptr;

    ClusteringResult result;
    result.assignment.resize(points.size());
    result.best_score.resize(points.size());

    const auto record_objective = [&](std::span<const double> scores) {
        result.objective = sum_scores(scores);
        result.objective_history.push_back(result.objective);
    };

    if (config.frozen_centroids) {
        kernels::assign_nearest(matrix, set.centroids, config.distance, result.assignment,
                                result.best_score);
        record_objective(result.best_score);
        result.converged = true;
    } else {
        std::vector<std::uint32_t> prev_assignment;
        for (std::size_t iter = 1; iter <= config.max_iter; iter++) {
            kernels::assign_nearest(matrix, set.centroids, config.distance, result.assignment,
                                    result.best_score);
            record_objective(result.best_score);
            result.n_iterations = iter;

            if (result.assignment == prev_assignment) {
                result.converged = true;
                break;
            }
            if (iter == config.max_iter) break;

            std::vector<std::vector<std::uint32_t>> members(k);
            for (std::size_t i = 0; i < result.assignment.size(); i++)
                members[result.assignment[i]].push_back(static_cast<std::uint32_t>(i));
            DenseMatrix updated = kernels::cluster_means(matrix, members, k);
            if (config.distance == Distance::Cosine) normalize_rows(updated);
            if (seeded) {
                // keep a labeled centroid in place when its cluster empties
                for (std::size_t c = 0; c < k; c++)
                    if (members[c].empty())
                        std::copy(set.centroids.row(c), set.centroids.row(c) + dim, updated.row(c));
            } else {
                repair_empty_clusters(matrix, updated, config.distance, members, result.best_score);
            }

            const double movement = max_centroid_movement(set.centroids, updated);
            set.centroids = std::move(updated);
            if (movement <= config.tol) {
                // final pass so the returned assignment matches the final centroids
                kernels::assign_nearest(matrix, set.centroids, config.distance, result.assignment,
                                        result.best_score);
                record_objective(result.best_score);
                result.converged = true;
                break;
            }
            prev_assignment = result.assignment;
        }
    }

    if (config.distance == Distance::Euclidean)
        for (double& s : result.best_score) s = std::sqrt(s);
    return {std::move(set), std::move(result)};
}

ClusteringResult assign_to_centroids(std::span<const SparseVector> points, const CentroidSet& centroids,
                                     Distance distance) {
    if (points.empty()) throw std::invalid_argument("cannot assign zero points");
    const CsrMatrix matrix = CsrMatrix::from_vectors(points, centroids.dim());

    ClusteringResult result;
    result.assignment.resize(points.size());
    result.best_score.resize(points.size());
    kernels::assign_nearest(matrix, centroids.centroids, distance, result.assignment, result.best_score);
    result.objective = 0.0;
    for (double s : result.best_score) result.objective += s;
    result.objective_history.push_back(result.objective);
    result.converged = true;
    if (distance == Distance::Euclidean)
        for (double& s : result.best_score) s = std::sqrt(s);
    return result;
}

OutlierSplit filter_outliers(std::span<const SparseVector> points, const CentroidSet& centroids,
                             double threshold) {
    const CsrMatrix matrix = CsrMatrix::from_vectors(points, centroids.dim());
    OutlierSplit split;
    split.max_similarity = kernels::max_cosine(matrix, centroids.centroids);
    for (std::size_t i = 0; i < points.size(); i++) {
        if (split.max_similarity[i] < threshold)
            split.outliers.push_back(i);
        else
            split.kept.push_back(i);
    }
    return split;
}

}  // namespace prodcat
