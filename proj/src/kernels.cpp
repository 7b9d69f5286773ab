#include "prodcat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prodcat {

Distance parse_distance(std::string_view name) {
    if (name == "cosine") return Distance::Cosine;
    if (name == "euclidean") return Distance::Euclidean;
    throw std::invalid_argument("unknown distance: " + std::string(name) +
                                " (want cosine or euclidean)");
}

std::string to_string(Distance d) {
    return d == Distance::Cosine ? "cosine" : "euclidean";
}

CsrMatrix CsrMatrix::from_vectors(std::span<const SparseVector> rows, std::size_t n_cols) {
    CsrMatrix m;
    m.n_rows = rows.size();
    m.n_cols = n_cols;
    m.row_offsets.reserve(rows.size() + 1);
    m.row_offsets.push_back(0);
    std::size_t nnz = 0;
    for (const auto& row : rows) nnz += row.entries.size();
    m.col_index.reserve(nnz);
    m.values.reserve(nnz);
    for (const auto& row : rows) {
        for (const auto& e : row.entries) {
            if (e.index >= n_cols) throw std::invalid_argument("sparse index out of range");
            m.col_index.push_back(e.index);
            m.values.push_back(e.weight);
        }
        m.row_offsets.push_back(m.col_index.size());
    }
    return m;
}

double CsrMatrix::row_squared_norm(std::size_t r) const {
    double sum = 0.0;
    for (std::size_t j = row_offsets[r]; j < row_offsets[r + 1]; j++) sum += values[j] * values[j];
    return sum;
}

namespace kernels {
namespace {

std::vector<double> centroid_squared_norms(const DenseMatrix& centroids) {
    std::vector<double> sq(centroids.n_rows, 0.0);
    for (std::size_t c = 0; c < centroids.n_rows; c++) {
        const double* row = centroids.row(c);
        double sum = 0.0;
        for (std::size_t j = 0; j < centroids.n_cols; j++) sum += row[j] * row[j];
        sq[c] = sum;
    }
    return sq;
}

double row_dot(const CsrMatrix& points, std::size_t r, const double* centroid) {
    double sum = 0.0;
    for (std::size_t j = points.row_offsets[r]; j < points.row_offsets[r + 1]; j++)
        sum += points.values[j] * centroid[points.col_index[j]];
    return sum;
}

// Single-point assignment, shared verbatim by the serial and parallel
// entry points so both produce the same bits.
void assign_one(const CsrMatrix& points, const DenseMatrix& centroids, Distance distance,
                std::span<const double> centroid_sq, std::size_t i, std::uint32_t& out_a,
                double& out_s) {
    std::uint32_t best = 0;
    double best_score = distance == Distance::Cosine ? -1.0 : std::numeric_limits<double>::infinity();
    const double point_sq = points.row_squared_norm(i);
    for (std::size_t c = 0; c < centroids.n_rows; c++) {
        const double dot = row_dot(points, i, centroids.row(c));
        double score;
        if (distance == Distance::Cosine) {
            score = dot;
            if (score > best_score) {
                best_score = score;
                best = static_cast<std::uint32_t>(c);
            }
        } else {
            score = std::max(0.0, point_sq - 2.0 * dot + centroid_sq[c]);
            if (score < best_score) {
                best_score = score;
                best = static_cast<std::uint32_t>(c);
            }
        }
    }
    out_a = best;
    out_s = best_score;
}

void max_cosine_one(const CsrMatrix& points, const DenseMatrix& centroids,
                    std::span<const double> centroid_sq, std::size_t i, double& out) {
    double best = 0.0;
    const double point_sq = points.row_squared_norm(i);
    if (point_sq > 0.0) {
        for (std::size_t c = 0; c < centroids.n_rows; c++) {
            if (centroid_sq[c] == 0.0) continue;
            const double sim = row_dot(points, i, centroids.row(c)) / std::sqrt(point_sq * centroid_sq[c]);
            best = std::max(best, sim);
        }
    }
    out = best;
}

void check_shapes(const CsrMatrix& points, const DenseMatrix& centroids,
                  std::span<const std::uint32_t> out_assign, std::span<const double> out_score) {
    if (points.n_cols != centroids.n_cols)
        throw std::invalid_argument("points and centroids have different dimensionality");
    if (out_assign.size() != points.n_rows || out_score.size() != points.n_rows)
        throw std::invalid_argument("output spans must have one slot per point");
}

DenseMatrix means_impl(const CsrMatrix& points, const std::vector<std::vector<std::uint32_t>>& members,
                       std::size_t k, bool parallel) {
    if (members.size() != k) throw std::invalid_argument("members must have k groups");
    DenseMatrix means(k, points.n_cols);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(k); c++) {
        double* row = means.row(static_cast<std::size_t>(c));
        const auto& group = members[static_cast<std::size_t>(c)];
        if (group.empty()) continue;
        for (std::uint32_t r : group)
            for (std::size_t j = points.row_offsets[r]; j < points.row_offsets[r + 1]; j++)
                row[points.col_index[j]] += points.values[j];
        const double inv = 1.0 / static_cast<double>(group.size());
        for (std::size_t j = 0; j < points.n_cols; j++) row[j] *= inv;
    }
    return means;
}

}  // namespace

void assign_nearest(const CsrMatrix& points, const DenseMatrix& centroids, Distance distance,
                    std::span<std::uint32_t> out_assign, std::span<double> out_score) {
    check_shapes(points, centroids, out_assign, out_score);
    const std::vector<double> centroid_sq = centroid_squared_norms(centroids);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points.n_rows); i++)
        assign_one(points, centroids, distance, centroid_sq, static_cast<std::size_t>(i),
                   out_assign[static_cast<std::size_t>(i)], out_score[static_cast<std::size_t>(i)]);
}

DenseMatrix cluster_means(const CsrMatrix& points, const std::vector<std::vector<std::uint32_t>>& members,
                          std::size_t k) {
    return means_impl(points, members, k, true);
}

std::vector<double> max_cosine(const CsrMatrix& points, const DenseMatrix& centroids) {
    if (points.n_cols != centroids.n_cols)
        throw std::invalid_argument("points and centroids have different dimensionality");
    const std::vector<double> centroid_sq = centroid_squared_norms(centroids);
    std::vector<double> out(points.n_rows, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points.n_rows); i++)
        max_cosine_one(points, centroids, centroid_sq, static_cast<std::size_t>(i),
                       out[static_cast<std::size_t>(i)]);
    return out;
}

namespace serial {

void assign_nearest(const CsrMatrix& points, const DenseMatrix& centroids, Distance distance,
                    std::span<std::uint32_t> out_assign, std::span<double> out_score) {
    check_shapes(points, centroids, out_assign, out_score);
    const std::vector<double> centroid_sq = centroid_squared_norms(centroids);
    for (std::size_t i = 0; i < points.n_rows; i++)
        assign_one(points, centroids, distance, centroid_sq, i, out_assign[i], out_score[i]);
}

DenseMatrix cluster_means(const CsrMatrix& points, const std::vector<std::vector<std::uint32_t>>& members,
                          std::size_t k) {
    return means_impl(points, members, k, false);
}

std::vector<double> max_cosine(const CsrMatrix& points, const DenseMatrix& centroids) {
    if (points.n_cols != centroids.n_cols)
        throw std::invalid_argument("points and centroids have different dimensionality");
    const std::vector<double> centroid_sq = centroid_squared_norms(centroids);
    std::vector<double> out(points.n_rows, 0.0);
    for (std::size_t i = 0; i < points.n_rows; i++)
        max_cosine_one(points, centroids, centroid_sq, i, out[i]);
    return out;
}

}  // namespace serial
}  // namespace kernels
}  // namespace prodcat
