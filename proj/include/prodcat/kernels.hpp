// Data-parallel compute kernels for clustering, plus serial reference
// implementations. The OpenMP versions are the production path; the
// serial ones exist so tests can assert bit-identical results and the
// benchmark can measure the speedup.
//
// Determinism contract: every kernel returns bit-identical output for any
// thread count. Per-point outputs are written to disjoint slots, and every
// floating-point reduction is ordered (per-cluster sums accumulate members
// in ascending point order; global sums run serially over points).

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prodcat/vectorizer.hpp"

namespace prodcat {

enum class Distance { Cosine, Euclidean };

Distance parse_distance(std::string_view name);
std::string to_string(Distance d);

// Compressed sparse rows over a fixed feature space.
struct CsrMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::size_t> row_offsets;  // n_rows + 1
    std::vector<std::uint32_t> col_index;
    std::vector<double> values;

    static CsrMatrix from_vectors(std::span<const SparseVector> rows, std::size_t n_cols);
    double row_squared_norm(std::size_t r) const;
};

// Dense row-major matrix of centroids.
struct DenseMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : n_rows(rows), n_cols(cols), data(rows * cols, 0.0) {}

    double* row(std::size_t r) { return data.data() + r * n_cols; }
    const double* row(std::size_t r) const { return data.data() + r * n_cols; }
};

namespace kernels {

// Nearest centroid per point. Cosine: argmax dot (vectors and centroids are
// expected unit-or-zero length), score = best dot. Euclidean: argmin
// squared distance, score = best squared distance (clamped at 0). Ties
// break to the lowest centroid index.
void assign_nearest(const CsrMatrix& points, const DenseMatrix& centroids, Distance distance,
                    std::span<std::uint32_t> out_assign, std::span<double> out_score);

// Per-cluster member means. members[c] must list point rows in ascending
// order; each cluster is summed by a single thread in that order.
DenseMatrix cluster_means(const CsrMatrix& points, const std::vector<std::vector<std::uint32_t>>& members,
                          std::size_t k);

// Max cosine similarity to any centroid, per point (outlier filtering).
// Handles non-unit centroids and zero points.
std::vector<double> max_cosine(const CsrMatrix& points, const DenseMatrix& centroids);

namespace serial {
void assign_nearest(const CsrMatrix& points, const DenseMatrix& centroids, Distance distance,
                    std::span<std::uint32_t> out_assign, std::span<double> out_score);
DenseMatrix cluster_means(const CsrMatrix& points, const std::vector<std::vector<std::uint32_t>>& members,
                          std::size_t k);
std::vector<double> max_cosine(const CsrMatrix& points, const DenseMatrix& centroids);
}  // namespace serial

}  // namespace kernels
}  // namespace prodcat
