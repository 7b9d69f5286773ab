// Timing harness for the clustering kernels: OpenMP production path vs the
// serial reference, on synthetic sparse points shaped like char-n-gram
// TF-IDF vectors. Also verifies the two paths agree bit for bit, so a run
// doubles as a determinism check at scale.
//
//   bench_kernels [n_points] [dim] [k] [rounds]

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "prodcat/kernels.hpp"
#include "prodcat/rng.hpp"
#include "prodcat/vectorizer.hpp"

using namespace prodcat;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<SparseVector> random_points(std::size_t n, std::size_t dim, std::size_t nnz,
                                        Rng& rng) {
    std::vector<SparseVector> points(n);
    for (auto& p : points) {
        std::set<std::uint32_t> indices;
        while (indices.size() < nnz) indices.insert(static_cast<std::uint32_t>(rng.pick(dim)));
        double sq = 0.0;
        for (std::uint32_t idx : indices) {
            const double w = 0.05 + rng.uniform01();
            p.entries.push_back({idx, w});
            sq += w * w;
        }
        const double inv = 1.0 / std::sqrt(sq);
        for (auto& e : p.entries) e.weight *= inv;
    }
    return points;
}

struct Timing {
    double parallel = 0.0;
    double serial = 0.0;
};

void report(const char* name, const Timing& t, std::size_t rounds) {
    std::printf("%-14s  parallel %8.3f ms/round   serial %8.3f ms/round   speedup %.2fx\n", name,
                1e3 * t.parallel / static_cast<double>(rounds),
                1e3 * t.serial / static_cast<double>(rounds), t.serial / t.parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
    const std::size_t dim = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 50000;
    const std::size_t k = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 34;
    const std::size_t rounds = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 5;

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both paths run serially\n");
#endif
    std::printf("n_points=%zu dim=%zu k=%zu nnz/point=180 rounds=%zu\n\n", n, dim, k, rounds);

    Rng rng(1);
    const auto points = random_points(n, dim, 180, rng);
    const CsrMatrix csr = CsrMatrix::from_vectors(points, dim);

    DenseMatrix centroids(k, dim);
    {
        // centroids = normalized means of a round-robin split
        std::vector<std::vector<std::uint32_t>> members(k);
        for (std::size_t i = 0; i < n; i++)
            members[i % k].push_back(static_cast<std::uint32_t>(i));
        centroids = kernels::serial::cluster_means(csr, members, k);
        for (std::size_t c = 0; c < k; c++) {
            double sq = 0.0;
            for (std::size_t j = 0; j < dim; j++) sq += centroids.row(c)[j] * centroids.row(c)[j];
            if (sq <= 0.0) continue;
            const double inv = 1.0 / std::sqrt(sq);
            for (std::size_t j = 0; j < dim; j++) centroids.row(c)[j] *= inv;
        }
    }

    std::vector<std::uint32_t> assign_par(n), assign_ser(n);
    std::vector<double> score_par(n), score_ser(n);
    bool all_identical = true;

    Timing t_assign;
    for (std::size_t r = 0; r < rounds; r++) {
        auto start = std::chrono::steady_clock::now();
        kernels::assign_nearest(csr, centroids, Distance::Cosine, assign_par, score_par);
        t_assign.parallel += seconds_since(start);

        start = std::chrono::steady_clock::now();
        kernels::serial::assign_nearest(csr, centroids, Distance::Cosine, assign_ser, score_ser);
        t_assign.serial += seconds_since(start);
    }
    all_identical = all_identical && assign_par == assign_ser &&
                    std::memcmp(score_par.data(), score_ser.data(), n * sizeof(double)) == 0;
    report("assign", t_assign, rounds);

    std::vector<std::vector<std::uint32_t>> members(k);
    for (std::size_t i = 0; i < n; i++) members[assign_ser[i]].push_back(static_cast<std::uint32_t>(i));

    Timing t_means;
    DenseMatrix means_par, means_ser;
    for (std::size_t r = 0; r < rounds; r++) {
        auto start = std::chrono::steady_clock::now();
        means_par = kernels::cluster_means(csr, members, k);
        t_means.parallel += seconds_since(start);

        start = std::chrono::steady_clock::now();
        means_ser = kernels::serial::cluster_means(csr, members, k);
        t_means.serial += seconds_since(start);
    }
    all_identical = all_identical &&
                    std::memcmp(means_par.data.data(), means_ser.data.data(),
                                means_par.data.size() * sizeof(double)) == 0;
    report("means", t_means, rounds);

    Timing t_cos;
    std::vector<double> cos_par, cos_ser;
    for (std::size_t r = 0; r < rounds; r++) {
        auto start = std::chrono::steady_clock::now();
        cos_par = kernels::max_cosine(csr, centroids);
        t_cos.parallel += seconds_since(start);

        start = std::chrono::steady_clock::now();
        cos_ser = kernels::serial::max_cosine(csr, centroids);
        t_cos.serial += seconds_since(start);
    }
    all_identical = all_identical &&
                    std::memcmp(cos_par.data(), cos_ser.data(), n * sizeof(double)) == 0;
    report("max_cosine", t_cos, rounds);

    std::printf("\nserial and parallel outputs %s\n",
                all_identical ? "are bit-identical" : "DIFFER (bug!)");
    return all_identical ? 0 : 1;
}
