// Release gates for the categorization pipeline. Each criterion prints a
// single PASS/FAIL line with its runtime; the process exits nonzero if any
// gate fails. The checks pit the library against independent reference
// implementations (exhaustive pair enumeration, long-double summation),
// hand-worked fixtures and qualitative orderings on labeled synthetic
// corpora.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prodcat/clustering.hpp"
#include "prodcat/corpus.hpp"
#include "prodcat/evaluation.hpp"
#include "prodcat/pipeline.hpp"
#include "prodcat/rng.hpp"
#include "prodcat/synthgen.hpp"
#include "prodcat/textprep.hpp"
#include "prodcat/vectorizer.hpp"

namespace fs = std::filesystem;
using namespace prodcat;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (condition) return;
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += message;
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

// ---------------------------------------------------------------------------
// criterion 1: metric oracles
// ---------------------------------------------------------------------------

// All partitions of {0..n-1} as restricted-growth label strings.
void enumerate_partitions(std::size_t n, std::vector<std::vector<std::uint32_t>>& out) {
    std::vector<std::uint32_t> labels(n, 0);
    const std::function<void(std::size_t, std::uint32_t)> step = [&](std::size_t i,
                                                                     std::uint32_t max_used) {
        if (i == n) {
            out.push_back(labels);
            return;
        }
        for (std::uint32_t l = 0; l <= max_used + 1; l++) {
            labels[i] = l;
            step(i + 1, std::max(max_used, l));
        }
    };
    labels[0] = 0;
    step(1, 0);
}

double pair_enumeration_rand(const std::vector<std::uint32_t>& a,
                             const std::vector<std::uint32_t>& b) {
    std::uint64_t agree = 0;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        for (std::size_t j = i + 1; j < a.size(); j++) {
            total++;
            if ((a[i] == a[j]) == (b[i] == b[j])) agree++;
        }
    }
    return static_cast<double>(agree) / static_cast<double>(total);
}

long double reference_entropy_bits(const std::vector<std::size_t>& counts) {
    long double total = 0.0L;
    for (std::size_t c : counts) total += static_cast<long double>(c);
    long double h = 0.0L;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
        if (*it == 0) continue;
        const long double p = static_cast<long double>(*it) / total;
        h -= p * std::log2(p);
    }
    return h;
}

Outcome criterion_metric_oracles() {
    Outcome out;

    std::size_t pairs_checked = 0;
    for (std::size_t n = 2; n <= 6; n++) {
        std::vector<std::vector<std::uint32_t>> partitions;
        enumerate_partitions(n, partitions);
        for (const auto& a : partitions) {
            for (const auto& b : partitions) {
                pairs_checked++;
                const double fast = rand_index(a, b);
                const double slow = pair_enumeration_rand(a, b);
                if (fast != slow) {
                    out.require(false, "rand mismatch at n=" + std::to_string(n) + " (" +
                                           fmt(fast, 17) + " vs " + fmt(slow, 17) + ")");
                    return out;
                }
            }
        }
    }

    Rng rng(20250825);
    double worst = 0.0;
    for (int round = 0; round < 2000; round++) {
        const std::size_t n_classes = 1 + rng.pick(8);
        std::vector<std::size_t> counts(n_classes);
        std::size_t total = 0;
        for (auto& c : counts) {
            c = rng.pick(50);
            total += c;
        }
        if (total == 0) counts[0] = 1;
        const double got = cluster_entropy(counts);
        const double want = static_cast<double>(reference_entropy_bits(counts));
        worst = std::max(worst, std::fabs(got - want));
    }
    for (int round = 0; round < 500; round++) {
        std::vector<std::vector<std::size_t>> table(1 + rng.pick(6));
        long double weighted = 0.0L;
        long double grand = 0.0L;
        bool any = false;
        for (auto& counts : table) {
            counts.resize(1 + rng.pick(5));
            std::size_t total = 0;
            for (auto& c : counts) {
                c = rng.pick(30);
                total += c;
            }
            if (total == 0) continue;
            any = true;
            weighted += static_cast<long double>(total) * reference_entropy_bits(counts);
            grand += static_cast<long double>(total);
        }
        if (!any) {
            table[0] = {3, 1};
            weighted = 4.0L * reference_entropy_bits(table[0]);
            grand = 4.0L;
        }
        const double got = total_entropy(table);
        const double want = static_cast<double>(weighted / grand);
        worst = std::max(worst, std::fabs(got - want));
    }
    out.require(worst <= 1e-12, "entropy error " + fmt(worst, 17) + " above 1e-12");

    if (out.ok)
        out.detail = std::to_string(pairs_checked) +
                     " partition pairs exact; worst entropy error " + fmt(worst, 17);
    return out;
}

// ---------------------------------------------------------------------------
// criterion 2: tf-idf hand oracle and unit norms
// ---------------------------------------------------------------------------

Outcome criterion_tfidf_oracle() {
    Outcome out;

    // Two documents, word unigrams, no stopwords involved. With
    // idf = ln((1+N)/(1+df)) + 1: idf(cvv) = 1 (df 2), idf(dump) = idf(shop)
    // = ln(3/2) + 1. Document 1 pre-norm: (1, ln(3/2)+1, 0); normalizing
    // gives the constants below.
    const std::vector<std::string> docs = {"cvv dump", "cvv shop"};
    const TfIdfModel model = fit_vocabulary(docs, NgramSpec::parse("word:1-1"), {});
    const SparseVector v0 = transform(docs[0], model, {});
    const double w_cvv = 0.5797386715376658;
    const double w_dump = 0.8148024746671689;
    out.require(model.features == std::vector<std::string>{"cvv", "dump", "shop"},
                "vocabulary is not {cvv, dump, shop}");
    out.require(v0.entries.size() == 2, "doc 0 should have two nonzero features");
    if (v0.entries.size() == 2) {
        out.require(std::fabs(v0.entries[0].weight - w_cvv) <= 1e-9,
                    "cvv weight " + fmt(v0.entries[0].weight, 16) + " != " + fmt(w_cvv, 16));
        out.require(std::fabs(v0.entries[1].weight - w_dump) <= 1e-9,
                    "dump weight " + fmt(v0.entries[1].weight, 16) + " != " + fmt(w_dump, 16));
    }

    SynthConfig config;  // 34 x 30 = 1020 distinct titles
    config.rng_seed = 11;
    const SynthCorpus corpus = generate_corpus(config);
    const FitTransformResult fitted =
        fit_transform(corpus.product_title, NgramSpec::parse("char:3-6"));
    double worst = 0.0;
    std::size_t nonzero = 0;
    for (const SparseVector& v : fitted.vectors) {
        if (v.zero()) continue;
        nonzero++;
        worst = std::max(worst, std::fabs(std::sqrt(v.squared_norm()) - 1.0));
    }
    out.require(nonzero == corpus.product_title.size(), "synthetic titles produced zero vectors");
    out.require(worst <= 1e-9, "norm deviation " + fmt(worst, 17) + " above 1e-9");

    if (out.ok)
        out.detail = "hand weights within 1e-9; " + std::to_string(nonzero) +
                     " unit norms, worst deviation " + fmt(worst, 17);
    return out;
}

// ---------------------------------------------------------------------------
// criterion 3: k-means objective monotonicity and fixed points
// ---------------------------------------------------------------------------

Outcome criterion_kmeans_monotone() {
    Outcome out;
    Rng rng(4242);

    std::size_t checked = 0;
    for (int instance = 0; instance < 100 && out.ok; instance++) {
        const std::size_t n = 30 + rng.pick(51);
        const std::size_t dim = 20 + rng.pick(31);
        const std::size_t k = 2 + rng.pick(7);

        std::vector<SparseVector> points(n);
        for (auto& p : points) {
            const std::size_t nnz = 2 + rng.pick(6);
            std::set<std::uint32_t> indices;
            while (indices.size() < nnz)
                indices.insert(static_cast<std::uint32_t>(rng.pick(dim)));
            double sq = 0.0;
            for (std::uint32_t idx : indices) {
                const double w = 0.1 + rng.uniform01();
                p.entries.push_back({idx, w});
                sq += w * w;
            }
            const double inv = 1.0 / std::sqrt(sq);
            for (auto& e : p.entries) e.weight *= inv;
        }

        for (Distance distance : {Distance::Cosine, Distance::Euclidean}) {
            KMeansConfig config;
            config.k = k;
            config.distance = distance;
            config.init = KMeansInit::Random;
            config.rng_seed = static_cast<std::uint64_t>(instance) * 2 +
                              (distance == Distance::Cosine ? 0 : 1);
            config.max_iter = 60;

            const auto [centroids, result] = kmeans(points, dim, config);
            checked++;

            for (std::size_t i = 1; i < result.objective_history.size(); i++) {
                const double prev = result.objective_history[i - 1];
                const double cur = result.objective_history[i];
                const bool monotone = distance == Distance::Cosine ? cur >= prev - 1e-9
                                                                   : cur <= prev + 1e-9;
                out.require(monotone, "objective not monotone at instance " +
                                          std::to_string(instance) + " step " + std::to_string(i) +
                                          " (" + fmt(prev, 12) + " -> " + fmt(cur, 12) + ")");
            }

            const ClusteringResult again = assign_to_centroids(points, centroids, distance);
            out.require(again.assignment == result.assignment,
                        "assignment is not a fixed point at instance " + std::to_string(instance));
        }
    }

    if (out.ok) out.detail = std::to_string(checked) + " runs monotone with fixed-point finals";
    return out;
}

// ---------------------------------------------------------------------------
// criteria 4 and 5 share one corpus: 34 categories, ~3000 products,
// 500 labeled seeds, keyword overlap 0.15
// ---------------------------------------------------------------------------

struct BenchmarkCorpus {
    SynthCorpus corpus;
    std::vector<LabeledTitle> labeled;
};

const BenchmarkCorpus& benchmark_corpus() {
    static const BenchmarkCorpus bench = [] {
        SynthConfig config;
        config.n_categories = 34;
        config.titles_per_category = 88;  // 2992 distinct products
        config.keyword_overlap_rate = 0.15;
        config.rng_seed = 601;
        BenchmarkCorpus b;
        b.corpus = generate_corpus(config);
        b.labeled = sample_labeled_titles(b.corpus, 500, 602);
        return b;
    }();
    return bench;
}

Outcome criterion_seeded_vs_random() {
    Outcome out;
    const BenchmarkCorpus& bench = benchmark_corpus();

    GridOptions options;
    options.specs = {NgramSpec::parse("char:3-6")};
    options.distances = {Distance::Cosine};
    options.holdout_fraction = 0.2;  // 500 -> 400 train / 100 holdout
    options.rng_seed = 603;
    options.random_restarts = 10;

    const GridTable table = run_grid(bench.corpus.product_title, bench.labeled, options);
    out.require(table.n_train_titles + 100 == bench.corpus.product_title.size(),
                "holdout is not 100 titles");

    const GridCell* seeded =
        table.find(options.specs[0], Distance::Cosine, KMeansInit::Seeded);
    const GridCell* random =
        table.find(options.specs[0], Distance::Cosine, KMeansInit::Random);
    out.require(seeded != nullptr && random != nullptr, "grid is missing cells");
    if (seeded == nullptr || random == nullptr) return out;

    out.require(seeded->rand_mean >= 0.95,
                "seeded rand index " + fmt(seeded->rand_mean) + " below 0.95");
    out.require(seeded->entropy_mean <= 0.15,
                "seeded entropy " + fmt(seeded->entropy_mean) + " above 0.15");
    out.require(seeded->rand_mean > random->rand_mean,
                "seeded rand " + fmt(seeded->rand_mean) + " does not beat random mean " +
                    fmt(random->rand_mean));
    out.require(seeded->entropy_mean < random->entropy_mean,
                "seeded entropy " + fmt(seeded->entropy_mean) + " does not beat random mean " +
                    fmt(random->entropy_mean));

    if (out.ok)
        out.detail = "seeded " + fmt(seeded->rand_mean, 3) + "/" + fmt(seeded->entropy_mean, 3) +
                     " vs random " + fmt(random->rand_mean, 3) + "/" +
                     fmt(random->entropy_mean, 3) + " (rand/entropy, 10 restarts)";
    return out;
}

Outcome criterion_full_grid() {
    Outcome out;
    const BenchmarkCorpus& bench = benchmark_corpus();

    GridOptions options;  // all ten standard specs, both distances
    options.holdout_fraction = 0.2;
    options.rng_seed = 604;
    options.random_restarts = 3;

    const GridTable first = run_grid(bench.corpus.product_title, bench.labeled, options);
    out.require(first.cells.size() == options.specs.size() * 2 * 2,
                "expected " + std::to_string(options.specs.size() * 4) + " cells, got " +
                    std::to_string(first.cells.size()));

    const GridTable second = run_grid(bench.corpus.product_title, bench.labeled, options);
    out.require(second.cells.size() == first.cells.size(), "rerun produced different cell count");
    for (std::size_t i = 0; i < first.cells.size() && out.ok; i++) {
        const GridCell& a = first.cells[i];
        const GridCell& b = second.cells[i];
        const bool identical = a.spec == b.spec && a.distance == b.distance && a.init == b.init &&
                               a.rand_mean == b.rand_mean && a.rand_sd == b.rand_sd &&
                               a.entropy_mean == b.entropy_mean && a.entropy_sd == b.entropy_sd &&
                               a.runs == b.runs;
        out.require(identical, "cell " + std::to_string(i) + " differs between runs");
    }

    // the written artifacts must be byte-identical too
    const fs::path dir_a = fs::temp_directory_path() / "prodcat_accept_grid_a";
    const fs::path dir_b = fs::temp_directory_path() / "prodcat_accept_grid_b";
    write_grid_tables(first, dir_a);
    write_grid_tables(second, dir_b);
    for (const char* name : {"grid_long.csv", "table_rand.csv", "table_entropy.csv"}) {
        std::ifstream fa(dir_a / name), fb(dir_b / name);
        std::ostringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        out.require(sa.str() == sb.str() && !sa.str().empty(),
                    std::string(name) + " differs between runs");
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    if (out.ok)
        out.detail = std::to_string(first.cells.size()) +
                     " cells (10 specs x 2 distances x 2 inits) bit-identical on rerun";
    return out;
}

// ---------------------------------------------------------------------------
// criterion 6: dedup against hand fixture and the cross-listing law
// ---------------------------------------------------------------------------

Outcome criterion_dedup() {
    Outcome out;

    const auto record = [](std::string id, std::string market, std::string vendor,
                           std::string title) {
        ProductRecord r;
        r.listing_id = std::move(id);
        r.market = std::move(market);
        r.vendor = std::move(vendor);
        r.title = std::move(title);
        return r;
    };
    const std::vector<ProductRecord> records = {
        record("L1", "alpha", "v1", "CVV Fullz Pack"),
        record("L2", "bravo", "v2", "cvv fullz pack!!"),
        record("L3", "alpha", "v1", "RDP Admin Access"),
        record("L4", "charlie", "v3", "rdp  admin access"),
        record("L5", "alpha", "v2", "Unique Thing"),
    };
    const auto products = deduplicate(records);
    out.require(products.size() == 3, "expected 3 distinct products, got " +
                                          std::to_string(products.size()));
    if (products.size() == 3) {
        // the canonical title is the normalized dedup key
        out.require(products[0].canonical_title == "cvv fullz pack", "product 0 title wrong");
        out.require(products[0].listing_ids == std::vector<std::string>{"L1", "L2"},
                    "product 0 listings wrong");
        out.require(products[0].vendors == std::vector<std::string>{"v1", "v2"},
                    "product 0 vendors wrong");
        out.require(products[0].markets == std::vector<std::string>{"alpha", "bravo"},
                    "product 0 markets wrong");
        out.require(products[1].markets == std::vector<std::string>{"alpha", "charlie"},
                    "product 1 markets wrong");
        out.require(products[2].vendors == std::vector<std::string>{"v2"},
                    "product 2 vendors wrong");
    }
    const DistributionHistogram vm = vendor_market_distribution(records);
    const DistributionHistogram expect_vm = {{1, 2}, {2, 1}};  // v1,v3 in one market; v2 in two
    out.require(vm == expect_vm, "vendor/market histogram differs from hand count");
    const DistributionHistogram pv = product_vendor_distribution(products);
    const DistributionHistogram expect_pv = {{1, 1}, {2, 2}};
    out.require(pv == expect_pv, "product/vendor histogram differs from hand count");

    // cross_list_rate tuned for ~57% uniqueness: (1-r)/(1-r^17) at r=0.43
    SynthConfig config;
    config.cross_list_rate = 0.43;
    config.rng_seed = 71;
    const SynthCorpus corpus = generate_corpus(config);
    const auto synth_products = deduplicate(corpus.records);
    out.require(synth_products.size() == corpus.product_title.size(),
                "dedup found a different product count than the generator emitted");
    const double measured = static_cast<double>(synth_products.size()) /
                            static_cast<double>(corpus.records.size());
    const double expected = expected_unique_fraction(config);
    out.require(std::fabs(measured - expected) / expected <= 0.05,
                "unique fraction " + fmt(measured) + " deviates more than 5% from " +
                    fmt(expected));

    if (out.ok)
        out.detail = "hand fixture exact; unique fraction " + fmt(measured, 3) +
                     " vs expectation " + fmt(expected, 3);
    return out;
}

// ---------------------------------------------------------------------------
// criterion 7: outlier filter recall and precision
// ---------------------------------------------------------------------------

Outcome criterion_outlier_filter() {
    Outcome out;

    SynthConfig config;
    config.n_categories = 8;
    config.titles_per_category = 40;
    config.n_vendors = 40;
    config.n_markets = 6;
    config.rng_seed = 31;
    const SynthCorpus corpus = generate_corpus(config);

    const FitTransformResult fitted =
        fit_transform(corpus.product_title, NgramSpec::parse("char:3-6"));

    LabeledSeedSet groups;
    for (const LabeledTitle& s : sample_labeled_titles(corpus, 80, 32))
        groups.groups[s.label].push_back(transform(s.title, fitted.model));
    const CentroidSet centroids = seed_centroids(groups, Distance::Cosine, fitted.model.dim());

    // junk: digit-token titles; the clean corpus is purely alphabetic, so
    // these share no character n-grams with any category
    Rng rng(33);
    std::vector<SparseVector> points = fitted.vectors;
    const std::size_t n_clean = points.size();
    for (int j = 0; j < 40; j++) {
        std::string title;
        const std::size_t tokens = 2 + rng.pick(3);
        for (std::size_t t = 0; t < tokens; t++) {
            if (t > 0) title += ' ';
            const std::size_t len = 3 + rng.pick(4);
            for (std::size_t c = 0; c < len; c++)
                title += static_cast<char>('0' + rng.pick(10));
        }
        points.push_back(transform(title, fitted.model));
    }

    const OutlierSplit split = filter_outliers(points, centroids, 0.1);

    std::size_t junk_flagged = 0;
    std::size_t clean_flagged = 0;
    for (std::size_t i : split.outliers) (i >= n_clean ? junk_flagged : clean_flagged)++;
    out.require(junk_flagged == 40, "recall: only " + std::to_string(junk_flagged) +
                                        " of 40 junk titles flagged");
    out.require(clean_flagged == 0,
                std::to_string(clean_flagged) + " in-category titles wrongly flagged");
    for (std::size_t i = n_clean; i < points.size(); i++)
        out.require(split.max_similarity[i] < 0.1, "junk similarity not below 0.1");

    if (out.ok) {
        double clean_min = 1.0;
        for (std::size_t i = 0; i < n_clean; i++)
            clean_min = std::min(clean_min, split.max_similarity[i]);
        out.detail = "40/40 junk flagged, 0 false positives (clean minimum similarity " +
                     fmt(clean_min, 3) + ")";
    }
    return out;
}

// ---------------------------------------------------------------------------
// criterion 8: facet report contract
// ---------------------------------------------------------------------------

Outcome criterion_facet_contract() {
    Outcome out;

    // category "alpha": every listing in the one market m-solo, vendors vary;
    // category "beta": every listing by the one vendor v-solo, markets vary
    std::vector<ProductRecord> records;
    const auto add = [&](std::string market, std::string vendor, std::string title) {
        ProductRecord r;
        r.listing_id = "L" + std::to_string(records.size());
        r.market = std::move(market);
        r.vendor = std::move(vendor);
        r.title = std::move(title);
        records.push_back(std::move(r));
    };
    for (int i = 0; i < 5; i++) {
        const std::string t = "alpha product " + std::to_string(i);
        add("m-solo", "v" + std::to_string(i % 3 + 1), t);
        add("m-solo", "v" + std::to_string((i + 1) % 3 + 1), t);  // cross-post, same market
    }
    for (int i = 0; i < 5; i++) {
        const std::string t = "beta product " + std::to_string(i);
        add("m" + std::to_string(i % 3 + 1), "v-solo", t);
        add("m" + std::to_string((i + 1) % 3 + 1), "v-solo", t);
    }

    const auto products = deduplicate(records);
    out.require(products.size() == 10, "fixture should dedup to 10 products");

    std::vector<std::uint32_t> assignment;
    std::vector<std::size_t> point_product;
    for (std::size_t i = 0; i < products.size(); i++) {
        point_product.push_back(i);
        assignment.push_back(products[i].canonical_title.starts_with("alpha") ? 0 : 1);
    }
    const auto rows =
        facet_entropy_report(assignment, point_product, products, {"alpha", "beta"}, 2);
    out.require(rows.size() == 2, "report should have two rows");
    if (rows.size() == 2) {
        const FacetEntropyRow* alpha = rows[0].cluster_name == "alpha" ? &rows[0] : &rows[1];
        const FacetEntropyRow* beta = rows[0].cluster_name == "beta" ? &rows[0] : &rows[1];
        out.require(alpha->n_markets == 1 && alpha->market_entropy_bits == 0.0 &&
                        alpha->market_entropy_norm == 0.0,
                    "single-market category must score market entropy 0");
        out.require(alpha->vendor_entropy_bits > 0.0, "alpha vendors should be mixed");
        out.require(beta->n_vendors == 1 && beta->vendor_entropy_bits == 0.0 &&
                        beta->vendor_entropy_norm == 0.0,
                    "single-vendor category must score vendor entropy 0");
        out.require(beta->market_entropy_bits > 0.0, "beta markets should be mixed");
    }

    const fs::path dir = fs::temp_directory_path() / "prodcat_accept_report";
    fs::create_directories(dir);
    write_facet_report_csv(rows, dir / "facet_report.csv", true);
    std::ifstream in(dir / "facet_report.csv");
    std::string header;
    std::getline(in, header);
    out.require(header ==
                    "Rank,Cluster Name,No of Products,No of Markets,Market Entropy,"
                    "No of Vendors,Vendor Entropy",
                "facet report header layout differs");
    std::string line1, line2;
    std::getline(in, line1);
    std::getline(in, line2);
    out.require(line1.starts_with("1,") && line2.starts_with("2,"),
                "rows are not ranked 1..n");
    in.close();
    fs::remove_all(dir);

    if (out.ok) out.detail = "market/vendor entropies pin to 0 as constructed; layout exact";
    return out;
}

// ---------------------------------------------------------------------------

struct Criterion {
    int id;
    const char* name;
    double time_limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "metric oracles (rand index, entropy)", 10.0, criterion_metric_oracles},
        {2, "tf-idf hand oracle and unit norms", 30.0, criterion_tfidf_oracle},
        {3, "k-means monotonicity and fixed points", 60.0, criterion_kmeans_monotone},
        {4, "seeded beats random on the labeled benchmark", 300.0, criterion_seeded_vs_random},
        {5, "full grid, bit-identical reruns", 900.0, criterion_full_grid},
        {6, "dedup fixture and uniqueness law", 60.0, criterion_dedup},
        {7, "outlier filter recall and precision", 60.0, criterion_outlier_filter},
        {8, "facet report contract", 10.0, criterion_facet_contract},
    };

    bool all_ok = true;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.time_limit_seconds) {
            outcome.ok = false;
            outcome.detail += (outcome.detail.empty() ? "" : "; ");
            outcome.detail += "over the " + fmt(c.time_limit_seconds, 0) + "s budget";
        }
        all_ok = all_ok && outcome.ok;
        std::printf("%s  criterion %d: %s [%.1fs]%s%s\n", outcome.ok ? "PASS" : "FAIL", c.id,
                    c.name, seconds, outcome.detail.empty() ? "" : " -- ",
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
