#include "prodcat/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

#include "prodcat/csv.hpp"
#include "prodcat/rng.hpp"
#include "prodcat/vectorizer.hpp"

namespace prodcat {
namespace {

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string full_precision(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string init_name(KMeansInit init) { return init == KMeansInit::Seeded ? "seeded" : "random"; }

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> samples) {
    MeanSd out;
    if (samples.empty()) return out;
    for (double s : samples) out.mean += s;
    out.mean /= static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double sq = 0.0;
        for (double s : samples) sq += (s - out.mean) * (s - out.mean);
        out.sd = std::sqrt(sq / static_cast<double>(samples.size() - 1));
    }
    return out;
}

}  // namespace

const GridCell* GridTable::find(const NgramSpec& spec, Distance d, KMeansInit init) const {
    for (const GridCell& cell : cells)
        if (cell.spec == spec && cell.distance == d && cell.init == init) return &cell;
    return nullptr;
}

SeedSplit split_labeled(std::span<const LabeledTitle> labeled, double holdout_fraction,
                        std::uint64_t rng_seed) {
    if (holdout_fraction < 0.0 || holdout_fraction >= 1.0)
        throw std::invalid_argument("holdout fraction must be in [0, 1)");
    if (labeled.empty()) throw std::invalid_argument("labeled set is empty");

    // label -> indices, label order by first appearance
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < labeled.size(); i++) {
        auto [it, inserted] = by_label.try_emplace(labeled[i].label);
        if (inserted) order.push_back(labeled[i].label);
        it->second.push_back(i);
    }

    // proportional holdout quota per label (largest remainder), capped so
    // every label keeps at least one training sample
    const std::size_t target =
        static_cast<std::size_t>(std::llround(holdout_fraction * static_cast<double>(labeled.size())));
    std::vector<std::size_t> quota(order.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < order.size(); c++) {
        const std::size_t count = by_label[order[c]].size();
        const double exact = holdout_fraction * static_cast<double>(count);
        quota[c] = std::min(count - 1, static_cast<std::size_t>(exact));
        assigned += quota[c];
        remainders.push_back({exact - static_cast<double>(quota[c]), c});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    bool can_grow = true;
    while (assigned < target && can_grow) {
        can_grow = false;
        for (const auto& [frac, c] : remainders) {
            if (assigned == target) break;
            if (quota[c] + 1 < by_label[order[c]].size()) {
                quota[c]++;
                assigned++;
                can_grow = true;
            }
        }
    }

    Rng rng(rng_seed);
    std::vector<char> in_holdout(labeled.size(), 0);
    for (std::size_t c = 0; c < order.size(); c++) {
        std::vector<std::size_t>& candidates = by_label[order[c]];
        for (std::size_t i = 0; i < quota[c]; i++) {
            std::swap(candidates[i], candidates[i + rng.pick(candidates.size() - i)]);
            in_holdout[candidates[i]] = 1;
        }
    }

    SeedSplit split;
    for (std::size_t i = 0; i < labeled.size(); i++)
        (in_holdout[i] ? split.holdout : split.train).push_back(labeled[i]);
    return split;
}

GridTable run_grid(std::span<const std::string> corpus_titles, std::span<const LabeledTitle> labeled,
                   const GridOptions& options) {
    if (corpus_titles.empty()) throw std::invalid_argument("corpus is empty");
    const SeedSplit split = split_labeled(labeled, options.holdout_fraction, options.rng_seed);
    if (split.holdout.size() < 2)
        throw std::invalid_argument("holdout too small to score; raise the holdout fraction");

    // corpus minus the holdout titles = clustering input
    std::unordered_set<std::string> holdout_titles;
    for (const LabeledTitle& h : split.holdout) holdout_titles.insert(h.title);
    std::vector<std::string> train_titles;
    train_titles.reserve(corpus_titles.size());
    for (const std::string& title : corpus_titles)
        if (!holdout_titles.contains(title)) train_titles.push_back(title);
    if (train_titles.empty()) throw std::invalid_argument("no training titles left after the split");

    std::vector<std::string> holdout_labels;
    std::vector<std::string> holdout_docs;
    for (const LabeledTitle& h : split.holdout) {
        holdout_docs.push_back(h.title);
        holdout_labels.push_back(h.label);
    }

    std::unordered_set<std::string> label_set;
    for (const LabeledTitle& l : labeled) label_set.insert(l.label);

    GridTable table;
    table.n_labels = label_set.size();
    table.n_train_titles = train_titles.size();
    table.n_holdout_titles = holdout_docs.size();

    for (const NgramSpec& spec : options.specs) {
        const TfIdfModel model = fit_vocabulary(corpus_titles, spec, options.stopwords);
        const std::vector<SparseVector> train_vecs =
            transform_all(train_titles, model, options.stopwords);
        const std::vector<SparseVector> holdout_vecs =
            transform_all(holdout_docs, model, options.stopwords);

        LabeledSeedSet seeds;
        for (const LabeledTitle& s : split.train)
            seeds.groups[s.label].push_back(transform(s.title, model, options.stopwords));

        for (Distance distance : options.distances) {
            KMeansConfig config;
            config.k = table.n_labels;
            config.distance = distance;
            config.max_iter = options.max_iter;
            config.tol = options.tol;
            config.frozen_centroids = options.frozen_centroids;

            {
                config.init = KMeansInit::Seeded;
                const CentroidSet centroids = seed_centroids(seeds, distance, model.dim());
                const EvalReport report = holdout_evaluate(train_vecs, holdout_vecs, holdout_labels,
                                                           model.dim(), config, &centroids);
                GridCell cell;
                cell.spec = spec;
                cell.distance = distance;
                cell.init = KMeansInit::Seeded;
                cell.rand_mean = report.rand_index;
                cell.entropy_mean = report.total_entropy_bits;
                cell.runs = 1;
                table.cells.push_back(cell);
            }

            {
                config.init = KMeansInit::Random;
                std::vector<double> rand_samples;
                std::vector<double> entropy_samples;
                for (std::size_t i = 0; i < options.random_restarts; i++) {
                    config.rng_seed = options.rng_seed + i;
                    const EvalReport report = holdout_evaluate(
                        train_vecs, holdout_vecs, holdout_labels, model.dim(), config, nullptr);
                    rand_samples.push_back(report.rand_index);
                    entropy_samples.push_back(report.total_entropy_bits);
                }
                const MeanSd rand_stats = mean_sd(rand_samples);
                const MeanSd entropy_stats = mean_sd(entropy_samples);
                GridCell cell;
                cell.spec = spec;
                cell.distance = distance;
                cell.init = KMeansInit::Random;
                cell.rand_mean = rand_stats.mean;
                cell.rand_sd = rand_stats.sd;
                cell.entropy_mean = entropy_stats.mean;
                cell.entropy_sd = entropy_stats.sd;
                cell.runs = options.random_restarts;
                table.cells.push_back(cell);
            }
        }
    }
    return table;
}

void write_grid_tables(const GridTable& table, const std::filesystem::path& out_dir,
                       OutputFormat format) {
    std::filesystem::create_directories(out_dir);

    // every cell, full precision
    if (format == OutputFormat::Json) {
        nlohmann::json obj;
        obj["n_labels"] = table.n_labels;
        obj["n_train_titles"] = table.n_train_titles;
        obj["n_holdout_titles"] = table.n_holdout_titles;
        nlohmann::json cells = nlohmann::json::array();
        for (const GridCell& cell : table.cells) {
            cells.push_back({{"spec", cell.spec.to_string()},
                             {"distance", to_string(cell.distance)},
                             {"init", init_name(cell.init)},
                             {"rand_mean", cell.rand_mean},
                             {"rand_sd", cell.rand_sd},
                             {"entropy_mean", cell.entropy_mean},
                             {"entropy_sd", cell.entropy_sd},
                             {"runs", cell.runs}});
        }
        obj["cells"] = std::move(cells);
        std::ofstream out(out_dir / "grid.json");
        if (!out) throw std::runtime_error("cannot write " + (out_dir / "grid.json").string());
        out << obj.dump(1) << '\n';
        return;
    }

    {
        std::ofstream out(out_dir / "grid_long.csv");
        if (!out) throw std::runtime_error("cannot write " + (out_dir / "grid_long.csv").string());
        out << "spec,distance,init,rand_mean,rand_sd,entropy_mean,entropy_sd,runs\n";
        for (const GridCell& cell : table.cells) {
            out << csv::join({cell.spec.to_string(), to_string(cell.distance), init_name(cell.init),
                              full_precision(cell.rand_mean), full_precision(cell.rand_sd),
                              full_precision(cell.entropy_mean), full_precision(cell.entropy_sd),
                              std::to_string(cell.runs)})
                << '\n';
        }
    }

    // pivot tables: one row per distance, one column per spec, then the
    // random-init baseline under char(3,6)
    const NgramSpec char36{NgramSpec::Analyzer::Char, 3, 6};
    const NgramSpec baseline_spec =
        table.find(char36, Distance::Cosine, KMeansInit::Random) != nullptr ? char36
                                                                            : table.cells.front().spec;
    const auto write_pivot = [&](const std::filesystem::path& path, bool rand_table) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());

        std::vector<NgramSpec> specs;
        std::vector<Distance> distances;
        for (const GridCell& cell : table.cells) {
            if (std::find(specs.begin(), specs.end(), cell.spec) == specs.end())
                specs.push_back(cell.spec);
            if (std::find(distances.begin(), distances.end(), cell.distance) == distances.end())
                distances.push_back(cell.distance);
        }

        std::vector<std::string> header = {"distance"};
        for (const NgramSpec& spec : specs) header.push_back(spec.to_string());
        header.push_back("random");
        out << csv::join(header) << '\n';

        for (Distance d : distances) {
            std::vector<std::string> row = {to_string(d)};
            for (const NgramSpec& spec : specs) {
                const GridCell* cell = table.find(spec, d, KMeansInit::Seeded);
                row.push_back(cell != nullptr ? fixed3(rand_table ? cell->rand_mean : cell->entropy_mean)
                                              : "");
            }
            const GridCell* baseline = table.find(baseline_spec, d, KMeansInit::Random);
            row.push_back(baseline != nullptr
                              ? fixed3(rand_table ? baseline->rand_mean : baseline->entropy_mean)
                              : "");
            out << csv::join(row) << '\n';
        }
    };
    write_pivot(out_dir / "table_rand.csv", true);
    write_pivot(out_dir / "table_entropy.csv", false);
}

void write_facet_report_csv(const std::vector<FacetEntropyRow>& rows,
                            const std::filesystem::path& path, bool normalized) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "Rank,Cluster Name,No of Products,No of Markets,Market Entropy,No of Vendors,"
           "Vendor Entropy\n";
    for (const FacetEntropyRow& row : rows) {
        out << csv::join({std::to_string(row.rank), row.cluster_name, std::to_string(row.n_products),
                          std::to_string(row.n_markets),
                          fixed3(normalized ? row.market_entropy_norm : row.market_entropy_bits),
                          std::to_string(row.n_vendors),
                          fixed3(normalized ? row.vendor_entropy_norm : row.vendor_entropy_bits)})
            << '\n';
    }
}

void write_histogram_csv(const DistributionHistogram& hist, const std::filesystem::path& path,
                         std::string_view bucket_name, std::string_view count_name) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << csv::join({std::string(bucket_name), std::string(count_name)}) << '\n';
    for (const auto& [bucket, count] : hist)
        out << csv::join({std::to_string(bucket), std::to_string(count)}) << '\n';
}

void write_report(const std::vector<FacetEntropyRow>& rows,
                  const DistributionHistogram& vendor_market_hist,
                  const DistributionHistogram& product_vendor_hist,
                  const std::filesystem::path& out_dir, const ReportOptions& options) {
    std::filesystem::create_directories(out_dir);
    write_facet_report_csv(rows, out_dir / "facet_report.csv", options.normalized_entropy);
    write_histogram_csv(vendor_market_hist, out_dir / "vendor_market_hist.csv", "n_markets",
                        "n_vendors");
    write_histogram_csv(product_vendor_hist, out_dir / "product_vendor_hist.csv", "n_vendors",
                        "n_products");
}

}  // namespace prodcat
