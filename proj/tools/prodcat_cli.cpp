// prodcat: ingest marketplace listings, deduplicate them into products,
// vectorize titles, cluster, evaluate and report. Every subcommand is a
// thin shell over the library; all heavy lifting lives in prodcat/.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "prodcat/clustering.hpp"
#include "prodcat/corpus.hpp"
#include "prodcat/csv.hpp"
#include "prodcat/evaluation.hpp"
#include "prodcat/pipeline.hpp"
#include "prodcat/synthgen.hpp"
#include "prodcat/textprep.hpp"
#include "prodcat/vectorizer.hpp"

namespace fs = std::filesystem;
using namespace prodcat;

namespace {

std::string fixed(double v, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::unordered_set<std::string> stopwords_from(const std::string& path) {
    return path.empty() ? default_stopwords() : load_stopwords(path);
}

IngestFormat format_from(const std::string& name, const fs::path& input) {
    if (name == "jsonl") return IngestFormat::Jsonl;
    if (name == "csv") return IngestFormat::Csv;
    return infer_format(input);
}

std::vector<ProductRecord> read_records(const fs::path& path) {
    return ingest_products(path, infer_format(path), IngestMode::Strict).records;
}

std::vector<std::string> product_titles(const std::vector<DistinctProduct>& products) {
    std::vector<std::string> titles;
    titles.reserve(products.size());
    for (const DistinctProduct& p : products) titles.push_back(p.canonical_title);
    return titles;
}

// assignments.csv row: a clustered product and where it landed
struct AssignmentRow {
    std::size_t product_index = 0;
    std::string title;
    std::uint32_t cluster = 0;
    std::string cluster_label;
    double score = 0.0;
};

void write_assignments_csv(const fs::path& path, const std::vector<AssignmentRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "product_index,title,cluster,cluster_label,score\n";
    for (const AssignmentRow& r : rows)
        out << csv::join({std::to_string(r.product_index), r.title, std::to_string(r.cluster),
                          r.cluster_label, fixed(r.score)})
            << '\n';
}

std::vector<AssignmentRow> load_assignments_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open assignments file: " + path.string());
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::size_t> columns;
    std::vector<AssignmentRow> rows;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        try {
            fields = csv::parse_line(line);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string(e.what()) + " at line " + std::to_string(line_no));
        }
        if (line_no == 1) {
            for (std::size_t i = 0; i < fields.size(); i++) columns[fields[i]] = i;
            for (const char* required : {"product_index", "title", "cluster", "cluster_label"})
                if (!columns.contains(required))
                    throw std::runtime_error("assignments file lacks column " + std::string(required));
            continue;
        }
        AssignmentRow r;
        try {
            r.product_index = std::stoull(fields.at(columns.at("product_index")));
            r.title = fields.at(columns.at("title"));
            r.cluster = static_cast<std::uint32_t>(std::stoul(fields.at(columns.at("cluster"))));
            r.cluster_label = fields.at(columns.at("cluster_label"));
            if (columns.contains("score")) r.score = std::stod(fields.at(columns.at("score")));
        } catch (const std::exception&) {
            throw std::runtime_error("bad assignments row at line " + std::to_string(line_no));
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw std::runtime_error("assignments file has no rows: " + path.string());
    return rows;
}

int run(int argc, char** argv) {
    CLI::App app{"malicious-market product categorization pipeline"};
    app.require_subcommand(1);

    // ---- ingest ----------------------------------------------------------
    struct {
        std::string input;
        std::string output = "records.jsonl";
        std::string format = "auto";
        bool lenient = false;
    } ingest_opt;
    auto* ingest_cmd = app.add_subcommand("ingest", "read raw listings into the canonical form");
    ingest_cmd->add_option("--input", ingest_opt.input, "JSONL or CSV listings file")->required();
    ingest_cmd->add_option("--output", ingest_opt.output, "canonical records file (JSONL)");
    ingest_cmd->add_option("--format", ingest_opt.format, "jsonl|csv|auto")
        ->check(CLI::IsMember({"jsonl", "csv", "auto"}));
    ingest_cmd->add_flag("--lenient", ingest_opt.lenient, "skip bad records instead of failing");
    ingest_cmd->callback([&] {
        const IngestResult result =
            ingest_products(ingest_opt.input, format_from(ingest_opt.format, ingest_opt.input),
                            ingest_opt.lenient ? IngestMode::Lenient : IngestMode::Strict);
        for (const IngestError& e : result.skipped)
            std::cerr << "skipped: " << e.message << "\n";
        write_records_jsonl(ingest_opt.output, result.records);
        std::cout << "ingested " << result.records.size() << " listings ("
                  << result.skipped.size() << " skipped) -> " << ingest_opt.output << "\n";
    });

    // ---- dedup -----------------------------------------------------------
    struct {
        std::string input;
        std::string output = "products.json";
        bool raw_titles = false;
    } dedup_opt;
    auto* dedup_cmd = app.add_subcommand("dedup", "collapse cross-posted listings into products");
    dedup_cmd->add_option("--input", dedup_opt.input, "canonical records (JSONL)")->required();
    dedup_cmd->add_option("--output", dedup_opt.output, "distinct products file (JSON)");
    dedup_cmd->add_flag("--raw-titles", dedup_opt.raw_titles,
                        "group on exact raw titles instead of normalized ones");
    dedup_cmd->callback([&] {
        const auto records = read_records(dedup_opt.input);
        const auto products = deduplicate(
            records, dedup_opt.raw_titles ? DedupKey::RawTitle : DedupKey::NormalizedTitle);
        write_products_json(dedup_opt.output, products);
        std::cout << records.size() << " listings -> " << products.size() << " distinct products ("
                  << fixed(100.0 * static_cast<double>(products.size()) /
                               static_cast<double>(records.size()),
                           2)
                  << "% unique) -> " << dedup_opt.output << "\n";
    });

    // ---- stats -----------------------------------------------------------
    struct {
        std::string input;
        std::string products;
        std::string out_dir = ".";
    } stats_opt;
    auto* stats_cmd = app.add_subcommand("stats", "corpus summary and distribution histograms");
    stats_cmd->add_option("--input", stats_opt.input, "canonical records (JSONL)")->required();
    stats_cmd->add_option("--products", stats_opt.products,
                          "products file (deduplicated on the fly when omitted)");
    stats_cmd->add_option("--out-dir", stats_opt.out_dir, "where the histogram CSVs go");
    stats_cmd->callback([&] {
        const auto records = read_records(stats_opt.input);
        const auto products = stats_opt.products.empty() ? deduplicate(records)
                                                         : load_products_json(stats_opt.products);
        const CorpusSummary summary = corpus_summary(records, products);

        fs::create_directories(stats_opt.out_dir);
        const fs::path dir = stats_opt.out_dir;
        nlohmann::json obj;
        obj["n_markets"] = summary.n_markets;
        obj["n_listings_total"] = summary.n_listings_total;
        obj["n_products_distinct"] = summary.n_products_distinct;
        obj["n_vendors"] = summary.n_vendors;
        std::ofstream out(dir / "summary.json");
        if (!out) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
        out << obj.dump(1) << '\n';

        write_histogram_csv(vendor_market_distribution(records), dir / "vendor_market_hist.csv",
                            "n_markets", "n_vendors");
        write_histogram_csv(product_vendor_distribution(products), dir / "product_vendor_hist.csv",
                            "n_vendors", "n_products");

        std::cout << "markets: " << summary.n_markets << "\n"
                  << "listings: " << summary.n_listings_total << "\n"
                  << "distinct products: " << summary.n_products_distinct << "\n"
                  << "vendors: " << summary.n_vendors << "\n";
    });

    // ---- vectorize -------------------------------------------------------
    struct {
        std::string products;
        std::string model = "model.json";
        std::string spec = "char:3-6";
        std::string stopwords_file;
        std::size_t min_df = 1;
    } vec_opt;
    auto* vec_cmd = app.add_subcommand("vectorize", "fit an n-gram TF-IDF model on product titles");
    vec_cmd->add_option("--products", vec_opt.products, "distinct products file (JSON)")->required();
    vec_cmd->add_option("--model", vec_opt.model, "output model file (JSON)");
    vec_cmd->add_option("--spec", vec_opt.spec, "analyzer spec, e.g. char:3-6 or word:1-2");
    vec_cmd->add_option("--stopwords-file", vec_opt.stopwords_file,
                        "custom stopword list (one word per line)");
    vec_cmd->add_option("--min-df", vec_opt.min_df, "drop features in fewer documents than this");
    vec_cmd->callback([&] {
        const auto titles = product_titles(load_products_json(vec_opt.products));
        const auto stopwords = stopwords_from(vec_opt.stopwords_file);
        const TfIdfModel model =
            fit_vocabulary(titles, NgramSpec::parse(vec_opt.spec), stopwords, vec_opt.min_df);
        model.save(vec_opt.model);
        std::cout << "fitted " << model.spec.to_string() << " on " << model.n_docs << " titles, "
                  << model.dim() << " features -> " << vec_opt.model << "\n";
    });

    // ---- cluster ---------------------------------------------------------
    struct {
        std::string products;
        std::string model;
        std::string seeds_file;
        std::string stopwords_file;
        std::string distance = "cosine";
        std::string out_dir = ".";
        std::size_t k = 34;
        std::size_t max_iter = 100;
        double tol = 1e-6;
        std::uint64_t rng_seed = 0;
        double outlier_threshold = -1.0;
        bool frozen = false;
    } cl_opt;
    auto* cl_cmd = app.add_subcommand("cluster", "K-means over vectorized product titles");
    cl_cmd->add_option("--products", cl_opt.products, "distinct products file (JSON)")->required();
    cl_cmd->add_option("--model", cl_opt.model, "TF-IDF model file")->required();
    auto* seeds_opt_ptr =
        cl_cmd->add_option("--seeds-file", cl_opt.seeds_file,
                           "labeled seed titles (CSV title,label); enables seeded init");
    cl_cmd->add_option("--k", cl_opt.k, "cluster count for random init");
    cl_cmd->add_option("--distance", cl_opt.distance, "cosine|euclidean")
        ->check(CLI::IsMember({"cosine", "euclidean"}));
    cl_cmd->add_option("--max-iter", cl_opt.max_iter, "Lloyd iteration cap");
    cl_cmd->add_option("--tol", cl_opt.tol, "centroid movement convergence threshold");
    cl_cmd->add_option("--rng-seed", cl_opt.rng_seed, "seed for random init");
    cl_cmd->add_option("--outlier-threshold", cl_opt.outlier_threshold,
                       "drop points whose max centroid cosine is below this (needs --seeds-file)")
        ->needs(seeds_opt_ptr);
    cl_cmd->add_flag("--frozen-centroids", cl_opt.frozen,
                     "assign to the seed centroids without updating them");
    cl_cmd->add_option("--stopwords-file", cl_opt.stopwords_file, "custom stopword list");
    cl_cmd->add_option("--out-dir", cl_opt.out_dir,
                       "where assignments, centroids, outliers and run metadata go");
    cl_cmd->callback([&] {
        const auto products = load_products_json(cl_opt.products);
        const auto titles = product_titles(products);
        const TfIdfModel model = TfIdfModel::load(cl_opt.model);
        const auto stopwords = stopwords_from(cl_opt.stopwords_file);
        const std::vector<SparseVector> vectors = transform_all(titles, model, stopwords);

        KMeansConfig config;
        config.distance = parse_distance(cl_opt.distance);
        config.max_iter = cl_opt.max_iter;
        config.tol = cl_opt.tol;
        config.rng_seed = cl_opt.rng_seed;
        config.frozen_centroids = cl_opt.frozen;

        fs::create_directories(cl_opt.out_dir);
        const fs::path dir = cl_opt.out_dir;

        std::optional<CentroidSet> seeds;
        if (!cl_opt.seeds_file.empty()) {
            LabeledSeedSet groups;
            for (const LabeledTitle& s : load_seeds_csv(cl_opt.seeds_file))
                groups.groups[s.label].push_back(transform(s.title, model, stopwords));
            seeds = seed_centroids(groups, config.distance, model.dim());
            config.init = KMeansInit::Seeded;
            config.k = seeds->k();
        } else {
            config.init = KMeansInit::Random;
            config.k = cl_opt.k;
        }

        // optional low-similarity filter against the seed centroids
        std::vector<std::size_t> kept(vectors.size());
        std::vector<SparseVector> points = vectors;
        std::size_t n_outliers = 0;
        for (std::size_t i = 0; i < kept.size(); i++) kept[i] = i;
        if (cl_opt.outlier_threshold >= 0.0) {
            const OutlierSplit split = filter_outliers(vectors, *seeds, cl_opt.outlier_threshold);
            n_outliers = split.outliers.size();
            std::ofstream out(dir / "outliers.csv");
            if (!out) throw std::runtime_error("cannot write " + (dir / "outliers.csv").string());
            out << "product_index,title,max_similarity\n";
            for (std::size_t i : split.outliers)
                out << csv::join({std::to_string(i), titles[i], fixed(split.max_similarity[i])})
                    << '\n';
            kept = split.kept;
            points.clear();
            for (std::size_t i : kept) points.push_back(vectors[i]);
            if (points.empty()) throw std::runtime_error("outlier filter removed every point");
        }

        auto [centroids, result] =
            kmeans(points, model.dim(), config, seeds ? &*seeds : nullptr);
        centroids.save(dir / "centroids.json");

        std::vector<AssignmentRow> rows;
        rows.reserve(points.size());
        for (std::size_t i = 0; i < points.size(); i++)
            rows.push_back({kept[i], titles[kept[i]], result.assignment[i],
                            centroids.label_of(result.assignment[i]), result.best_score[i]});
        write_assignments_csv(dir / "assignments.csv", rows);

        nlohmann::json obj;
        obj["k"] = centroids.k();
        obj["distance"] = to_string(config.distance);
        obj["init"] = config.init == KMeansInit::Seeded ? "seeded" : "random";
        obj["n_points"] = points.size();
        obj["n_outliers"] = n_outliers;
        obj["n_iterations"] = result.n_iterations;
        obj["converged"] = result.converged;
        obj["objective"] = result.objective;
        obj["objective_history"] = result.objective_history;
        std::ofstream out(dir / "run.json");
        if (!out) throw std::runtime_error("cannot write " + (dir / "run.json").string());
        out << obj.dump(1) << '\n';

        std::cout << "clustered " << points.size() << " products into " << centroids.k()
                  << " clusters in " << result.n_iterations << " iterations ("
                  << (result.converged ? "converged" : "iteration cap") << ", " << n_outliers
                  << " outliers) -> " << dir.string() << "\n";
    });

    // ---- evaluate --------------------------------------------------------
    struct {
        std::string assignments;
        std::string truth;
        std::string out_dir = ".";
    } eval_opt;
    auto* eval_cmd = app.add_subcommand("evaluate", "score an assignment against labeled truth");
    eval_cmd->add_option("--assignments", eval_opt.assignments, "assignments.csv from cluster")
        ->required();
    eval_cmd->add_option("--truth", eval_opt.truth, "truth CSV (title,label)")->required();
    eval_cmd->add_option("--out-dir", eval_opt.out_dir, "where eval.json goes");
    eval_cmd->callback([&] {
        const auto rows = load_assignments_csv(eval_opt.assignments);
        std::map<std::string, std::string> truth_by_title;
        for (const LabeledTitle& t : load_seeds_csv(eval_opt.truth))
            truth_by_title[normalize_text(t.title)] = t.label;

        std::vector<std::uint32_t> pred;
        std::vector<std::string> truth;
        std::uint32_t n_clusters = 0;
        std::size_t missing = 0;
        for (const AssignmentRow& r : rows) {
            auto it = truth_by_title.find(normalize_text(r.title));
            if (it == truth_by_title.end()) {
                missing++;
                continue;
            }
            pred.push_back(r.cluster);
            truth.push_back(it->second);
            n_clusters = std::max(n_clusters, r.cluster + 1);
        }
        if (pred.size() < 2)
            throw std::runtime_error("fewer than 2 assignments matched the truth file");

        const EvalReport report = evaluate_clustering(pred, truth, n_clusters);
        fs::create_directories(eval_opt.out_dir);
        const fs::path dir = eval_opt.out_dir;
        nlohmann::json obj;
        obj["rand_index"] = report.rand_index;
        obj["total_entropy_bits"] = report.total_entropy_bits;
        obj["n_points"] = report.n_points;
        obj["n_unmatched"] = missing;
        nlohmann::json per_cluster = nlohmann::json::array();
        for (std::size_t c = 0; c < report.per_cluster_entropy.size(); c++) {
            if (report.per_cluster_entropy[c] < 0.0) continue;
            per_cluster.push_back({{"cluster", c}, {"entropy_bits", report.per_cluster_entropy[c]}});
        }
        obj["per_cluster"] = std::move(per_cluster);
        std::ofstream out(dir / "eval.json");
        if (!out) throw std::runtime_error("cannot write " + (dir / "eval.json").string());
        out << obj.dump(1) << '\n';

        std::cout << "rand_index=" << fixed(report.rand_index) << " total_entropy_bits="
                  << fixed(report.total_entropy_bits) << " n=" << report.n_points
                  << " unmatched=" << missing << "\n";
    });

    // ---- grid ------------------------------------------------------------
    struct {
        std::string corpus;
        std::string labels;
        std::string out_dir = ".";
        std::string output_format = "csv";
        std::vector<std::string> specs;
        std::vector<std::string> distances;
        std::string stopwords_file;
        double holdout_frac = 0.2;
        std::uint64_t rng_seed = 0;
        std::size_t restarts = 10;
        std::size_t max_iter = 100;
        bool frozen = false;
    } grid_opt;
    auto* grid_cmd =
        app.add_subcommand("grid", "feature-spec x distance x init evaluation grid");
    grid_cmd->add_option("--corpus", grid_opt.corpus, "canonical records (JSONL)")->required();
    grid_cmd->add_option("--labels", grid_opt.labels, "labeled sample (CSV title,label)")->required();
    grid_cmd->add_option("--out-dir", grid_opt.out_dir, "where the grid tables go");
    grid_cmd->add_option("--specs", grid_opt.specs, "analyzer specs (default: the standard ten)")
        ->delimiter(',');
    grid_cmd->add_option("--distances", grid_opt.distances, "cosine,euclidean subset")
        ->delimiter(',');
    grid_cmd->add_option("--holdout-frac", grid_opt.holdout_frac, "labeled holdout fraction");
    grid_cmd->add_option("--rng-seed", grid_opt.rng_seed, "split and restart base seed");
    grid_cmd->add_option("--restarts", grid_opt.restarts, "random-init restarts per cell");
    grid_cmd->add_option("--max-iter", grid_opt.max_iter, "Lloyd iteration cap");
    grid_cmd->add_flag("--frozen-centroids", grid_opt.frozen, "skip Lloyd updates in every cell");
    grid_cmd->add_option("--stopwords-file", grid_opt.stopwords_file, "custom stopword list");
    grid_cmd->add_option("--output-format", grid_opt.output_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    grid_cmd->callback([&] {
        const auto records = read_records(grid_opt.corpus);
        const auto titles = product_titles(deduplicate(records));
        const auto labeled = load_seeds_csv(grid_opt.labels);

        GridOptions options;
        if (!grid_opt.specs.empty()) {
            options.specs.clear();
            for (const std::string& s : grid_opt.specs) options.specs.push_back(NgramSpec::parse(s));
        }
        if (!grid_opt.distances.empty()) {
            options.distances.clear();
            for (const std::string& d : grid_opt.distances)
                options.distances.push_back(parse_distance(d));
        }
        options.holdout_fraction = grid_opt.holdout_frac;
        options.rng_seed = grid_opt.rng_seed;
        options.random_restarts = grid_opt.restarts;
        options.max_iter = grid_opt.max_iter;
        options.frozen_centroids = grid_opt.frozen;
        options.stopwords = stopwords_from(grid_opt.stopwords_file);

        const GridTable table = run_grid(titles, labeled, options);
        write_grid_tables(table, grid_opt.out_dir,
                          grid_opt.output_format == "json" ? OutputFormat::Json : OutputFormat::Csv);
        std::cout << "evaluated " << table.cells.size() << " cells over " << table.n_train_titles
                  << " training titles, " << table.n_holdout_titles << " holdout -> "
                  << grid_opt.out_dir << "\n";
    });

    // ---- report ----------------------------------------------------------
    struct {
        std::string products;
        std::string assignments;
        std::string records;
        std::string out_dir = ".";
        bool raw_entropy = false;
    } rep_opt;
    auto* rep_cmd =
        app.add_subcommand("report", "ranked per-cluster market/vendor facet-entropy report");
    rep_cmd->add_option("--products", rep_opt.products, "distinct products file (JSON)")->required();
    rep_cmd->add_option("--assignments", rep_opt.assignments, "assignments.csv from cluster")
        ->required();
    rep_cmd->add_option("--records", rep_opt.records,
                        "canonical records, enables the vendor/market histogram");
    rep_cmd->add_option("--out-dir", rep_opt.out_dir, "where the report CSVs go");
    rep_cmd->add_flag("--raw-entropy", rep_opt.raw_entropy,
                      "report raw bits instead of normalized entropy");
    rep_cmd->callback([&] {
        const auto products = load_products_json(rep_opt.products);
        const auto rows_in = load_assignments_csv(rep_opt.assignments);

        std::vector<std::uint32_t> assignment;
        std::vector<std::size_t> point_product;
        std::size_t n_clusters = 0;
        std::map<std::uint32_t, std::string> names;
        for (const AssignmentRow& r : rows_in) {
            if (r.product_index >= products.size())
                throw std::runtime_error("assignment references product " +
                                         std::to_string(r.product_index) + " beyond the products file");
            assignment.push_back(r.cluster);
            point_product.push_back(r.product_index);
            n_clusters = std::max<std::size_t>(n_clusters, r.cluster + 1);
            names.emplace(r.cluster, r.cluster_label);
        }
        std::vector<std::string> cluster_names(n_clusters);
        for (std::size_t c = 0; c < n_clusters; c++) {
            auto it = names.find(static_cast<std::uint32_t>(c));
            cluster_names[c] = it != names.end() ? it->second : "cluster-" + std::to_string(c);
        }

        const auto rows =
            facet_entropy_report(assignment, point_product, products, cluster_names, n_clusters);

        DistributionHistogram vendor_market;
        if (!rep_opt.records.empty())
            vendor_market = vendor_market_distribution(read_records(rep_opt.records));
        ReportOptions options;
        options.normalized_entropy = !rep_opt.raw_entropy;
        write_report(rows, vendor_market, product_vendor_distribution(products), rep_opt.out_dir,
                     options);
        std::cout << "reported " << rows.size() << " clusters over " << assignment.size()
                  << " products -> " << rep_opt.out_dir << "\n";
    });

    // ---- synth -----------------------------------------------------------
    struct {
        std::string out_dir = ".";
        SynthConfig config;
        std::size_t sample = 0;
        std::uint64_t sample_seed = 0;
    } synth_opt;
    auto* synth_cmd = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    synth_cmd->add_option("--out-dir", synth_opt.out_dir, "where records/truth/seeds go");
    synth_cmd->add_option("--categories", synth_opt.config.n_categories, "category count");
    synth_cmd->add_option("--keywords", synth_opt.config.keywords_per_category,
                          "keywords per category");
    synth_cmd->add_option("--titles-per-category", synth_opt.config.titles_per_category,
                          "distinct products per category");
    synth_cmd->add_option("--vendors", synth_opt.config.n_vendors, "vendor count");
    synth_cmd->add_option("--markets", synth_opt.config.n_markets, "market count");
    synth_cmd->add_option("--cross-list-rate", synth_opt.config.cross_list_rate,
                          "re-listing probability in [0,1)");
    synth_cmd->add_option("--overlap-rate", synth_opt.config.keyword_overlap_rate,
                          "shared-pool keyword probability");
    synth_cmd->add_option("--noise-rate", synth_opt.config.noise_token_rate,
                          "gibberish token probability");
    synth_cmd->add_option("--rng-seed", synth_opt.config.rng_seed, "generator seed");
    synth_cmd->add_option("--sample", synth_opt.sample,
                          "also write seeds.csv with this many labeled titles");
    synth_cmd->add_option("--sample-seed", synth_opt.sample_seed, "sampling seed");
    synth_cmd->callback([&] {
        const SynthCorpus corpus = generate_corpus(synth_opt.config);
        fs::create_directories(synth_opt.out_dir);
        const fs::path dir = synth_opt.out_dir;
        write_records_jsonl(dir / "records.jsonl", corpus.records);
        write_truth_csv(dir / "truth.csv", corpus);
        if (synth_opt.sample > 0)
            write_seeds_csv(dir / "seeds.csv",
                            sample_labeled_titles(corpus, synth_opt.sample, synth_opt.sample_seed));
        std::cout << "generated " << corpus.records.size() << " listings, "
                  << corpus.product_title.size() << " distinct products ("
                  << fixed(expected_unique_fraction(synth_opt.config), 4)
                  << " expected unique fraction) -> " << dir.string() << "\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
