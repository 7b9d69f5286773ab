// Experiment drivers: the stratified train/holdout split, the evaluation
// grid over feature specs x distances x inits, and the report/table file
// writers with their exact headers.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "doctest.h"
#include "prodcat/pipeline.hpp"
#include "prodcat/synthgen.hpp"

using namespace prodcat;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::vector<LabeledTitle> toy_labels() {
    std::vector<LabeledTitle> labeled;
    const char* labels[3] = {"a", "b", "c"};
    for (int l = 0; l < 3; l++)
        for (int i = 0; i < 10; i++)
            labeled.push_back({std::string(labels[l]) + "-title-" + std::to_string(i), labels[l]});
    return labeled;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("stratified split keeps proportions and training coverage") {
    const auto labeled = toy_labels();
    const SeedSplit split = split_labeled(labeled, 0.2, 42);

    CHECK(split.holdout.size() == 6);  // 20% of 30
    CHECK(split.train.size() == 24);

    std::map<std::string, std::size_t> holdout_per_label;
    for (const auto& s : split.holdout) holdout_per_label[s.label]++;
    REQUIRE(holdout_per_label.size() == 3);
    for (const auto& [label, count] : holdout_per_label) CHECK(count == 2);

    // no title is lost or duplicated across the two sides
    std::set<std::string> all;
    for (const auto& s : split.train) CHECK(all.insert(s.title).second);
    for (const auto& s : split.holdout) CHECK(all.insert(s.title).second);
    CHECK(all.size() == labeled.size());

    // deterministic, and a different seed picks a different holdout
    const SeedSplit again = split_labeled(labeled, 0.2, 42);
    REQUIRE(again.holdout.size() == split.holdout.size());
    for (std::size_t i = 0; i < split.holdout.size(); i++)
        CHECK(again.holdout[i].title == split.holdout[i].title);
    const SeedSplit other = split_labeled(labeled, 0.2, 43);
    bool any_differ = false;
    for (std::size_t i = 0; i < split.holdout.size(); i++)
        if (other.holdout[i].title != split.holdout[i].title) any_differ = true;
    CHECK(any_differ);
}

TEST_CASE("stratified split never drains a label's training side") {
    std::vector<LabeledTitle> labeled = {
        {"t1", "rare"}, {"t2", "common"}, {"t3", "common"}, {"t4", "common"},
        {"t5", "common"}, {"t6", "common"}, {"t7", "common"}, {"t8", "common"},
        {"t9", "common"}, {"t10", "common"},
    };
    // 50% holdout would want 0.5 of the single "rare" sample; the cap keeps
    // it in training no matter the seed
    for (std::uint64_t seed = 0; seed < 10; seed++) {
        const SeedSplit split = split_labeled(labeled, 0.5, seed);
        bool rare_in_train = false;
        for (const auto& s : split.train) rare_in_train |= (s.label == "rare");
        CHECK(rare_in_train);
        CHECK(split.train.size() + split.holdout.size() == labeled.size());
    }

    CHECK_THROWS_AS(split_labeled(labeled, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(split_labeled(labeled, -0.1, 0), std::invalid_argument);
}

TEST_CASE("split preserves the original ordering within each side") {
    const auto labeled = toy_labels();
    const SeedSplit split = split_labeled(labeled, 0.3, 7);

    const auto position = [&](const std::string& title) {
        for (std::size_t i = 0; i < labeled.size(); i++)
            if (labeled[i].title == title) return i;
        FAIL("unknown title");
        return std::size_t(0);
    };
    for (std::size_t i = 1; i < split.train.size(); i++)
        CHECK(position(split.train[i - 1].title) < position(split.train[i].title));
    for (std::size_t i = 1; i < split.holdout.size(); i++)
        CHECK(position(split.holdout[i - 1].title) < position(split.holdout[i].title));
}

TEST_CASE("the grid covers every cell and repeats bit-identically") {
    SynthConfig config;
    config.n_categories = 4;
    config.titles_per_category = 18;
    config.n_vendors = 12;
    config.n_markets = 4;
    config.cross_list_rate = 0.2;
    config.rng_seed = 11;
    const SynthCorpus corpus = generate_corpus(config);
    const auto labeled = sample_labeled_titles(corpus, 40, 3);

    GridOptions options;
    options.specs = {NgramSpec::parse("char:3-4"), NgramSpec::parse("word:1-1")};
    options.distances = {Distance::Cosine, Distance::Euclidean};
    options.holdout_fraction = 0.25;
    options.rng_seed = 17;
    options.random_restarts = 3;
    options.max_iter = 30;

    const GridTable table = run_grid(corpus.product_title, labeled, options);

    CHECK(table.n_labels == 4);
    CHECK(table.n_holdout_titles == 10);
    CHECK(table.n_train_titles == corpus.product_title.size() - 10);
    REQUIRE(table.cells.size() == 2 * 2 * 2);  // specs x distances x inits

    for (const auto& spec : options.specs) {
        for (Distance d : options.distances) {
            const GridCell* seeded = table.find(spec, d, KMeansInit::Seeded);
            REQUIRE(seeded != nullptr);
            CHECK(seeded->runs == 1);
            CHECK(seeded->rand_sd == 0.0);
            CHECK(seeded->rand_mean >= 0.0);
            CHECK(seeded->rand_mean <= 1.0);
            CHECK(seeded->entropy_mean >= 0.0);

            const GridCell* random = table.find(spec, d, KMeansInit::Random);
            REQUIRE(random != nullptr);
            CHECK(random->runs == 3);
            CHECK(random->rand_sd >= 0.0);
        }
    }
    CHECK(table.find(NgramSpec::parse("char:9-9"), Distance::Cosine, KMeansInit::Seeded) ==
          nullptr);

    const GridTable rerun = run_grid(corpus.product_title, labeled, options);
    REQUIRE(rerun.cells.size() == table.cells.size());
    for (std::size_t i = 0; i < table.cells.size(); i++) {
        CHECK(rerun.cells[i].rand_mean == table.cells[i].rand_mean);
        CHECK(rerun.cells[i].rand_sd == table.cells[i].rand_sd);
        CHECK(rerun.cells[i].entropy_mean == table.cells[i].entropy_mean);
        CHECK(rerun.cells[i].entropy_sd == table.cells[i].entropy_sd);
    }
}

TEST_CASE("grid table files carry the pivot layout") {
    GridTable table;
    table.n_labels = 2;
    table.n_train_titles = 8;
    table.n_holdout_titles = 2;
    const NgramSpec char36 = NgramSpec::parse("char:3-6");
    const NgramSpec word11 = NgramSpec::parse("word:1-1");
    for (const NgramSpec& spec : {char36, word11}) {
        for (Distance d : {Distance::Cosine, Distance::Euclidean}) {
            GridCell seeded;
            seeded.spec = spec;
            seeded.distance = d;
            seeded.init = KMeansInit::Seeded;
            seeded.rand_mean = 0.9;
            seeded.entropy_mean = 0.25;
            table.cells.push_back(seeded);
            GridCell random = seeded;
            random.init = KMeansInit::Random;
            random.rand_mean = 0.5;
            random.rand_sd = 0.04;
            random.entropy_mean = 1.5;
            random.entropy_sd = 0.2;
            random.runs = 5;
            table.cells.push_back(random);
        }
    }

    TempDir dir("prodcat_grid_tables");
    write_grid_tables(table, dir.path, OutputFormat::Csv);

    const std::string rand_csv = slurp(dir.path / "table_rand.csv");
    std::istringstream lines(rand_csv);
    std::string header, row1, row2;
    REQUIRE(std::getline(lines, header));
    // spec names contain commas, so they come out CSV-quoted
    CHECK(header == "distance,\"char(3,6)\",\"word(1,1)\",random");
    REQUIRE(std::getline(lines, row1));
    REQUIRE(std::getline(lines, row2));
    CHECK(row1 == "cosine,0.900,0.900,0.500");
    CHECK(row2 == "euclidean,0.900,0.900,0.500");

    const std::string entropy_csv = slurp(dir.path / "table_entropy.csv");
    CHECK(entropy_csv.find("distance,\"char(3,6)\",\"word(1,1)\",random") != std::string::npos);
    CHECK(entropy_csv.find("cosine,0.250,0.250,1.500") != std::string::npos);

    const std::string long_csv = slurp(dir.path / "grid_long.csv");
    CHECK(long_csv.find("spec,distance,init,rand_mean,rand_sd,entropy_mean,entropy_sd,runs") !=
          std::string::npos);
    CHECK(long_csv.find("\"char(3,6)\",cosine,seeded,") != std::string::npos);
    CHECK(long_csv.find("\"word(1,1)\",euclidean,random,") != std::string::npos);

    write_grid_tables(table, dir.path, OutputFormat::Json);
    const std::string json = slurp(dir.path / "grid.json");
    CHECK(json.find("\"cells\"") != std::string::npos);
    CHECK(json.find("\"char(3,6)\"") != std::string::npos);
}

TEST_CASE("facet report csv uses the exact column layout") {
    FacetEntropyRow row;
    row.rank = 1;
    row.cluster_name = "Carding";
    row.n_products = 120;
    row.n_markets = 3;
    row.market_entropy_bits = 0.75;
    row.market_entropy_norm = 0.4732;
    row.n_vendors = 14;
    row.vendor_entropy_bits = 2.5;
    row.vendor_entropy_norm = 0.65661;

    TempDir dir("prodcat_facet_csv");
    write_facet_report_csv({row}, dir.path / "facet.csv", true);
    std::istringstream normalized(slurp(dir.path / "facet.csv"));
    std::string header, line;
    REQUIRE(std::getline(normalized, header));
    CHECK(header ==
          "Rank,Cluster Name,No of Products,No of Markets,Market Entropy,No of Vendors,"
          "Vendor Entropy");
    REQUIRE(std::getline(normalized, line));
    CHECK(line == "1,Carding,120,3,0.473,14,0.657");

    write_facet_report_csv({row}, dir.path / "facet_raw.csv", false);
    std::istringstream raw(slurp(dir.path / "facet_raw.csv"));
    REQUIRE(std::getline(raw, header));
    REQUIRE(std::getline(raw, line));
    CHECK(line == "1,Carding,120,3,0.750,14,2.500");
}

TEST_CASE("write_report emits the three report files") {
    FacetEntropyRow row;
    row.rank = 1;
    row.cluster_name = "only";
    row.n_products = 2;
    row.n_markets = 1;
    row.n_vendors = 1;

    DistributionHistogram vm = {{1, 10}, {2, 3}};
    DistributionHistogram pv = {{1, 9}, {4, 1}};

    TempDir dir("prodcat_report_dir");
    write_report({row}, vm, pv, dir.path);

    CHECK(std::filesystem::exists(dir.path / "facet_report.csv"));
    const std::string vm_csv = slurp(dir.path / "vendor_market_hist.csv");
    CHECK(vm_csv == "n_markets,n_vendors\n1,10\n2,3\n");
    const std::string pv_csv = slurp(dir.path / "product_vendor_hist.csv");
    CHECK(pv_csv == "n_vendors,n_products\n1,9\n4,1\n");
}
