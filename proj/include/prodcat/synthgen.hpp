// Synthetic labeled marketplace corpora. Stands in for scraped data in
// tests and demos: category-themed keyword titles, heavy-tailed vendor
// activity, geometric cross-listing, optional shared vocabulary and noise.
// Fully deterministic for a fixed seed.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prodcat/corpus.hpp"

namespace prodcat {

// The 34 default category names, in the standard report order.
const std::vector<std::string>& default_taxonomy();

struct SynthConfig {
    std::size_t n_categories = 34;
    std::size_t keywords_per_category = 8;
    std::size_t titles_per_category = 30;
    std::size_t n_vendors = 150;
    std::size_t n_markets = 17;
    double cross_list_rate = 0.3;      // probability a product is re-listed
    double keyword_overlap_rate = 0.0; // chance a title keyword comes from the shared pool
    double noise_token_rate = 0.0;     // chance of a gibberish token after each keyword
    std::uint64_t rng_seed = 1;
};

struct SynthCorpus {
    std::vector<ProductRecord> records;
    std::vector<std::string> record_category;   // aligned with records
    std::vector<std::string> product_title;     // distinct products, generation order
    std::vector<std::string> product_category;  // aligned with product_title
};

SynthCorpus generate_corpus(const SynthConfig& config);

// Expected distinct/total listing ratio under the re-listing law: a product
// gains min(G, n_markets-1) extra listings with probability r, where G is
// geometric with P(G=g) = r^(g-1)(1-r). Closed form: (1-r) / (1 - r^M).
double expected_unique_fraction(const SynthConfig& config);

// The category keyword pool the generator would use; exposed for tests.
std::vector<std::string> category_keywords(const SynthConfig& config, std::size_t category);

struct LabeledTitle {
    std::string title;
    std::string label;
};

// Proportional stratified sample of distinct products as (title, label)
// pairs, deterministic for a fixed seed.
std::vector<LabeledTitle> sample_labeled_titles(const SynthCorpus& corpus, std::size_t n,
                                                std::uint64_t rng_seed);

void write_truth_csv(const std::filesystem::path& path, const SynthCorpus& corpus);
void write_seeds_csv(const std::filesystem::path& path, const std::vector<LabeledTitle>& seeds);
std::vector<LabeledTitle> load_seeds_csv(const std::filesystem::path& path);

}  // namespace prodcat
