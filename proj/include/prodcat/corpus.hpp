// Listing ingestion, cross-post deduplication and corpus statistics.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prodcat {

// One marketplace listing as scraped: a (market, vendor, title) posting
// plus whatever metadata the source carried.
struct ProductRecord {
    std::string listing_id;
    std::string market;
    std::string vendor;
    std::string title;
    std::optional<std::string> description;
    std::optional<double> price;
    std::optional<std::string> currency;
    std::optional<double> rating;
    std::optional<std::string> posted_date;  // ISO-8601 calendar date
};

enum class IngestFormat { Jsonl, Csv };
enum class IngestMode { Strict, Lenient };

IngestFormat infer_format(const std::filesystem::path& path);

struct IngestError {
    std::size_t line = 0;
    std::string message;
};

struct IngestResult {
    std::vector<ProductRecord> records;
    std::vector<IngestError> skipped;  // populated in lenient mode only
};

// Reads one record per line, in file order. listing_id is synthesized as
// "<filename>:<line>" when the input does not carry one. Strict mode throws
// std::runtime_error on the first bad record; lenient mode skips it and
// reports it in IngestResult::skipped.
IngestResult ingest_products(const std::filesystem::path& path, IngestFormat format,
                             IngestMode mode = IngestMode::Strict);

// The equivalence class of listings sharing one canonical title.
struct DistinctProduct {
    std::string canonical_title;
    std::vector<std::string> listing_ids;      // sorted, unique
    std::vector<std::string> vendors;          // sorted, unique
    std::vector<std::string> markets;          // sorted, unique
    std::vector<std::size_t> record_indices;   // into the input records, ascending
};

enum class DedupKey { NormalizedTitle, RawTitle };

// Groups records by exact equality of the dedup key. Products are returned
// in order of first appearance, so output is deterministic for a fixed
// input file.
std::vector<DistinctProduct> deduplicate(std::span<const ProductRecord> records,
                                         DedupKey key = DedupKey::NormalizedTitle);

struct CorpusSummary {
    std::size_t n_markets = 0;
    std::size_t n_listings_total = 0;
    std::size_t n_products_distinct = 0;
    std::size_t n_vendors = 0;
};

CorpusSummary corpus_summary(std::span<const ProductRecord> records,
                             std::span<const DistinctProduct> products);

// bucket -> count, empty buckets omitted.
using DistributionHistogram = std::map<std::size_t, std::size_t>;

// Bucket = number of distinct markets a vendor appears in; count = vendors.
DistributionHistogram vendor_market_distribution(std::span<const ProductRecord> records);

// Bucket = number of distinct vendors sharing a product; count = products.
DistributionHistogram product_vendor_distribution(std::span<const DistinctProduct> products);

// Round-trips for the CLI: canonical records file and products file.
void write_records_jsonl(const std::filesystem::path& path, std::span<const ProductRecord> records);
void write_products_json(const std::filesystem::path& path, std::span<const DistinctProduct> products);
std::vector<DistinctProduct> load_products_json(const std::filesystem::path& path);

}  // namespace prodcat
