#include "prodcat/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "prodcat/csv.hpp"
#include "prodcat/textprep.hpp"

namespace prodcat {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    std::size_t start = 0;
    std::size_t end = s.size();
    while (start < end && std::isspace(static_cast<unsigned char>(s[start]))) start++;
    while (end > start && std::isspace(static_cast<unsigned char>(s[end - 1]))) end--;
    return std::string(s.substr(start, end - start));
}

bool valid_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// Field-level validation shared by both formats. Throws std::runtime_error
// with a message that does not yet carry the line number.
void validate_record(ProductRecord& r) {
    r.market = trim(r.market);
    r.vendor = trim(r.vendor);
    if (trim(r.title).empty()) throw std::runtime_error("empty title");
    if (r.market.empty()) throw std::runtime_error("empty market");
    if (r.vendor.empty()) throw std::runtime_error("empty vendor");
    if (r.price && (!(*r.price >= 0.0) || !std::isfinite(*r.price)))
        throw std::runtime_error("negative or non-finite price");
    if (r.rating && !std::isfinite(*r.rating)) throw std::runtime_error("non-finite rating");
    if (r.posted_date && !valid_iso_date(*r.posted_date))
        throw std::runtime_error("bad posted_date (want YYYY-MM-DD): " + *r.posted_date);
}

ProductRecord record_from_json(const json& obj) {
    if (!obj.is_object()) throw std::runtime_error("line is not a JSON object");
    ProductRecord r;
    const auto get_string = [&](const char* key, bool required) -> std::string {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) {
            if (required) throw std::runtime_error(std::string("missing ") + key);
            return {};
        }
        if (!it->is_string()) throw std::runtime_error(std::string(key) + " is not a string");
        return it->get<std::string>();
    };
    r.market = get_string("market", true);
    r.vendor = get_string("vendor", true);
    r.title = get_string("title", true);
    if (auto it = obj.find("listing_id"); it != obj.end() && it->is_string())
        r.listing_id = it->get<std::string>();
    if (auto it = obj.find("description"); it != obj.end() && it->is_string())
        r.description = it->get<std::string>();
    if (auto it = obj.find("price"); it != obj.end() && !it->is_null()) {
        if (!it->is_number()) throw std::runtime_error("price is not a number");
        r.price = it->get<double>();
    }
    if (auto it = obj.find("currency"); it != obj.end() && it->is_string())
        r.currency = it->get<std::string>();
    if (auto it = obj.find("rating"); it != obj.end() && !it->is_null()) {
        if (!it->is_number()) throw std::runtime_error("rating is not a number");
        r.rating = it->get<double>();
    }
    if (auto it = obj.find("posted_date"); it != obj.end() && it->is_string())
        r.posted_date = it->get<std::string>();
    return r;
}

ProductRecord record_from_csv(const std::vector<std::string>& header,
                              const std::vector<std::string>& fields) {
    if (fields.size() != header.size())
        throw std::runtime_error("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
    ProductRecord r;
    for (std::size_t i = 0; i < header.size(); i++) {
        const std::string& name = header[i];
        const std::string& value = fields[i];
        if (name == "market") {
            r.market = value;
        } else if (name == "vendor") {
            r.vendor = value;
        } else if (name == "title") {
            r.title = value;
        } else if (name == "listing_id") {
            r.listing_id = value;
        } else if (name == "description") {
            if (!value.empty()) r.description = value;
        } else if (name == "price") {
            if (!value.empty()) {
                try {
                    std::size_t pos = 0;
                    r.price = std::stod(value, &pos);
                    if (pos != value.size()) throw std::invalid_argument(value);
                } catch (const std::exception&) {
                    throw std::runtime_error("bad price: " + value);
                }
            }
        } else if (name == "currency") {
            if (!value.empty()) r.currency = value;
        } else if (name == "rating") {
            if (!value.empty()) {
                try {
                    std::size_t pos = 0;
                    r.rating = std::stod(value, &pos);
                    if (pos != value.size()) throw std::invalid_argument(value);
                } catch (const std::exception&) {
                    throw std::runtime_error("bad rating: " + value);
                }
            }
        } else if (name == "posted_date") {
            if (!value.empty()) r.posted_date = value;
        }
        // unknown columns are ignored
    }
    if (r.market.empty() && r.vendor.empty() && r.title.empty())
        throw std::runtime_error("row has none of market/vendor/title");
    return r;
}

}  // namespace

IngestFormat infer_format(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".csv") return IngestFormat::Csv;
    return IngestFormat::Jsonl;
}

IngestResult ingest_products(const std::filesystem::path& path, IngestFormat format, IngestMode mode) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path.string());

    const std::string file_tag = path.filename().string();
    IngestResult result;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;

    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (format == IngestFormat::Csv && line_no == 1) {
            header = csv::parse_line(line);
            for (auto& h : header) h = trim(h);
            const auto has = [&](const char* name) {
                return std::find(header.begin(), header.end(), name) != header.end();
            };
            if (!has("market") || !has("vendor") || !has("title"))
                throw std::runtime_error("CSV header must contain market, vendor, title");
            continue;
        }
        if (line.empty()) continue;

        try {
            ProductRecord r = format == IngestFormat::Jsonl
                                  ? record_from_json(json::parse(line))
                                  : record_from_csv(header, csv::parse_line(line));
            validate_record(r);
            if (r.listing_id.empty()) r.listing_id = file_tag + ":" + std::to_string(line_no);
            result.records.push_back(std::move(r));
        } catch (const json::exception& e) {
            const std::string msg = "malformed JSON at line " + std::to_string(line_no);
            if (mode == IngestMode::Strict) throw std::runtime_error(msg);
            result.skipped.push_back({line_no, msg});
        } catch (const std::exception& e) {
            const std::string msg = std::string(e.what()) + " at line " + std::to_string(line_no);
            if (mode == IngestMode::Strict) throw std::runtime_error(msg);
            result.skipped.push_back({line_no, msg});
        }
    }

    // duplicate explicit listing_ids violate the corpus invariant
    std::unordered_set<std::string> seen;
    for (const auto& r : result.records) {
        if (!seen.insert(r.listing_id).second)
            throw std::runtime_error("duplicate listing_id: " + r.listing_id);
    }
    return result;
}

std::vector<DistinctProduct> deduplicate(std::span<const ProductRecord> records, DedupKey key) {
    std::vector<DistinctProduct> products;
    std::unordered_map<std::string, std::size_t> by_title;

    for (std::size_t i = 0; i < records.size(); i++) {
        const ProductRecord& r = records[i];
        std::string canonical = key == DedupKey::NormalizedTitle ? normalize_text(r.title) : r.title;
        auto [it, inserted] = by_title.try_emplace(std::move(canonical), products.size());
        if (inserted) {
            products.push_back({});
            products.back().canonical_title = it->first;
        }
        DistinctProduct& p = products[it->second];
        p.listing_ids.push_back(r.listing_id);
        p.vendors.push_back(r.vendor);
        p.markets.push_back(r.market);
        p.record_indices.push_back(i);
    }

    for (auto& p : products) {
        const auto sort_unique = [](std::vector<std::string>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        sort_unique(p.listing_ids);
        sort_unique(p.vendors);
        sort_unique(p.markets);
    }
    return products;
}

CorpusSummary corpus_summary(std::span<const ProductRecord> records,
                             std::span<const DistinctProduct> products) {
    std::set<std::string> markets;
    std::set<std::string> vendors;
    for (const auto& r : records) {
        markets.insert(r.market);
        vendors.insert(r.vendor);
    }
    return {markets.size(), records.size(), products.size(), vendors.size()};
}

DistributionHistogram vendor_market_distribution(std::span<const ProductRecord> records) {
    std::unordered_map<std::string, std::set<std::string>> markets_of;
    for (const auto& r : records) markets_of[r.vendor].insert(r.market);
    DistributionHistogram hist;
    for (const auto& [vendor, markets] : markets_of) hist[markets.size()]++;
    return hist;
}

DistributionHistogram product_vendor_distribution(std::span<const DistinctProduct> products) {
    DistributionHistogram hist;
    for (const auto& p : products) hist[p.vendors.size()]++;
    return hist;
}

void write_records_jsonl(const std::filesystem::path& path, std::span<const ProductRecord> records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& r : records) {
        json obj;
        obj["listing_id"] = r.listing_id;
        obj["market"] = r.market;
        obj["vendor"] = r.vendor;
        obj["title"] = r.title;
        if (r.description) obj["description"] = *r.description;
        if (r.price) obj["price"] = *r.price;
        if (r.currency) obj["currency"] = *r.currency;
        if (r.rating) obj["rating"] = *r.rating;
        if (r.posted_date) obj["posted_date"] = *r.posted_date;
        out << obj.dump() << '\n';
    }
}

void write_products_json(const std::filesystem::path& path, std::span<const DistinctProduct> products) {
    json arr = json::array();
    for (const auto& p : products) {
        json obj;
        obj["canonical_title"] = p.canonical_title;
        obj["listing_ids"] = p.listing_ids;
        obj["vendors"] = p.vendors;
        obj["markets"] = p.markets;
        obj["record_indices"] = p.record_indices;
        arr.push_back(std::move(obj));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << arr.dump(1) << '\n';
}

std::vector<DistinctProduct> load_products_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open products file: " + path.string());
    json arr = json::parse(in);
    if (!arr.is_array()) throw std::runtime_error("products file is not a JSON array");
    std::vector<DistinctProduct> products;
    products.reserve(arr.size());
    for (const auto& obj : arr) {
        DistinctProduct p;
        p.canonical_title = obj.at("canonical_title").get<std::string>();
        p.listing_ids = obj.at("listing_ids").get<std::vector<std::string>>();
        p.vendors = obj.at("vendors").get<std::vector<std::string>>();
        p.markets = obj.at("markets").get<std::vector<std::string>>();
        if (obj.contains("record_indices"))
            p.record_indices = obj.at("record_indices").get<std::vector<std::size_t>>();
        products.push_back(std::move(p));
    }
    return products;
}

}  // namespace prodcat
