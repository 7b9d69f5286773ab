#include "prodcat/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace prodcat {

double SparseVector::squared_norm() const {
    double sum = 0.0;
    for (const Entry& e : entries) sum += e.weight * e.weight;
    return sum;
}

double SparseVector::dot(const SparseVector& other) const {
    double sum = 0.0;
    auto a = entries.begin();
    auto b = other.entries.begin();
    while (a != entries.end() && b != other.entries.end()) {
        if (a->index < b->index) {
            ++a;
        } else if (b->index < a->index) {
            ++b;
        } else {
            sum += a->weight * b->weight;
            ++a;
            ++b;
        }
    }
    return sum;
}

double cosine_similarity(const SparseVector& a, const SparseVector& b) {
    const double na = a.squared_norm();
    const double nb = b.squared_norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return a.dot(b) / std::sqrt(na * nb);
}

TfIdfModel fit_vocabulary(std::span<const std::string> docs, const NgramSpec& spec,
                          const std::unordered_set<std::string>& stopwords,
                          std::size_t min_doc_freq) {
    if (docs.empty()) throw std::invalid_argument("cannot fit a vocabulary on zero documents");

    // std::map keeps features sorted, which pins the index assignment.
    std::map<std::string, std::size_t> df;
    std::unordered_set<std::string> in_doc;
    for (const std::string& doc : docs) {
        in_doc.clear();
        for (std::string& gram : prepare_features(doc, spec, stopwords))
            in_doc.insert(std::move(gram));
        for (const std::string& gram : in_doc) df[gram]++;
    }

    TfIdfModel model;
    model.spec = spec;
    model.n_docs = docs.size();
    for (auto& [feature, count] : df) {
        if (count < min_doc_freq) continue;
        model.feature_index.emplace(feature, static_cast<std::uint32_t>(model.features.size()));
        model.features.push_back(feature);
        model.doc_freq.push_back(count);
    }
    model.idf.resize(model.features.size());
    const double n = static_cast<double>(model.n_docs);
    for (std::size_t i = 0; i < model.doc_freq.size(); i++)
        model.idf[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(model.doc_freq[i]))) + 1.0;
    return model;
}

SparseVector transform(std::string_view doc, const TfIdfModel& model,
                       const std::unordered_set<std::string>& stopwords) {
    std::unordered_map<std::uint32_t, std::size_t> counts;
    for (const std::string& gram : prepare_features(doc, model.spec, stopwords)) {
        auto it = model.feature_index.find(gram);
        if (it != model.feature_index.end()) counts[it->second]++;
    }

    SparseVector v;
    v.entries.reserve(counts.size());
    for (const auto& [index, count] : counts)
        v.entries.push_back({index, static_cast<double>(count) * model.idf[index]});
    std::sort(v.entries.begin(), v.entries.end(),
              [](const auto& a, const auto& b) { return a.index < b.index; });

    const double norm = std::sqrt(v.squared_norm());
    if (norm > 0.0)
        for (auto& e : v.entries) e.weight /= norm;
    return v;
}

std::vector<SparseVector> transform_all(std::span<const std::string> docs, const TfIdfModel& model,
                                        const std::unordered_set<std::string>& stopwords) {
    std::vector<SparseVector> out(docs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(docs.size()); i++)
        out[static_cast<std::size_t>(i)] = transform(docs[static_cast<std::size_t>(i)], model, stopwords);
    return out;
}

FitTransformResult fit_transform(std::span<const std::string> docs, const NgramSpec& spec,
                                 const std::unordered_set<std::string>& stopwords,
                                 std::size_t min_doc_freq) {
    FitTransformResult result;
    result.model = fit_vocabulary(docs, spec, stopwords, min_doc_freq);
    result.vectors = transform_all(docs, result.model, stopwords);
    return result;
}

void TfIdfModel::save(const std::filesystem::path& path) const {
    nlohmann::json obj;
    obj["spec"] = spec.to_string();
    obj["n_docs"] = n_docs;
    obj["features"] = features;
    obj["doc_freq"] = doc_freq;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << obj.dump() << '\n';
}

TfIdfModel TfIdfModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path.string());
    nlohmann::json obj = nlohmann::json::parse(in);

    TfIdfModel model;
    model.spec = NgramSpec::parse(obj.at("spec").get<std::string>());
    model.n_docs = obj.at("n_docs").get<std::size_t>();
    model.features = obj.at("features").get<std::vector<std::string>>();
    model.doc_freq = obj.at("doc_freq").get<std::vector<std::size_t>>();
    if (model.doc_freq.size() != model.features.size())
        throw std::runtime_error("model file is inconsistent: doc_freq/features size mismatch");

    model.feature_index.reserve(model.features.size());
    for (std::size_t i = 0; i < model.features.size(); i++)
        model.feature_index.emplace(model.features[i], static_cast<std::uint32_t>(i));
    model.idf.resize(model.features.size());
    const double n = static_cast<double>(model.n_docs);
    for (std::size_t i = 0; i < model.doc_freq.size(); i++)
        model.idf[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(model.doc_freq[i]))) + 1.0;
    return model;
}

}  // namespace prodcat
