// N-gram TF-IDF vectorization. TF is the raw in-document count, IDF is
// smoothed as ln((1+N)/(1+df)) + 1 and every nonzero output vector is
// L2-normalized, so dot products of transformed vectors are cosine
// similarities in [0, 1].

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "prodcat/textprep.hpp"

namespace prodcat {

struct SparseVector {
    struct Entry {
        std::uint32_t index;
        double weight;
    };
    // Strictly ascending by index; no zero or non-finite weights.
    std::vector<Entry> entries;

    bool zero() const { return entries.empty(); }
    double squared_norm() const;
    double dot(const SparseVector& other) const;
};

// Cosine similarity of two vectors in the same space; 0 if either is zero.
double cosine_similarity(const SparseVector& a, const SparseVector& b);

struct TfIdfModel {
    NgramSpec spec;
    std::vector<std::string> features;  // index -> feature, lexicographic
    std::unordered_map<std::string, std::uint32_t> feature_index;
    std::vector<std::size_t> doc_freq;
    std::size_t n_docs = 0;
    std::vector<double> idf;

    std::size_t dim() const { return features.size(); }

    void save(const std::filesystem::path& path) const;
    static TfIdfModel load(const std::filesystem::path& path);
};

// Builds the vocabulary over every feature occurring in at least
// min_doc_freq documents (default 1: no cutoff). Feature indices are
// assigned in lexicographic order so the model is independent of corpus
// order. Throws std::invalid_argument on an empty document list.
TfIdfModel fit_vocabulary(std::span<const std::string> docs, const NgramSpec& spec,
                          const std::unordered_set<std::string>& stopwords = default_stopwords(),
                          std::size_t min_doc_freq = 1);

// Raw term count x idf per in-vocabulary feature, then L2-normalize.
// A document with no in-vocabulary features transforms to the zero vector
// (entries empty).
SparseVector transform(std::string_view doc, const TfIdfModel& model,
                       const std::unordered_set<std::string>& stopwords = default_stopwords());

// Parallel batch transform (OpenMP over documents); output order matches
// input order and is independent of thread count.
std::vector<SparseVector> transform_all(std::span<const std::string> docs, const TfIdfModel& model,
                                        const std::unordered_set<std::string>& stopwords = default_stopwords());

struct FitTransformResult {
    TfIdfModel model;
    std::vector<SparseVector> vectors;
};

FitTransformResult fit_transform(std::span<const std::string> docs, const NgramSpec& spec,
                                 const std::unordered_set<std::string>& stopwords = default_stopwords(),
                                 std::size_t min_doc_freq = 1);

}  // namespace prodcat
