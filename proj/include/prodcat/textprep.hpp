// Text normalization, tokenization, stopword filtering and n-gram
// extraction. Everything here is pure and deterministic: the stopword
// list and the stemmer are embedded so results do not depend on locale,
// ICU version or any external data file.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace prodcat {

// Feature analyzer selection. The ten configurations evaluated by the
// pipeline are word(1,1), word(1,2) and char n-gram ranges (3..4)-(3..7),
// (4..4)-(4..7).
struct NgramSpec {
    enum class Analyzer { Word, Char };

    Analyzer analyzer = Analyzer::Char;
    int n_min = 3;
    int n_max = 6;

    // Accepts "char:3-6", "word:1-2" (CLI form) and "char(3,6)" (table form).
    static NgramSpec parse(std::string_view text);

    // Table header form, e.g. "char(3,6)".
    std::string to_string() const;

    // CLI flag form, e.g. "char:3-6".
    std::string to_flag() const;

    bool operator==(const NgramSpec&) const = default;
};

// The ten standard configurations, in table column order.
std::vector<NgramSpec> standard_ngram_specs();

// Lowercases, maps every non-alphanumeric codepoint to a space, collapses
// whitespace runs and trims. UTF-8 aware: fullwidth compatibility forms are
// folded to ASCII and case folding covers Latin-1, Latin Extended-A, Greek
// and Cyrillic. Non-Latin alphanumerics are retained. Idempotent.
std::string normalize_text(std::string_view raw);

// Splits a normalized string on single spaces. Empty input -> empty list.
std::vector<std::string> tokenize(std::string_view normalized);

// Embedded English stopword list (lowercase, apostrophe-free forms only,
// since normalize_text splits contractions).
const std::unordered_set<std::string>& default_stopwords();

// One word per line; '#' comments and blank lines ignored. Words are
// normalized before insertion.
std::unordered_set<std::string> load_stopwords(const std::string& path);

// Drops stopwords, stems survivors with the embedded Porter stemmer,
// preserves order.
std::vector<std::string> filter_and_stem(std::span<const std::string> tokens,
                                         const std::unordered_set<std::string>& stopwords);

// All contiguous n-grams for every n in [n_min, n_max], with multiplicity.
// Word analyzer: windows over the token list, joined with single spaces.
// Char analyzer: substrings of the tokens re-joined with single spaces,
// so grams span word boundaries.
std::vector<std::string> extract_ngrams(std::span<const std::string> tokens, const NgramSpec& spec);

// Char-analyzer extraction over an explicit normalized string.
std::vector<std::string> extract_char_ngrams(std::string_view text, const NgramSpec& spec);

// normalize -> tokenize -> filter_and_stem -> extract_ngrams.
std::vector<std::string> prepare_features(std::string_view raw_title, const NgramSpec& spec,
                                          const std::unordered_set<std::string>& stopwords);

}  // namespace prodcat
