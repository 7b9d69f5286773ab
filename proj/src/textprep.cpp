#include "prodcat/textprep.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "prodcat/stemmer.hpp"

namespace prodcat {
namespace {

// --- minimal UTF-8 handling ------------------------------------------------

constexpr char32_t kInvalid = 0xFFFD;

// Decodes one codepoint starting at i; advances i past it. Malformed bytes
// decode to U+FFFD (which classifies as non-alphanumeric).
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t at) { return static_cast<unsigned char>(s[at]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        i += 1;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        i += 1;
        return kInvalid;
    }
    if (i + static_cast<std::size_t>(len) > s.size()) {
        i += 1;
        return kInvalid;
    }
    for (int n = 1; n < len; n++) {
        const unsigned char bn = byte(i + static_cast<std::size_t>(n));
        if ((bn & 0xC0) != 0x80) {
            i += 1;
            return kInvalid;
        }
        cp = (cp << 6) | (bn & 0x3F);
    }
    i += static_cast<std::size_t>(len);
    return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Compatibility fold for the forms that actually show up in scraped titles:
// fullwidth ASCII and the common non-breaking / ideographic spaces.
char32_t fold_compat(char32_t cp) {
    if (cp >= 0xFF01 && cp <= 0xFF5E) return cp - 0xFEE0;  // fullwidth -> ASCII
    if (cp == 0x00A0 || cp == 0x3000) return U' ';
    return cp;
}

// Case folding for ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic.
// Other scripts pass through (most have no case).
char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
    if (cp >= 0x0100 && cp <= 0x0137) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x014A && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x0178) return 0x00FF;
    if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x0391 && cp <= 0x03AB && cp != 0x03A2) return cp + 0x20;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
    if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
    return cp;
}

// Block-level alphanumeric classification. Intentionally approximate for
// non-Latin scripts: whole letter blocks are accepted rather than exact
// Unicode categories.
bool is_alnum(char32_t cp) {
    if (cp < 0x80)
        return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
    if (cp >= 0x00C0 && cp <= 0x00FF) return cp != 0x00D7 && cp != 0x00F7;
    if (cp >= 0x0100 && cp <= 0x024F) return true;   // Latin Extended-A/B
    if (cp >= 0x0370 && cp <= 0x03FF) return true;   // Greek
    if (cp >= 0x0400 && cp <= 0x04FF) return true;   // Cyrillic
    if (cp >= 0x05D0 && cp <= 0x05EA) return true;   // Hebrew letters
    if (cp >= 0x0620 && cp <= 0x064A) return true;   // Arabic letters
    if (cp >= 0x0660 && cp <= 0x0669) return true;   // Arabic-Indic digits
    if (cp >= 0x06F0 && cp <= 0x06F9) return true;
    if (cp >= 0x0900 && cp <= 0x097F) return true;   // Devanagari
    if (cp >= 0x3041 && cp <= 0x3096) return true;   // Hiragana
    if ((cp >= 0x30A1 && cp <= 0x30FA) || cp == 0x30FC) return true;  // Katakana
    if (cp >= 0x4E00 && cp <= 0x9FFF) return true;   // CJK unified
    if (cp >= 0xAC00 && cp <= 0xD7A3) return true;   // Hangul
    return false;
}

}  // namespace

std::string normalize_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < raw.size()) {
        char32_t cp = decode_utf8(raw, i);
        cp = to_lower(fold_compat(cp));
        if (is_alnum(cp)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            encode_utf8(cp, out);
        } else {
            pending_space = true;
        }
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view normalized) {
    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (start < normalized.size()) {
        std::size_t end = normalized.find(' ', start);
        if (end == std::string_view::npos) end = normalized.size();
        if (end > start) tokens.emplace_back(normalized.substr(start, end - start));
        start = end + 1;
    }
    return tokens;
}

const std::unordered_set<std::string>& default_stopwords() {
    // English list derived from the common NLTK/Snowball set, restricted to
    // apostrophe-free forms (contractions are already split by
    // normalize_text, e.g. "don't" -> "don t").
    static const std::unordered_set<std::string> words = {
        "i",       "me",      "my",      "myself",  "we",      "our",     "ours",    "ourselves",
        "you",     "your",    "yours",   "yourself", "yourselves", "he",  "him",     "his",
        "himself", "she",     "her",     "hers",    "herself", "it",      "its",     "itself",
        "they",    "them",    "their",   "theirs",  "themselves", "what", "which",   "who",
        "whom",    "this",    "that",    "these",   "those",   "am",      "is",      "are",
        "was",     "were",    "be",      "been",    "being",   "have",    "has",     "had",
        "having",  "do",      "does",    "did",     "doing",   "a",       "an",      "the",
        "and",     "but",     "if",      "or",      "because", "as",      "until",   "while",
        "of",      "at",      "by",      "for",     "with",    "about",   "against", "between",
        "into",    "through", "during",  "before",  "after",   "above",   "below",   "to",
        "from",    "up",      "down",    "in",      "out",     "on",      "off",     "over",
        "under",   "again",   "further", "then",    "once",    "here",    "there",   "when",
        "where",   "why",     "how",     "all",     "any",     "both",    "each",    "few",
        "more",    "most",    "other",   "some",    "such",    "no",      "nor",     "not",
        "only",    "own",     "same",    "so",      "than",    "too",     "very",    "s",
        "t",       "can",     "will",    "just",    "don",     "should",  "now",     "d",
        "ll",      "m",       "o",       "re",      "ve",      "y",       "ain",     "aren",
        "couldn",  "didn",    "doesn",   "hadn",    "hasn",    "haven",   "isn",     "ma",
        "mightn",  "mustn",   "needn",   "shan",    "shouldn", "wasn",    "weren",   "won",
        "wouldn"};
    return words;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopwords file: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '#') continue;
        for (const auto& token : tokenize(normalize_text(line))) words.insert(token);
    }
    return words;
}

std::vector<std::string> filter_and_stem(std::span<const std::string> tokens,
                                         const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens) {
        if (stopwords.contains(token)) continue;
        out.push_back(porter_stem(token));
    }
    return out;
}

std::vector<std::string> extract_char_ngrams(std::string_view text, const NgramSpec& spec) {
    // Codepoint offsets so grams never split a UTF-8 sequence.
    std::vector<std::size_t> offsets;
    std::size_t i = 0;
    while (i < text.size()) {
        offsets.push_back(i);
        decode_utf8(text, i);
    }
    offsets.push_back(text.size());
    const std::size_t length = offsets.size() - 1;

    std::vector<std::string> grams;
    for (int n = spec.n_min; n <= spec.n_max; n++) {
        const auto un = static_cast<std::size_t>(n);
        if (un > length) break;
        for (std::size_t start = 0; start + un <= length; start++)
            grams.emplace_back(text.substr(offsets[start], offsets[start + un] - offsets[start]));
    }
    return grams;
}

std::vector<std::string> extract_ngrams(std::span<const std::string> tokens, const NgramSpec& spec) {
    if (spec.analyzer == NgramSpec::Analyzer::Char) {
        std::string joined;
        for (std::size_t i = 0; i < tokens.size(); i++) {
            if (i > 0) joined.push_back(' ');
            joined += tokens[i];
        }
        return extract_char_ngrams(joined, spec);
    }
    std::vector<std::string> grams;
    for (int n = spec.n_min; n <= spec.n_max; n++) {
        const auto un = static_cast<std::size_t>(n);
        if (un > tokens.size()) break;
        for (std::size_t start = 0; start + un <= tokens.size(); start++) {
            std::string gram = tokens[start];
            for (std::size_t t = 1; t < un; t++) {
                gram.push_back(' ');
                gram += tokens[start + t];
            }
            grams.push_back(std::move(gram));
        }
    }
    return grams;
}

std::vector<std::string> prepare_features(std::string_view raw_title, const NgramSpec& spec,
                                          const std::unordered_set<std::string>& stopwords) {
    const auto tokens = filter_and_stem(tokenize(normalize_text(raw_title)), stopwords);
    return extract_ngrams(tokens, spec);
}

NgramSpec NgramSpec::parse(std::string_view text) {
    std::string cleaned(text);
    for (char& c : cleaned) {
        if (c == '(' || c == ':') c = ' ';
        if (c == ',' || c == '-') c = ' ';
        if (c == ')') c = ' ';
    }
    std::istringstream in(cleaned);
    std::string kind;
    int n_min = 0;
    int n_max = -1;
    in >> kind >> n_min;
    if (!(in >> n_max)) n_max = n_min;

    NgramSpec spec;
    if (kind == "word")
        spec.analyzer = Analyzer::Word;
    else if (kind == "char")
        spec.analyzer = Analyzer::Char;
    else
        throw std::invalid_argument("bad ngram spec (want e.g. char:3-6 or word:1-2): " + std::string(text));
    if (n_min < 1 || n_max < n_min)
        throw std::invalid_argument("bad ngram range in spec: " + std::string(text));
    spec.n_min = n_min;
    spec.n_max = n_max;
    return spec;
}

std::string NgramSpec::to_string() const {
    const char* kind = analyzer == Analyzer::Word ? "word" : "char";
    return std::string(kind) + "(" + std::to_string(n_min) + "," + std::to_string(n_max) + ")";
}

std::string NgramSpec::to_flag() const {
    const char* kind = analyzer == Analyzer::Word ? "word" : "char";
    return std::string(kind) + ":" + std::to_string(n_min) + "-" + std::to_string(n_max);
}

std::vector<NgramSpec> standard_ngram_specs() {
    using A = NgramSpec::Analyzer;
    return {
        {A::Word, 1, 1}, {A::Word, 1, 2}, {A::Char, 3, 4}, {A::Char, 3, 5}, {A::Char, 3, 6},
        {A::Char, 3, 7}, {A::Char, 4, 4}, {A::Char, 4, 5}, {A::Char, 4, 6}, {A::Char, 4, 7},
    };
}

}  // namespace prodcat
