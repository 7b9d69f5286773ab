#include "prodcat/csv.hpp"

#include <stdexcept>

namespace prodcat::csv {

std::vector<std::string> parse_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    std::size_t i = 0;
    bool field_was_quoted = false;

    while (i < line.size()) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    i += 2;
                    continue;
                }
                in_quotes = false;
                i++;
            } else {
                current.push_back(c);
                i++;
            }
        } else if (c == '"') {
            if (!current.empty() || field_was_quoted)
                throw std::runtime_error("stray quote in CSV field");
            in_quotes = true;
            field_was_quoted = true;
            i++;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
            field_was_quoted = false;
            i++;
        } else {
            if (field_was_quoted) throw std::runtime_error("text after closing quote in CSV field");
            current.push_back(c);
            i++;
        }
    }
    if (in_quotes) throw std::runtime_error("unterminated quoted CSV field");
    fields.push_back(std::move(current));
    return fields;
}

std::string escape(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos ||
                              (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); i++) {
        if (i > 0) out.push_back(',');
        out += escape(fields[i]);
    }
    return out;
}

}  // namespace prodcat::csv
