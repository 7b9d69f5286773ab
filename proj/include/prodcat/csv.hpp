// Minimal CSV support: RFC-4180 quoting for commas, quotes and leading or
// trailing spaces. Embedded newlines inside quoted fields are rejected so
// record-level errors can always name a line number.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace prodcat::csv {

// Splits one line into fields. Throws std::runtime_error on an unterminated
// quote or stray quote character.
std::vector<std::string> parse_line(std::string_view line);

// Quotes the field only when needed.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace prodcat::csv
