// Porter suffix-stripping stemmer (Porter 1980), English.
// Embedded so stemming is identical on every machine.

#pragma once

#include <string>
#include <string_view>

namespace prodcat {

// Expects a lowercase token. Words shorter than three characters are
// returned unchanged, as in the reference implementation.
std::string porter_stem(std::string_view word);

}  // namespace prodcat
