#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "weierkit/config.hpp"

namespace weierkit::cli {

/// Unparseable user input.
class MalformedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "a+bi", "a-bi", "a", "bi", "i", "-i", with optional exponents and surrounding spaces.
Complex parse_complex(const std::string& text);
double parse_real(const std::string& text);
int parse_int(const std::string& text);

/// Comma separated lists.
std::vector<Complex> parse_complex_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

} // namespace weierkit::cli
