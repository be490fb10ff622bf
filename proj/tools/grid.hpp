#pragma once

#include <string>
#include <vector>

namespace spinphase::cli {

/// Comma-separated numbers; "inf" and "-inf" are accepted.
std::vector<double> parse_list(const std::string& text);

/// "lin:a:b:n"   n points evenly spaced on [a, b]
/// "log:a:b:n"   n points geometrically spaced on [a, b] (a, b same sign);
///               for a < 0 < b the grid is sign-symmetric: n/2 points on
///               [-M, -1/M] and n/2 on [1/M, M] with M = max(|a|, |b|)
/// otherwise     a comma-separated list
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(const std::string& text);

}  // namespace spinphase::cli
