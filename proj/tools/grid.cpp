#include "grid.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinphase::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc() || ptr != end || std::isnan(value)) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& raw) {
  const double n = parse_number(raw);
  if (!(n >= 1.0) || n != std::floor(n) || n > 1e7) {
    throw std::invalid_argument("grid point count must be a positive integer: '" + raw + "'");
  }
  return static_cast<std::size_t>(n);
}

std::vector<double> geometric(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  const double la = std::log(std::abs(a));
  const double lb = std::log(std::abs(b));
  const double sign = a < 0.0 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = sign * std::exp(la + f * (lb - la));
  }
  out.front() = a;
  out.back() = b;
  return out;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) values.push_back(parse_number(part));
  return values;
}

std::vector<double> parse_grid(const std::string& text) {
  const std::vector<std::string> fields = split(text, ':');
  if (fields.size() == 1) return parse_list(text);
  if (fields.size() != 4) {
    throw std::invalid_argument("grid must look like lin:a:b:n or log:a:b:n, got '" + text + "'");
  }
  const std::string kind = trim(fields[0]);
  const double a = parse_number(fields[1]);
  const double b = parse_number(fields[2]);
  const std::size_t n = parse_count(fields[3]);
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("grid bounds must be finite");
  }

  if (kind == "lin") {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
  }
  if (kind != "log") throw std::invalid_argument("unknown grid kind '" + kind + "'");
  if (a == 0.0 || b == 0.0) throw std::invalid_argument("log grid bounds must be nonzero");
  if ((a < 0.0) == (b < 0.0)) return geometric(a, b, n);

  const double m = std::max(std::abs(a), std::abs(b));
  if (m <= 1.0) throw std::invalid_argument("symmetric log grid needs max(|a|, |b|) > 1");
  const std::size_t half = std::max<std::size_t>(1, n / 2);
  std::vector<double> out = geometric(-m, -1.0 / m, half);
  const std::vector<double> pos = geometric(1.0 / m, m, half);
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

}  // namespace spinphase::cli
