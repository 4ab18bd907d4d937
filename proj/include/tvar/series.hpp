#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tvar {

/// Ordered real-valued observations x_1..x_n (stored 0-based).
struct TimeSeries {
  std::vector<double> values;
  std::string source;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] std::span<const double> view() const noexcept { return values; }
  [[nodiscard]] double mean() const;
  [[nodiscard]] TimeSeries demeaned() const;
};

/// Reads one numeric value per line, with an optional non-numeric header on
/// the first line. Throws Parse (with line number) or Data (NaN/Inf).
TimeSeries read_csv(const std::string& path);
TimeSeries parse_csv(const std::string& text, const std::string& source = "<memory>");

/// Writes a single column with header "x" and 17 significant digits.
void write_csv(const TimeSeries& series, const std::string& path);
std::string format_csv(const TimeSeries& series);

}  // namespace tvar
