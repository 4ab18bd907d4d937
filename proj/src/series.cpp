#include "tvar/series.hpp"

#include "tvar/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tvar {

double TimeSeries::mean() const {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

TimeSeries TimeSeries::demeaned() const {
  TimeSeries out = *this;
  const double mu = mean();
  for (auto& v : out.values) v -= mu;
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view token, double& value) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

TimeSeries parse_csv(const std::string& text, const std::string& source) {
  TimeSeries out;
  out.source = source;
  std::string_view rest = text;
  if (rest.starts_with("\xEF\xBB\xBF")) rest.remove_prefix(3);
  std::size_t line_no = 0;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    const std::string_view raw = rest.substr(0, nl);
    rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    double value = 0.0;
    if (!parse_number(line, value)) {
      if (line_no == 1 && out.values.empty() && line.find(',') == std::string_view::npos) continue;  // header
      fail(ErrorCode::Parse, source + ":" + std::to_string(line_no) + ": cannot parse '" + std::string(line) +
                                 "' as a single numeric value");
    }
    if (!std::isfinite(value))
      fail(ErrorCode::Data, source + ":" + std::to_string(line_no) + ": non-finite value '" + std::string(line) + "'");
    out.values.push_back(value);
  }
  return out;
}

TimeSeries read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), path);
}

std::string format_csv(const TimeSeries& series) {
  std::string out = "x\n";
  char buf[64];
  for (const double v : series.values) {
    const int len = std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out.append(buf, static_cast<std::size_t>(len));
  }
  return out;
}

void write_csv(const TimeSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot write '" + path + "'");
  out << format_csv(series);
  require(static_cast<bool>(out), ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace tvar
