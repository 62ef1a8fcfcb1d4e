#include "kcover/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string_view>

#include "kcover/errors.hpp"

namespace kcover {

namespace {

std::string fixed6(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", v);
  return buf.data();
}

}  // namespace

std::uint64_t SolutionReport::total_coverage() const noexcept {
  return std::accumulate(coverage.capped.begin(), coverage.capped.end(), std::uint64_t{0});
}

SolutionReport report(const CoverageMatrix& matrix, const Assignment& assignment,
                      const ObjectiveSpec& spec) {
  spec.validate();
  SolutionReport r;
  r.coverage = coverage_of(matrix, assignment, spec.k);
  r.active_sensor_count = assignment.active_count();
  if (r.coverage.target_count() > 0) {
    r.fairness_index = fairness_index(r.coverage);
    r.balancing_index = balancing_index(r.coverage);
  }
  r.objective = evaluate(spec, r.coverage, r.active_sensor_count);
  r.histogram.assign(spec.k + 1, 0);
  for (const std::uint32_t xi : r.coverage.raw) ++r.histogram[std::min(xi, spec.k)];
  return r;
}

std::vector<std::pair<std::string, std::string>> to_key_values(const SolutionReport& r) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("k", std::to_string(r.coverage.k));
  kv.emplace_back("targets", std::to_string(r.coverage.target_count()));
  kv.emplace_back("active_sensors", std::to_string(r.active_sensor_count));
  kv.emplace_back("total_coverage", std::to_string(r.total_coverage()));
  kv.emplace_back("fairness_index", fixed6(r.fairness_index));
  kv.emplace_back("balancing_index", fixed6(r.balancing_index));
  kv.emplace_back("objective_value", fixed6(r.objective.value));
  kv.emplace_back("objective_sense", r.objective.sense == Sense::Maximize ? "maximize" : "minimize");
  for (std::size_t level = 0; level < r.histogram.size(); ++level) {
    const bool last = level + 1 == r.histogram.size();
    kv.emplace_back(last ? "cov_ge_" + std::to_string(level) : "cov_" + std::to_string(level),
                    std::to_string(r.histogram[level]));
  }
  return kv;
}

}  // namespace kcover

namespace kcover {

namespace {

std::uint64_t parse_index(std::string_view text, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError("expected a non-negative integer, got '" + std::string(text) + "'", line);
  return v;
}

}  // namespace

void write_assignment(std::ostream& out, const Assignment& assignment) {
  out << "schema_version=1\n" << "sensor_count=" << assignment.size() << '\n';
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out << "choice " << i << ' ';
    if (assignment[i])
      out << assignment[i]->value;
    else
      out << "off";
    out << '\n';
  }
}

Assignment read_assignment(std::istream& in) {
  std::optional<std::size_t> sensor_count;
  bool version_seen = false;
  std::vector<std::optional<Assignment::Choice>> choices;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text(raw);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    std::istringstream fields{std::string(text)};
    std::vector<std::string> parts;
    for (std::string part; fields >> part;) parts.push_back(part);
    if (parts.empty()) continue;
    if (const auto eq = parts[0].find('='); eq != std::string::npos && parts.size() == 1) {
      const std::string key = parts[0].substr(0, eq);
      const std::string value = parts[0].substr(eq + 1);
      if (key == "schema_version") {
        if (value != "1") throw ParseError("unsupported schema_version '" + value + "'", line);
        version_seen = true;
      } else if (key == "sensor_count") {
        if (sensor_count) throw ParseError("duplicate sensor_count", line);
        sensor_count = parse_index(value, line);
        choices.assign(*sensor_count, std::nullopt);
      } else {
        throw ParseError("unknown header key '" + key + "'", line);
      }
      continue;
    }
    if (parts[0] != "choice" || parts.size() != 3)
      throw ParseError("expected 'choice <sensor> <pan|off>', got '" + std::string(text) + "'", line);
    if (!version_seen || !sensor_count)
      throw ParseError("choice line before schema_version and sensor_count", line);
    const auto sensor = parse_index(parts[1], line);
    if (sensor >= *sensor_count)
      throw ParseError("sensor " + parts[1] + " out of range", line);
    if (choices[sensor]) throw ParseError("sensor " + parts[1] + " assigned twice", line);
    if (parts[2] == "off") {
      choices[sensor] = Assignment::Choice{};
    } else {
      const auto pan = parse_index(parts[2], line);
      if (pan > std::numeric_limits<std::uint32_t>::max())
        throw ParseError("pan " + parts[2] + " out of range", line);
      choices[sensor] = Assignment::Choice{PanIndex{static_cast<std::uint32_t>(pan)}};
    }
  }
  if (!version_seen || !sensor_count) throw ParseError("missing schema_version or sensor_count", line);
  Assignment result(*sensor_count);
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (!choices[i]) throw ParseError("no choice for sensor " + std::to_string(i), line);
    result.set(i, *choices[i]);
  }
  return result;
}

void save_assignment(const Assignment& assignment, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_assignment(out, assignment);
  if (!out.flush()) throw IoError("write to '" + path.string() + "' failed");
}

Assignment load_assignment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_assignment(in);
}

}  // namespace kcover
