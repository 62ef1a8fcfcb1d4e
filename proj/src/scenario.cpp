#include "kcover/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

#include "kcover/errors.hpp"

namespace kcover {

namespace {

constexpr std::uint32_t kSensorStream = 0;
constexpr std::uint32_t kTargetStream = 1;

std::mt19937_64 make_stream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Point2D> draw_points(std::mt19937_64 rng, std::size_t count, GridSize grid) {
  std::vector<Point2D> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = unit_draw(rng) * grid.width;
    const double y = unit_draw(rng) * grid.height;
    points.push_back({x, y});
  }
  return points;
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return buf.data();
}

bool within(Point2D p, GridSize grid) {
  return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0.0 && p.y >= 0.0 &&
         p.x <= grid.width && p.y <= grid.height;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view field, std::size_t line) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ParseError("field '" + std::string(field) + "': cannot parse '" + std::string(text) + "'",
                     line);
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) parts.push_back(s.substr(start, i - start));
  }
  return parts;
}

constexpr std::array<std::string_view, 9> kHeaderKeys = {
    "schema_version", "seed",       "grid_width",   "grid_height", "sensing_range",
    "aov_radians",    "pan_count",  "sensor_count", "target_count"};

}  // namespace

void Scenario::validate() const {
  if (!(grid.width > 0.0) || !(grid.height > 0.0) || !std::isfinite(grid.width) ||
      !std::isfinite(grid.height)) {
    throw InvalidArgument("grid dimensions must be positive and finite");
  }
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    if (!within(sensors[i], grid)) {
      throw InvalidArgument("sensor " + std::to_string(i) + " lies outside the grid");
    }
  }
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (!within(targets[t], grid)) {
      throw InvalidArgument("target " + std::to_string(t) + " lies outside the grid");
    }
  }
}

Scenario ScenarioFamily::prefix(std::size_t n, std::size_t m) const {
  if (n > master.sensors.size() || m > master.targets.size()) {
    throw InvalidArgument("prefix (" + std::to_string(n) + ", " + std::to_string(m) +
                          ") exceeds family size (" + std::to_string(master.sensors.size()) +
                          ", " + std::to_string(master.targets.size()) + ")");
  }
  Scenario s;
  s.sensors.assign(master.sensors.begin(), master.sensors.begin() + static_cast<std::ptrdiff_t>(n));
  s.targets.assign(master.targets.begin(), master.targets.begin() + static_cast<std::ptrdiff_t>(m));
  s.camera = master.camera;
  s.grid = master.grid;
  s.seed = master.seed;
  return s;
}

Scenario prefix(const ScenarioFamily& family, std::size_t n, std::size_t m) {
  return family.prefix(n, m);
}

ScenarioFamily generate(std::uint64_t seed, std::size_t n_max, std::size_t m_max,
                        const CameraModel& camera, GridSize grid) {
  if (!(grid.width > 0.0) || !(grid.height > 0.0) || !std::isfinite(grid.width) ||
      !std::isfinite(grid.height)) {
    throw InvalidArgument("grid dimensions must be positive and finite");
  }
  ScenarioFamily family;
  family.seed = seed;
  family.master.camera = camera;
  family.master.grid = grid;
  family.master.seed = seed;
  family.master.sensors = draw_points(make_stream(seed, kSensorStream), n_max, grid);
  family.master.targets = draw_points(make_stream(seed, kTargetStream), m_max, grid);
  return family;
}

void write_scenario(std::ostream& out, const Scenario& scenario) {
  out << "schema_version=" << kScenarioSchemaVersion << '\n'
      << "seed=" << scenario.seed << '\n'
      << "grid_width=" << format_double(scenario.grid.width) << '\n'
      << "grid_height=" << format_double(scenario.grid.height) << '\n'
      << "sensing_range=" << format_double(scenario.camera.sensing_range()) << '\n'
      << "aov_radians=" << format_double(scenario.camera.aov()) << '\n'
      << "pan_count=" << scenario.camera.pan_count() << '\n'
      << "sensor_count=" << scenario.sensors.size() << '\n'
      << "target_count=" << scenario.targets.size() << '\n';
  for (const auto& p : scenario.sensors) {
    out << "sensor " << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  }
  for (const auto& p : scenario.targets) {
    out << "target " << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  }
}

Scenario read_scenario(std::istream& in) {
  std::map<std::string, std::pair<std::string, std::size_t>, std::less<>> header;
  std::vector<Point2D> sensors;
  std::vector<Point2D> targets;
  std::string raw;
  std::size_t line_no = 0;
  bool in_body = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (const auto eq = line.find('='); eq != std::string_view::npos) {
      if (in_body) throw ParseError("header field after point records", line_no);
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (std::find(kHeaderKeys.begin(), kHeaderKeys.end(), key) == kHeaderKeys.end()) {
        throw ParseError("unknown header key '" + key + "'", line_no);
      }
      if (!header.emplace(key, std::make_pair(value, line_no)).second) {
        throw ParseError("duplicate header key '" + key + "'", line_no);
      }
      continue;
    }

    in_body = true;
    const auto parts = split_ws(line);
    if (parts.empty() || (parts[0] != "sensor" && parts[0] != "target")) {
      throw ParseError("expected 'sensor <x> <y>' or 'target <x> <y>', got '" +
                           std::string(line) + "'",
                       line_no);
    }
    const bool is_sensor = parts[0] == "sensor";
    if (parts.size() != 3) {
      throw ParseError("record '" + std::string(parts[0]) + "' needs exactly 2 coordinates, got " +
                           std::to_string(parts.size() - 1),
                       line_no);
    }
    if (is_sensor && !targets.empty()) {
      throw ParseError("sensor record after target records", line_no);
    }
    const Point2D p{parse_number<double>(parts[1], "x", line_no),
                    parse_number<double>(parts[2], "y", line_no)};
    (is_sensor ? sensors : targets).push_back(p);
  }

  for (const auto key : kHeaderKeys) {
    if (header.find(key) == header.end()) {
      throw ParseError("missing header key '" + std::string(key) + "'", line_no);
    }
  }
  auto field = [&](std::string_view key) -> const std::pair<std::string, std::size_t>& {
    return header.find(key)->second;
  };
  auto number = [&]<typename T>(std::string_view key, T) {
    const auto& [value, line] = field(key);
    return parse_number<T>(value, key, line);
  };

  const int version = number("schema_version", int{});
  if (version != kScenarioSchemaVersion) {
    throw ParseError("schema_version " + std::to_string(version) + " is not supported (expected " +
                         std::to_string(kScenarioSchemaVersion) + ")",
                     field("schema_version").second);
  }

  Scenario s;
  s.seed = number("seed", std::uint64_t{});
  s.grid = {number("grid_width", double{}), number("grid_height", double{})};
  try {
    s.camera = CameraModel(number("sensing_range", double{}), number("aov_radians", double{}),
                           number("pan_count", std::uint32_t{}));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("camera: ") + e.what(), field("aov_radians").second);
  }

  const auto sensor_count = number("sensor_count", std::size_t{});
  const auto target_count = number("target_count", std::size_t{});
  if (sensors.size() != sensor_count || targets.size() != target_count) {
    throw ParseError("file declares " + std::to_string(sensor_count) + " sensors and " +
                         std::to_string(target_count) + " targets but contains " +
                         std::to_string(sensors.size()) + " and " +
                         std::to_string(targets.size()) + " (truncated?)",
                     line_no);
  }
  s.sensors = std::move(sensors);
  s.targets = std::move(targets);
  s.validate();
  return s;
}

void save(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_scenario(out, scenario);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_scenario(in);
}

}  // namespace kcover
