#pragma once

// Great-circle distances between cities and distance-matrix construction.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "groupcut/core.hpp"

namespace groupcut::geo {

inline constexpr double kEarthRadiusMiles = 3959.0;

struct CityRecord {
  std::string name;
  double lat = 0;  // degrees
  double lon = 0;  // degrees
  std::int64_t population = 0;
};

struct Unweighted {};
struct ProductOfPopulations {
  double scale = 1;
};
struct SumOfPopulations {
  double scale = 1;
};
using WeightingMode = std::variant<Unweighted, ProductOfPopulations, SumOfPopulations>;

enum class RoundingMode { NearestInteger, NoRounding };

[[nodiscard]] constexpr double to_radians(double degrees) noexcept {
  return degrees * (std::numbers::pi / 180.0);
}

/// Half-angle (haversine-style) form, stable for short distances.
[[nodiscard]] inline double great_circle(double lat1, double lon1, double lat2, double lon2) noexcept {
  const double p1 = to_radians(lat1);
  const double p2 = to_radians(lat2);
  const double sdp = std::sin((p1 - p2) / 2);
  const double sdt = std::sin((to_radians(lon1) - to_radians(lon2)) / 2);
  const double h = sdp * sdp + sdt * sdt * (std::cos(p1) * std::cos(p2));
  return 2 * kEarthRadiusMiles * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

[[nodiscard]] inline double great_circle(const CityRecord& a, const CityRecord& b) noexcept {
  return great_circle(a.lat, a.lon, b.lat, b.lon);
}

/// Spherical law of cosines. Loses precision for nearby points; kept as a
/// cross-check for the half-angle form.
[[nodiscard]] inline double great_circle_arccos(double lat1, double lon1, double lat2, double lon2) noexcept {
  const double p1 = to_radians(lat1);
  const double p2 = to_radians(lat2);
  const double c =
      std::cos(p1) * std::cos(p2) * std::cos(to_radians(lon1) - to_radians(lon2)) + std::sin(p1) * std::sin(p2);
  return kEarthRadiusMiles * std::acos(std::clamp(c, -1.0, 1.0));
}

inline void check_city(const CityRecord& c, const std::string& where) {
  if (c.name.empty()) throw Error(where + ": empty city name");
  if (!(c.lat >= -90.0 && c.lat <= 90.0)) throw Error(where + ": latitude out of range for " + c.name);
  if (!(c.lon >= -180.0 && c.lon <= 180.0)) throw Error(where + ": longitude out of range for " + c.name);
  if (c.population < 0) throw Error(where + ": negative population for " + c.name);
}

namespace detail {

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

}  // namespace detail

/// Reads `name,lat,lng,population` CSV. Records come back in file order.
[[nodiscard]] inline std::vector<CityRecord> load_cities(std::istream& in) {
  std::vector<CityRecord> out;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv(line);
    const std::string where = "line " + std::to_string(line_no);
    if (!header_seen) {
      if (fields != std::vector<std::string>{"name", "lat", "lng", "population"})
        throw Error(where + ": expected header 'name,lat,lng,population'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 4) throw Error(where + ": expected 4 fields, got " + std::to_string(fields.size()));
    CityRecord c;
    c.name = fields[0];
    long long pop = 0;
    if (!groupcut::detail::parse_double(fields[1], c.lat)) throw Error(where + ": bad latitude '" + fields[1] + "'");
    if (!groupcut::detail::parse_double(fields[2], c.lon)) throw Error(where + ": bad longitude '" + fields[2] + "'");
    if (!groupcut::detail::parse_int(fields[3], pop)) throw Error(where + ": bad population '" + fields[3] + "'");
    c.population = pop;
    check_city(c, where);
    out.push_back(std::move(c));
  }
  return out;
}

[[nodiscard]] inline double weight_factor(const WeightingMode& w, const CityRecord& a, const CityRecord& b) {
  return std::visit(
      [&](const auto& mode) -> double {
        using M = std::decay_t<decltype(mode)>;
        if constexpr (std::is_same_v<M, Unweighted>) {
          return 1.0;
        } else {
          if (!(mode.scale > 0)) throw Error("weighting scale must be positive");
          if constexpr (std::is_same_v<M, ProductOfPopulations>)
            return mode.scale * static_cast<double>(a.population) * static_cast<double>(b.population);
          else
            return mode.scale * (static_cast<double>(a.population) + static_cast<double>(b.population));
        }
      },
      w);
}

/// Rounded matrices are integral, unrounded ones real. Rounding is half
/// away from zero.
[[nodiscard]] inline AnyMatrix build_matrix(std::span<const CityRecord> cities, const WeightingMode& w,
                                            RoundingMode r) {
  if (cities.empty()) throw Error("build_matrix: no cities");
  const int n = static_cast<int>(cities.size());
  std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& a = cities[static_cast<std::size_t>(i)];
      const auto& b = cities[static_cast<std::size_t>(j)];
      const double v = weight_factor(w, a, b) * great_circle(a, b);
      d[static_cast<std::size_t>(i * n + j)] = v;
      d[static_cast<std::size_t>(j * n + i)] = v;
    }
  if (r == RoundingMode::NoRounding) return RealMatrix(n, std::move(d));
  std::vector<std::int64_t> rounded(d.size());
  std::transform(d.begin(), d.end(), rounded.begin(), [](double v) { return std::llround(v); });
  return IntMatrix(n, std::move(rounded));
}

}  // namespace groupcut::geo
