#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "groupcut/geo.hpp"
#include "test_support.hpp"

using namespace groupcut;
using namespace groupcut::geo;

namespace {

// New York -> Los Angeles with the half-angle formula evaluated at 50
// significant digits (mpmath), coordinates as listed in the city table.
constexpr double kNewYorkToLosAngeles = 2456.8193681594614470943544529938;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(GreatCircle, IdenticalPointsAreZero) {
  EXPECT_EQ(great_circle(40.6943, -73.9249, 40.6943, -73.9249), 0.0);
}

TEST(GreatCircle, AntipodesAreHalfCircumference) {
  const double expected = std::numbers::pi * kEarthRadiusMiles;
  EXPECT_LT(rel(great_circle(30.0, 10.0, -30.0, -170.0), expected), 1e-9);
  EXPECT_LT(rel(great_circle(90.0, 0.0, -90.0, 0.0), expected), 1e-9);
  EXPECT_NEAR(expected, 12437.6, 0.05);
}

TEST(GreatCircle, NewYorkToLosAngeles) {
  EXPECT_LT(rel(great_circle(40.6943, -73.9249, 34.1140, -118.4068), kNewYorkToLosAngeles), 1e-6);
  EXPECT_LT(rel(great_circle(34.1140, -118.4068, 40.6943, -73.9249), kNewYorkToLosAngeles), 1e-6);
}

TEST(GreatCircle, SymmetricBoundedAndMetric) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  for (int t = 0; t < 5000; ++t) {
    const double a1 = lat(rng), o1 = lon(rng), a2 = lat(rng), o2 = lon(rng), a3 = lat(rng), o3 = lon(rng);
    const double ab = great_circle(a1, o1, a2, o2);
    EXPECT_EQ(ab, great_circle(a2, o2, a1, o1));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, std::numbers::pi * kEarthRadiusMiles * (1 + 1e-12));
    const double bc = great_circle(a2, o2, a3, o3);
    const double ac = great_circle(a1, o1, a3, o3);
    EXPECT_LE(ac, ab + bc + 1e-9);
  }
}

TEST(GreatCircle, CosineFormAgreesAwayFromZero) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  int compared = 0;
  for (int t = 0; t < 10000; ++t) {
    const double a1 = lat(rng), o1 = lon(rng), a2 = lat(rng), o2 = lon(rng);
    const double h = great_circle(a1, o1, a2, o2);
    if (h <= 1.0) continue;
    ++compared;
    EXPECT_LT(rel(great_circle_arccos(a1, o1, a2, o2), h), 1e-6);
  }
  EXPECT_GT(compared, 9900);
}

TEST(LoadCities, BundledDataset) {
  const auto cities = groupcut::testing::bundled_cities();
  ASSERT_EQ(cities.size(), 100u);
  EXPECT_EQ(cities.front().name, "New York");
  EXPECT_DOUBLE_EQ(cities.front().lat, 40.6943);
  EXPECT_DOUBLE_EQ(cities.front().lon, -73.9249);
  EXPECT_EQ(cities[1].name, "Los Angeles");
  EXPECT_EQ(cities[34].name, "Milwaukee");
  EXPECT_EQ(cities[68].name, "Saint Paul");
  EXPECT_EQ(cities.back().name, "Garland");
}

TEST(LoadCities, EmptyBody) {
  std::istringstream in("name,lat,lng,population\n");
  EXPECT_TRUE(load_cities(in).empty());
}

TEST(LoadCities, LatitudeOutOfRangeNamesTheRow) {
  std::istringstream in("name,lat,lng,population\nA,10,10,5\nB,95,10,5\n");
  try {
    (void)load_cities(in);
    FAIL() << "expected a range error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("latitude"), std::string::npos) << e.what();
  }
}

TEST(LoadCities, MalformedRowsReportLine) {
  std::istringstream short_row("name,lat,lng,population\nA,10,10\n");
  EXPECT_THROW((void)load_cities(short_row), Error);
  std::istringstream bad_number("name,lat,lng,population\nA,10,x,1\n");
  try {
    (void)load_cities(bad_number);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream bad_header("city,lat,lon\n");
  EXPECT_THROW((void)load_cities(bad_header), Error);
}

TEST(LoadCities, QuotedNames) {
  std::istringstream in("name,lat,lng,population\n\"Washington, D.C.\",38.9,-77.0,700000\n");
  const auto c = load_cities(in);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].name, "Washington, D.C.");
  EXPECT_EQ(c[0].population, 700000);
}

TEST(BuildMatrix, TwoCitiesSymmetric) {
  const std::vector<CityRecord> c{{"a", 10, 20, 1}, {"b", -5, 40, 2}};
  const auto m = std::get<RealMatrix>(build_matrix(c, Unweighted{}, RoundingMode::NoRounding));
  EXPECT_EQ(m.size(), 2);
  EXPECT_EQ(m(0, 1), m(1, 0));
  EXPECT_EQ(m(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(m(0, 1), great_circle(c[0], c[1]));
}

TEST(BuildMatrix, DuplicateCoordinatesAllowed) {
  const std::vector<CityRecord> c{{"a", 10, 20, 1}, {"b", 10, 20, 2}};
  const auto m = std::get<IntMatrix>(build_matrix(c, Unweighted{}, RoundingMode::NearestInteger));
  EXPECT_EQ(m(0, 1), 0);
}

TEST(BuildMatrix, PopulationWeighting) {
  const std::vector<CityRecord> c{{"a", 40, -74, 8000000}, {"b", 34, -118, 4000000}, {"c", 41.8, -87.7, 2700000}};
  const auto prod = std::get<RealMatrix>(build_matrix(c, ProductOfPopulations{1e-12}, RoundingMode::NoRounding));
  const auto sum = std::get<RealMatrix>(build_matrix(c, SumOfPopulations{1e-6}, RoundingMode::NoRounding));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const auto& a = c[static_cast<std::size_t>(i)];
      const auto& b = c[static_cast<std::size_t>(j)];
      const double d = great_circle(a, b);
      EXPECT_DOUBLE_EQ(prod(i, j), 1e-12 * static_cast<double>(a.population) * static_cast<double>(b.population) * d);
      EXPECT_DOUBLE_EQ(sum(i, j), 1e-6 * static_cast<double>(a.population + b.population) * d);
    }
  EXPECT_THROW((void)build_matrix(c, ProductOfPopulations{0.0}, RoundingMode::NoRounding), Error);
}

TEST(BuildMatrix, BenchmarkMatrixIsRoundedMiles) {
  const auto cities = groupcut::testing::bundled_cities();
  const auto m = groupcut::testing::city_matrix(40);
  ASSERT_EQ(m.size(), 40);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) {
      const double exact = great_circle(cities[static_cast<std::size_t>(i)], cities[static_cast<std::size_t>(j)]);
      EXPECT_EQ(m(i, j), std::llround(exact));
    }
  EXPECT_EQ(m(0, 1), 2457);  // New York - Los Angeles
}

TEST(BuildMatrix, NoCitiesIsAnError) {
  EXPECT_THROW((void)build_matrix(std::vector<CityRecord>{}, Unweighted{}, RoundingMode::NoRounding), Error);
}
