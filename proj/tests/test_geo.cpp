#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "scholnet/geo.hpp"
#include "scholnet/resolve.hpp"
#include "testutil.hpp"

using namespace scholnet;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("identical points are at distance zero") {
    GeoPoint p{28.6139, 77.2090};
    CHECK(great_circle_distance(p, p) == 0.0);
}

TEST_CASE("antipodal points are half a circumference apart") {
    double d = great_circle_distance({0.0, 0.0}, {0.0, 180.0});
    CHECK(std::abs(d - kPi * kEarthRadiusKm) < 0.1);
}

TEST_CASE("Delhi to Mumbai great-circle distances") {
    // spec-sheet coordinates (New Delhi); frozen from an independent
    // high-precision spherical oracle, R = 6371.0088
    double d1 = great_circle_distance({28.6139, 77.2090}, {19.0760, 72.8777});
    CHECK(std::abs(d1 - 1148.0964588537800) < 0.01);
    // Delhi proper; the commonly quoted ~1153 km aerial distance
    double d2 = great_circle_distance({28.7041, 77.1025}, {19.0760, 72.8777});
    CHECK(std::abs(d2 - 1153.2428841749190) < 0.01);
    CHECK(std::abs(d2 - 1153.0) < 2.0);
}

TEST_CASE("distance bins are half-open 50 km intervals") {
    CHECK(distance_bin(0.0) == 1);
    CHECK(distance_bin(49.999) == 1);
    CHECK(distance_bin(50.0) == 2);
    CHECK(distance_bin(1500.0) == 31);  // the 1500-1550 km bin
    CHECK(distance_bin(1549.999) == 31);
    CHECK(distance_bin(1550.0) == 32);
    CHECK_THROWS_AS(distance_bin(-0.001), Error);
}

TEST_CASE("bins tile the half-line without gaps or overlaps") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(0.0, 20040.0);
    for (int i = 0; i < 2000; ++i) {
        double d = dist(rng);
        int k = distance_bin(d);
        CHECK(k >= 1);
        CHECK(bin_lower_km(k) <= d);
        CHECK(d < bin_upper_km(k));
    }
    for (int k = 1; k <= 400; ++k) {
        CHECK(bin_upper_km(k) == bin_lower_km(k + 1));
        CHECK(distance_bin(bin_lower_km(k)) == k);
    }
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> lat(-90.0, 90.0);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    for (int i = 0; i < 1000; ++i) {
        GeoPoint a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)}, c{lat(rng), lon(rng)};
        CHECK(great_circle_distance(a, b) == great_circle_distance(b, a));
        CHECK(great_circle_distance(a, c) <=
              great_circle_distance(a, b) + great_circle_distance(b, c) + 1e-9);
        CHECK(distance_bin(great_circle_distance(a, a)) == 1);
    }
}

TEST_CASE("locate returns registry coordinates for domestic institutions only") {
    Registry registry = testutil::five_institution_registry();
    auto located = locate("in-tifr", registry);
    REQUIRE(located.has_value());
    CHECK(located->lat == 18.9067);

    Institution foreign;
    foreign.canonical_id = "foreign:usa";
    foreign.display_name = "usa";
    foreign.category = CategoryCode::Foreign;
    foreign.foreign_country = "usa";
    CHECK_FALSE(locate(foreign).has_value());

    Institution unlocated;
    unlocated.canonical_id = "in-nowhere";
    unlocated.display_name = "Nowhere College";
    unlocated.category = CategoryCode::SC;
    CHECK_FALSE(locate(unlocated).has_value());

    CHECK_FALSE(locate("in-unknown-id", registry).has_value());
}
