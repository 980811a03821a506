#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gammadeg/oracle.hpp"

using namespace gammadeg;

TEST_CASE("sphere point reflection fixes x and negates its orthogonal complement") {
    {
        const std::vector<double> x{0, 0, 1};
        CHECK(oracle::sphere_theta(x, x) == std::vector<double>{0, 0, 1});
        const std::vector<double> q{1, 0, 0}; // orthogonal to x
        const auto img = oracle::sphere_theta(x, q);
        CHECK(img[0] == Catch::Approx(-1.0));
        CHECK(img[1] == Catch::Approx(0.0).margin(1e-12));
        CHECK(img[2] == Catch::Approx(0.0).margin(1e-12));
    }
    {
        // 45 degrees from the basepoint doubles to 90
        const double s = 1.0 / std::sqrt(2.0);
        const std::vector<double> x{s, s};
        const std::vector<double> q{1, 0};
        const auto img = oracle::sphere_theta(x, q);
        CHECK(img[0] == Catch::Approx(0.0).margin(1e-12));
        CHECK(img[1] == Catch::Approx(1.0));
    }
}

TEST_CASE("sphere map preserves the sphere") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        std::vector<double> x(n + 1), q(n + 1);
        for (auto& c : x) c = g(rng);
        for (auto& c : q) c = g(rng);
        x = oracle::normalized(x);
        q = oracle::normalized(q);
        const auto img = oracle::sphere_theta(x, q);
        CHECK(oracle::norm(img) == Catch::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("sphere map rejects off-sphere input") {
    CHECK_THROWS_AS(oracle::sphere_theta({2, 0}, {1, 0}), Error);
    CHECK_THROWS_AS(oracle::sphere_theta({1, 0}, {2, 0}), Error);
}

TEST_CASE("floating-point sphere degrees alternate 0 and 2") {
    for (int n = 2; n <= 7; ++n) {
        const int expect = (n % 2 == 0) ? 0 : 2;
        CHECK(oracle::sphere_degree(n) == expect);
        CHECK(oracle::sphere_degree(n) == 1 + ((n % 2 == 1) ? 1 : -1));
    }
}

TEST_CASE("sphere model agrees with the exact engine") {
    for (int n = 2; n <= 7; ++n)
        CHECK(static_cast<long long>(oracle::sphere_degree(n)) ==
              mapping_degree(make_sphere(n)).degree);
}

TEST_CASE("naive recomputation matches frozen values") {
    CHECK(oracle::naive_degree(make_uo(4)) == 0);
    CHECK(oracle::naive_degree(make_uo(5)) == 8);
    CHECK(oracle::naive_degree(make_ai(3)) == 2);
    CHECK(oracle::naive_degree(make_aii(3)) == 4);
    CHECK(oracle::naive_degree(make_torus(5)) == 32);
    CHECK(oracle::naive_degree(make_e6f4()) == 4);
}

TEST_CASE("naive recomputation agrees with the engine at small rank") {
    const Catalog cat = builtin_catalog();
    for (const auto& e : cat.entries) {
        if (e.rank > 6) continue;
        CHECK(oracle::naive_degree(e) == mapping_degree(e).degree);
    }
}

TEST_CASE("naive recomputation enforces its rank cap and validation") {
    CHECK_THROWS_AS(oracle::naive_degree(make_uo(13)), CapacityError);
    auto bad = make_sphere(3);
    bad.dimension = 9;
    CHECK_THROWS_AS(oracle::naive_degree(bad), DataError);
}
