#include <catch2/catch_amalgamated.hpp>

#include "gammadeg/cohomology.hpp"

using namespace gammadeg;

TEST_CASE("splitting rank is the all-multiplicities-even test") {
    CHECK(splitting_rank(make_sphere(7)));  // single root, mult 6
    CHECK_FALSE(splitting_rank(make_sphere(6)));
    CHECK(splitting_rank(make_torus(0)));
    CHECK(splitting_rank(make_torus(5)));
    CHECK_FALSE(splitting_rank(make_uo(5)));
    CHECK_FALSE(splitting_rank(make_ai(5)));
    CHECK(splitting_rank(make_aii(4)));
    CHECK(splitting_rank(make_e6f4()));
    CHECK(splitting_rank(make_group_su(3)));
}

TEST_CASE("freeness follows each family's rule") {
    CHECK(free_cohomology(make_sphere(3)));
    CHECK_FALSE(free_cohomology(make_sphere(4)));
    CHECK(free_cohomology(make_torus(0)));
    CHECK(free_cohomology(make_torus(6)));
    CHECK(free_cohomology(make_ai(5)));
    CHECK_FALSE(free_cohomology(make_ai(6)));
    CHECK(free_cohomology(make_uo(5)));
    CHECK_FALSE(free_cohomology(make_uo(4)));
    CHECK(free_cohomology(make_aii(3)));
    CHECK(free_cohomology(make_e6f4()));
    CHECK(free_cohomology(make_group_su(4)));
}

TEST_CASE("custom entries must state freeness explicitly") {
    SpaceDescriptor d;
    d.name = "X";
    d.family = Family::Custom;
    d.rank = 0;
    d.dimension = 0;
    d.free_rule = FreeRule::SplittingRank;
    CHECK_THROWS_AS(free_cohomology(d), DataError);
    d.free_rule = FreeRule::ExplicitTrue;
    CHECK(free_cohomology(d));
}

TEST_CASE("inner parity with positive dimension contradicts freeness") {
    auto d = make_sphere(4);
    d.free_rule = FreeRule::ExplicitTrue;
    CHECK_THROWS_AS(free_cohomology(d), DataError);
}

TEST_CASE("claimed total dimension must be 2^rho when free") {
    auto d = make_aii(3);
    REQUIRE(free_cohomology(d));
    d.total_dim = 5;
    CHECK_THROWS_AS(free_cohomology(d), DataError);
}

TEST_CASE("cohomology metadata is consistent") {
    const auto m = cohomology_meta(make_aii(4));
    CHECK(m.free);
    CHECK(m.rho == 3);
    REQUIRE(m.total_dimension.has_value());
    CHECK(*m.total_dimension == 8);
}

TEST_CASE("classification agrees over the builtin catalog") {
    const Catalog cat = builtin_catalog();
    const auto rep = verify_classification(cat);
    CHECK(rep.all_agree());
    CHECK(rep.disagree_count == 0);
    CHECK(rep.agree_count > 30);
    int excluded = 0;
    for (const auto& e : cat.entries)
        if (!e.connected_isotropy) ++excluded;
    CHECK(rep.rows.size() + excluded == cat.entries.size());
    for (const auto& row : rep.rows) CHECK(row.agrees == (row.is_gamma == row.free));
}

TEST_CASE("classification is empty-catalog safe") {
    const auto rep = verify_classification(Catalog{});
    CHECK(rep.rows.empty());
    CHECK(rep.all_agree());
}

TEST_CASE("classification surfaces corrupted data rather than agreeing by luck") {
    Catalog cat;
    cat.entries.push_back(make_sphere(5));
    cat.entries[0].system.roots[0].multiplicity = 3; // breaks dimension identity
    CHECK_THROWS_AS(verify_classification(cat), DataError);
}
