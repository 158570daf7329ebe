#include <doctest.h>

#include "example_table.hpp"
#include "structshift/error.hpp"
#include "structshift/similarity.hpp"

using namespace structshift;

namespace {

AlignedPair example_pair(const std::string& compared) {
    const auto table = testdata::market_shares();
    return align(normalize(table, "I"), normalize(table, compared));
}

}  // namespace

TEST_CASE("bray_curtis") {
    CHECK(bray_curtis(example_pair("II")) == doctest::Approx(0.05).epsilon(1e-12));
    const auto same = example_pair("I");
    CHECK(bray_curtis(same) == 0.0);
    const auto disjoint = align(StructureVector({"A"}, {1.0}), StructureVector({"B"}, {1.0}));
    CHECK(bray_curtis(disjoint) == 1.0);
}

TEST_CASE("similarity_index reproduces the example column sums") {
    const std::pair<const char*, double> cases[] = {
        {"II", 0.95}, {"III", 0.94}, {"IV", 0.90}, {"V", 0.88}, {"VI", 0.84}};
    for (const auto& [pop, omega] : cases) {
        CAPTURE(pop);
        const auto r = similarity_index(example_pair(pop));
        CHECK(std::abs(r.omega_p - omega) <= 1e-9);
        CHECK(std::abs(r.omega_p + r.bray_curtis - 1.0) <= 1e-12);
        CHECK(r.transformed_similarity == r.omega_p);
        double sum = 0.0;
        for (double m : r.per_category_min) sum += m;
        CHECK(std::abs(sum - r.omega_p) <= 1e-12);
    }
}

TEST_CASE("per-category minima for I vs V") {
    const auto r = similarity_index(example_pair("V"));
    const double expected[] = {0.20, 0.20, 0.20, 0.20, 0.08};
    for (std::size_t i = 0; i < 5; ++i) CHECK(r.per_category_min[i] == doctest::Approx(expected[i]));
}

TEST_CASE("transform") {
    CHECK(transform(0.05, TransformOrder::one) == doctest::Approx(0.95).epsilon(1e-15));
    for (auto o : {TransformOrder::half, TransformOrder::one, TransformOrder::two}) {
        CHECK(transform(0.0, o) == 1.0);
        CHECK(transform(1.0, o) == 0.0);
    }
    CHECK(transform(0.19, TransformOrder::two) == doctest::Approx(0.6561).epsilon(1e-14));
    CHECK(transform(0.19, TransformOrder::half) == doctest::Approx(0.9).epsilon(1e-14));
    CHECK_THROWS_AS(transform(1.5, TransformOrder::one), UsageError);
    CHECK_THROWS_AS(transform(-0.1, TransformOrder::one), UsageError);
}

TEST_CASE("transform order is restricted to 0.5, 1 and 2") {
    CHECK(transform_order_from(0.5) == TransformOrder::half);
    CHECK(transform_order_from(1.0) == TransformOrder::one);
    CHECK(transform_order_from(2.0) == TransformOrder::two);
    CHECK_THROWS_AS(transform_order_from(3.0), UsageError);
    CHECK_THROWS_AS(transform_order_from(0.0), UsageError);
}

TEST_CASE("transform is nonincreasing in the distance") {
    for (auto o : {TransformOrder::half, TransformOrder::one, TransformOrder::two}) {
        double prev = 2.0;
        for (int i = 0; i <= 100; ++i) {
            const double v = transform(i / 100.0, o);
            CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("second-order transform on a pair") {
    const auto r = similarity_index(example_pair("IV"), TransformOrder::two);
    CHECK(r.transformed_similarity == doctest::Approx(0.81).epsilon(1e-12));
    CHECK(r.transform_order == TransformOrder::two);
}
