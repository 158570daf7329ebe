#include <doctest.h>

#include <cmath>

#include "example_table.hpp"
#include "structshift/change_analysis.hpp"
#include "structshift/error.hpp"
#include "structshift/similarity.hpp"

using namespace structshift;

namespace {

AlignedPair example_pair(const std::string& compared) {
    const auto table = testdata::market_shares();
    return align(normalize(table, "I"), normalize(table, compared));
}

void check_vector(const std::vector<double>& got, const std::vector<double>& want, double tol) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CAPTURE(i);
        CHECK(std::abs(got[i] - want[i]) <= tol);
    }
}

}  // namespace

TEST_CASE("difference profile for I vs V") {
    const auto p = difference_profile(example_pair("V"));
    check_vector(p.d, {0.03, 0.03, 0.03, 0.03, -0.12}, 1e-12);
    CHECK(std::abs(p.d_min + 0.12) <= 1e-12);
    CHECK(std::abs(p.d_max - 0.03) <= 1e-12);
    CHECK(std::abs(p.g_p - 0.03) <= 1e-12);
    CHECK(to_string(p.abs_area) == "[-0.12, -0.03) ∪ (0.03, 0.12]");
    REQUIRE(p.rel_area.has_value());
    CHECK(to_string(*p.rel_area) == "[-4, -1) ∪ (1, 4]");
}

TEST_CASE("difference profile for I vs IV") {
    const auto p = difference_profile(example_pair("IV"));
    CHECK(std::abs(p.g_p - 0.04) <= 1e-12);
    CHECK(to_string(p.abs_area) == "[-0.1, -0.04) ∪ (0.04, 0.1]");
    CHECK_FALSE(p.abs_area.contains(-0.04));
    CHECK(p.abs_area.contains(-0.1));
    CHECK(p.abs_area.contains(0.1));
    CHECK_FALSE(p.abs_area.contains(0.0));
}

TEST_CASE("difference profile of identical structures") {
    const auto p = difference_profile(example_pair("I"));
    for (double d : p.d) CHECK(d == 0.0);
    CHECK(p.g_p == 0.0);
    CHECK_FALSE(p.r.has_value());
    CHECK_FALSE(p.rel_area.has_value());
    CHECK_FALSE(relative_differences(p).has_value());
}

TEST_CASE("difference profile cross-checks omega_p") {
    const auto pair = example_pair("V");
    CHECK_NOTHROW(difference_profile(pair, 0.88));
    CHECK_THROWS_AS(difference_profile(pair, 0.9), UsageError);
}

TEST_CASE("relative differences") {
    check_vector(*relative_differences(difference_profile(example_pair("V"))), {1, 1, 1, 1, -4}, 1e-9);
    check_vector(*relative_differences(difference_profile(example_pair("II"))), {0, 0, 0, -1, 1}, 1e-9);
    check_vector(*relative_differences(difference_profile(example_pair("VI"))),
                 {-0.83, 1.33, -0.83, 1.33, -1.00}, 0.005);
}

TEST_CASE("classify_depth bands") {
    CHECK(classify_depth(1.33) == DepthClass::moderately);
    CHECK(classify_depth(2.5) == DepthClass::huge);
    CHECK(classify_depth(-4.0) == DepthClass::huge);
    CHECK(classify_depth(1.0) == DepthClass::not_distinctive);
    CHECK(classify_depth(-1.0) == DepthClass::not_distinctive);
    CHECK(classify_depth(0.0) == DepthClass::not_distinctive);

    CHECK(classify_depth(std::nextafter(1.0, 2.0)) == DepthClass::insignificant);
    CHECK(classify_depth(1.0999) == DepthClass::insignificant);
    CHECK(classify_depth(1.10) == DepthClass::barely);
    CHECK(classify_depth(1.2499) == DepthClass::barely);
    CHECK(classify_depth(1.25) == DepthClass::moderately);
    CHECK(classify_depth(-1.40) == DepthClass::highly);
    CHECK(classify_depth(1.5999) == DepthClass::highly);
    CHECK(classify_depth(1.60) == DepthClass::huge);
}

TEST_CASE("classify_depth bands are ordered with no gaps") {
    DepthClass prev = DepthClass::not_distinctive;
    for (int i = 0; i <= 3000; ++i) {
        const auto c = classify_depth(i / 1000.0);
        CHECK(static_cast<int>(c) >= static_cast<int>(prev));
        CHECK(static_cast<int>(c) - static_cast<int>(prev) <= 1);
        prev = c;
    }
    CHECK(prev == DepthClass::huge);
}

TEST_CASE("detect_distinctive on the example") {
    auto flagged = [](const char* pop) {
        const auto p = difference_profile(example_pair(pop));
        const auto dc = detect_distinctive(p);
        std::string out;
        for (auto i : dc.indices()) out += p.categories[i];
        return std::pair{out, dc};
    };
    CHECK(flagged("II").first.empty());
    CHECK(flagged("III").first.empty());
    CHECK(flagged("II").second.tail == Tail::none);

    auto [iv, iv_dc] = flagged("IV");
    CHECK(iv == "D");
    CHECK(iv_dc.tail == Tail::positive);
    CHECK(iv_dc.depth[3] == DepthClass::huge);

    auto [v, v_dc] = flagged("V");
    CHECK(v == "E");
    CHECK(v_dc.tail == Tail::negative);
    CHECK(v_dc.depth[4] == DepthClass::huge);

    auto [vi, vi_dc] = flagged("VI");
    CHECK(vi == "BD");
    CHECK(vi_dc.depth[1] == DepthClass::moderately);
    CHECK(vi_dc.depth[4] == DepthClass::not_distinctive);
}

TEST_CASE("diagnostics reproduce the asymmetry coefficients") {
    // Oracle values from exact rational arithmetic on the example differences.
    struct Case {
        const char* pop;
        double S;
        double M3;
        double A;
    };
    const Case cases[] = {
        {"II", 0.03162277660168379, 0.0, 0.0},
        {"III", 0.02683281572999748, 0.0, 0.0},
        {"IV", 0.052153619241621194, 0.0001728, 1.218120864639941},
        {"V", 0.06, -0.000324, -1.5},
        {"VI", 0.06542170893518451, 0.0001116, 0.39856443342030906},
    };
    for (const auto& c : cases) {
        CAPTURE(c.pop);
        const auto dg = diagnostics(difference_profile(example_pair(c.pop)));
        CHECK(std::abs(dg.mean) <= 1e-12);
        CHECK(dg.S == doctest::Approx(c.S).epsilon(1e-12));
        CHECK(std::abs(dg.M3 - c.M3) <= 1e-15);
        REQUIRE(dg.A.has_value());
        CHECK(std::abs(*dg.A - c.A) <= 1e-9);
    }
}

TEST_CASE("dispersion classes for I vs V") {
    const auto dg = diagnostics(difference_profile(example_pair("V")));
    for (int i = 0; i < 4; ++i) CHECK(dg.dispersion[i] == Dispersion::typical);
    CHECK(dg.dispersion[4] == Dispersion::atypical);
}

TEST_CASE("dispersion boundaries are atypical") {
    // d = (s, -s): S = s, so both points sit exactly on the typical boundary.
    const auto pair = align(StructureVector({"A", "B"}, {0.5, 0.5}), StructureVector({"A", "B"}, {0.75, 0.25}));
    const auto dg = diagnostics(difference_profile(pair));
    CHECK(dg.S == doctest::Approx(0.25));
    CHECK(dg.dispersion[0] == Dispersion::atypical);
    CHECK(dg.dispersion[1] == Dispersion::atypical);
}

TEST_CASE("outliers need a long tail") {
    // One category of 100 moves by 0.99 (one-sided); S = 0.099..., |d| / S ~ 9.95.
    std::vector<std::string> labels;
    std::vector<double> x(100, 0.0), y(100, 0.0);
    for (int i = 0; i < 100; ++i) labels.push_back("c" + std::to_string(i));
    x[0] = 1.0;
    y[0] = 0.01;
    for (int i = 1; i < 100; ++i) y[i] = 0.01;
    const auto dg = diagnostics(difference_profile(align(StructureVector(labels, x), StructureVector(labels, y))));
    CHECK(dg.dispersion[0] == Dispersion::outlier);
    CHECK(dg.dispersion[1] == Dispersion::typical);
}

TEST_CASE("diagnostics of identical structures") {
    const auto dg = diagnostics(difference_profile(example_pair("I")));
    CHECK(dg.S == 0.0);
    CHECK(dg.M3 == 0.0);
    CHECK_FALSE(dg.A.has_value());
}

TEST_CASE("format_bound") {
    CHECK(format_bound(-0.09999999999999998) == "-0.1");
    CHECK(format_bound(0.030000000000000027) == "0.03");
    CHECK(format_bound(-0.0) == "0");
    CHECK(format_bound(4.000000000000001) == "4");
}
