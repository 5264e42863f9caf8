#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "pcep/construction.hpp"
#include "pcep/discrete_channel.hpp"
#include "pcep/errors.hpp"

using namespace pcep;

TEST_CASE("single polarization step of BSC(0.1)") {
    auto b = polarize_reliabilities(0.1, 1, 256);
    REQUIRE(b.size() == 2);
    // Check combination doubles the effective noise: 2 p (1 - p) = 0.18.
    CHECK(std::abs(b[0] - 0.18) < 1e-9);
    // Bit combination with a known neighbour bit still errs with rate p.
    CHECK(std::abs(b[1] - 0.10) < 1e-9);
}

TEST_CASE("degenerate channels stay degenerate") {
    for (double v : polarize_reliabilities(0.0, 4, 256))
        CHECK(v == 0.0);
    for (double v : polarize_reliabilities(0.5, 4, 256))
        CHECK(std::abs(v - 0.5) < 1e-12);
}

TEST_CASE("exact enumeration agrees with hand values at one step") {
    CHECK(std::abs(exact_subchannel_error(0.1, 1, 0) - 0.18) < 1e-12);
    CHECK(std::abs(exact_subchannel_error(0.1, 1, 1) - 0.10) < 1e-12);
    CHECK_THROWS_AS(exact_subchannel_error(0.1, 4, 0), DomainError);
    CHECK_THROWS_AS(exact_subchannel_error(0.1, 2, 4), DomainError);
}

TEST_CASE("quantized bounds are sound and tight against enumeration") {
    for (int n = 1; n <= 3; ++n) {
        for (double p : {0.05, 0.10, 0.20}) {
            auto bounds = polarize_reliabilities(p, n, 256);
            for (std::uint32_t i = 0; i < bounds.size(); ++i) {
                double exact = exact_subchannel_error(p, n, i);
                CAPTURE(n); CAPTURE(p); CAPTURE(i);
                CHECK(bounds[i] >= exact - 1e-12);
                CHECK(bounds[i] <= exact + 1e-6);
            }
        }
    }
}

TEST_CASE("bounds in [0, 1/2] and coarse conservation") {
    for (int n : {4, 6}) {
        auto b = polarize_reliabilities(0.08, n, 128);
        double sum = 0.0;
        for (double v : b) {
            CHECK(v >= 0.0);
            CHECK(v <= 0.5 + 1e-12);
            sum += v;
        }
        // Total reliability mass cannot beat the underlying channel.
        CHECK(sum >= 0.08 * double(b.size()) - 1e-9);
    }
}

TEST_CASE("polarization sharpens with block length") {
    double prev = -1.0;
    for (int n : {6, 8, 10}) {
        auto b = polarize_reliabilities(0.05, n, 256);
        std::size_t good = 0;
        for (double v : b)
            if (v < 1e-6) ++good;
        double frac = double(good) / double(b.size());
        CHECK(frac > prev);
        prev = frac;
    }
    CHECK(prev > 0.3);
}

TEST_CASE("smaller quantizer budgets stay sound") {
    // Coarser merging can only degrade the modeled channel, so bounds grow.
    auto fine = polarize_reliabilities(0.1, 6, 256);
    auto coarse = polarize_reliabilities(0.1, 6, 16);
    REQUIRE(fine.size() == coarse.size());
    for (std::size_t i = 0; i < fine.size(); ++i)
        CHECK(coarse[i] >= fine[i] - 1e-12);
}

TEST_CASE("reliability cache reloads bit exactly") {
    std::string path = "reliability_cache_test.bin";
    std::remove(path.c_str());
    auto b1 = polarize_reliabilities(0.02, 6, 64);
    auto b2 = polarize_reliabilities(0.07, 5, 256);
    append_reliability_record(path, 0.02, 6, 64, b1);
    append_reliability_record(path, 0.07, 5, 256, b2);

    auto r1 = find_reliability_record(path, 0.02, 6, 64);
    auto r2 = find_reliability_record(path, 0.07, 5, 256);
    REQUIRE(r1.has_value());
    REQUIRE(r2.has_value());
    CHECK(*r1 == b1);
    CHECK(*r2 == b2);
    CHECK_FALSE(find_reliability_record(path, 0.07, 6, 64).has_value());
    CHECK_FALSE(find_reliability_record("no_such_file.bin", 0.02, 6, 64).has_value());
    std::remove(path.c_str());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(polarize_reliabilities(-0.01, 4), DomainError);
    CHECK_THROWS_AS(polarize_reliabilities(0.51, 4), DomainError);
    CHECK_THROWS_AS(polarize_reliabilities(0.1, 0), DomainError);
    CHECK_THROWS_AS(polarize_reliabilities(0.1, 25), DomainError);
    CHECK_THROWS_AS(polarize_reliabilities(0.1, 4, 3), DomainError);
    CHECK_THROWS_AS(polarize_reliabilities(0.1, 4, 0), DomainError);
}
