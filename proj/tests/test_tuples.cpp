#include "doctest.h"
#include "oracles.hpp"

#include "gpylab/error.hpp"
#include "gpylab/tuples.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace gpylab;

TEST_CASE("tuple parsing and validation") {
    auto H = KTuple::parse("0,4,6,10,12,16");
    CHECK(H.k() == 6);
    CHECK(H.to_string() == "0,4,6,10,12,16");
    CHECK(KTuple::parse(" 0, 2 ") == KTuple::pair(2));
    CHECK_THROWS_AS(KTuple::parse("0,0"), Error);
    CHECK_THROWS_AS(KTuple::parse("2,0"), Error);
    CHECK_THROWS_AS(KTuple::parse(""), Error);
    CHECK_THROWS_AS(KTuple::parse("0,x"), Error);
    CHECK_THROWS_AS(KTuple(std::vector<std::uint64_t>{}), Error);
}

TEST_CASE("nu_p") {
    CHECK(nu_p(KTuple::pair(2), 2) == 1);
    CHECK(nu_p(KTuple::pair(2), 3) == 2);
    CHECK(nu_p(KTuple::parse("0,2,4"), 3) == 3);
    CHECK(nu_p(KTuple::parse("0,2,4"), 1009) == 3);
    CHECK_THROWS_AS(nu_p(KTuple::pair(2), 4), Error);
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(KTuple::pair(2)));
    CHECK_FALSE(is_admissible(KTuple::parse("0,2,4")));
    CHECK(is_admissible(KTuple::parse("0")));
    CHECK_FALSE(is_admissible(KTuple::pair(1)));
    CHECK(is_admissible(KTuple::parse("0,4,6,10,12,16")));
}

TEST_CASE("nu_m") {
    CHECK(nu_m(KTuple::pair(2), 6) == 2);
    CHECK(nu_m(KTuple::parse("0,6,8"), 1) == 1);
    CHECK(nu_m(KTuple::pair(2), 15) == 4);
    CHECK(oracle::count_roots({0, 2}, 15) == 4);
    CHECK_THROWS_AS(nu_m(KTuple::pair(2), 12), Error);
}

TEST_CASE("residue roots") {
    CHECK(residue_roots(KTuple::pair(2), 3) == std::vector<std::uint64_t>{0, 1});
    CHECK(residue_roots(KTuple::pair(2), 1) == std::vector<std::uint64_t>{0});
    // mod 6: n even (2 | n(n+2)) and n = 0, 1 mod 3
    CHECK(residue_roots(KTuple::pair(2), 6) == std::vector<std::uint64_t>{0, 4});
    CHECK_THROWS_AS(residue_roots(KTuple::pair(2), 18), Error);
}

TEST_CASE("roots agree with enumeration for all squarefree d <= 10^4") {
    const std::vector<KTuple> tuples = {KTuple::pair(2), KTuple::pair(6), KTuple::parse("0,2,6"),
                                        KTuple::parse("0,4,6,10,12,16")};
    for (const auto& H : tuples) {
        std::vector<std::uint64_t> offs(H.offsets().begin(), H.offsets().end());
        for (std::uint64_t d = 1; d <= 10'000; ++d) {
            if (oracle::mobius(d) == 0) continue;
            auto roots = residue_roots(H, d);
            REQUIRE(roots.size() == nu_m(H, d));
            REQUIRE(std::is_sorted(roots.begin(), roots.end()));
            REQUIRE(std::set<std::uint64_t>(roots.begin(), roots.end()).size() == roots.size());
            for (auto r : roots) {
                std::uint64_t prod = 1 % d;
                for (auto h : offs) prod = oracle::mulmod(prod, (r + h) % d, d);
                REQUIRE(prod == 0);
            }
            // nu_m <= k^omega(m)
            REQUIRE(static_cast<double>(roots.size()) <=
                    std::pow(static_cast<double>(H.k()), static_cast<double>(oracle::factor(d).size())));
            if (d <= 300) REQUIRE(roots.size() == oracle::count_roots(offs, d));
        }
    }
}

TEST_CASE("singular series edge values") {
    auto one = singular_series(KTuple::parse("0"), 1000);
    CHECK(one.value == 1.0);
    auto zero = singular_series(KTuple::parse("0,2,4"), 1000);
    CHECK(zero.value == 0.0);
    CHECK(zero.tail_bound == 0.0);
    CHECK_THROWS_AS(singular_series(KTuple::pair(2), 4), Error);
}

TEST_CASE("twin constant at two truncations") {
    auto coarse = singular_series(KTuple::pair(2), 10'000);
    auto fine = singular_series(KTuple::pair(2), 1'000'000);
    CHECK(fine.truncation_prime == 1'000'000);
    CHECK(std::fabs(fine.value - 1.3203236) <= fine.tail_bound * fine.value);
    CHECK(std::fabs(fine.value - coarse.value) <= (fine.tail_bound + coarse.tail_bound) * fine.value);
    CHECK(coarse.tail_bound > fine.tail_bound);
}

TEST_CASE("truncation is raised to the tuple width") {
    auto v = singular_series(KTuple::pair(1000), 11);
    CHECK(v.truncation_prime == 1000);
    CHECK(v.value > 0);
}

TEST_CASE("monotone convergence within the tail bound") {
    const std::vector<KTuple> tuples = {KTuple::pair(2), KTuple::parse("0,2,6"), KTuple::parse("0,4,6,10,12,16")};
    for (const auto& H : tuples) {
        auto prev = singular_series(H, 1000);
        for (std::uint64_t T : {3000ull, 10'000ull, 100'000ull}) {
            auto next = singular_series(H, T);
            CHECK(std::fabs(next.value / prev.value - 1.0) < prev.tail_bound);
            prev = next;
        }
    }
}

TEST_CASE("pair form equals the general product") {
    for (std::uint64_t h = 2; h <= 30; h += 2) {
        CAPTURE(h);
        const double general = singular_series(KTuple::pair(h), 100'000).value;
        const double pair = pair_singular_series(h, 100'000);
        CHECK(std::fabs(general / pair - 1.0) < 1e-12);
    }
    CHECK(pair_singular_series(3, 1000) == 0.0);
}

TEST_CASE("random admissible tuples have positive singular series") {
    std::mt19937_64 rng(3);
    int tested = 0;
    while (tested < 100) {
        std::uniform_int_distribution<int> kdist(1, 6);
        std::uniform_int_distribution<std::uint64_t> gap(1, 12);
        const int k = kdist(rng);
        std::vector<std::uint64_t> offs{0};
        for (int i = 1; i < k; ++i) offs.push_back(offs.back() + 2 * gap(rng));
        KTuple H(offs);
        if (!is_admissible(H)) continue;
        ++tested;
        CHECK(singular_series(H, 2000).value > 0.0);
    }
}
