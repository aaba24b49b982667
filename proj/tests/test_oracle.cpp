#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "paper_cases.hpp"
#include "varcount/counting.hpp"
#include "varcount/oracle.hpp"
#include "varcount/parser.hpp"

using namespace varcount;

namespace {
Variety sys7() { return Variety::validate(parse_system(cases::kSys7)); }
Variety sys11() { return Variety::validate(parse_system(cases::kSys11)); }
}  // namespace

TEST_CASE("reference totals by direct enumeration") {
    CHECK(brute_count(sys7()) == 3007);    // 7^7 points
    CHECK(brute_count(sys11()) == 8190);   // 11^6 points
}

TEST_CASE("trivial system") {
    Variety v = Variety::validate(parse_system("field 5\nx1 = 0\n"));
    CHECK(brute_count(v) == 1);
    auto prof = partition_profile(v);
    CHECK(prof == std::vector<uint64_t>{1, 0});
}

TEST_CASE("partition profile of the reference systems") {
    auto p7 = partition_profile(sys7());
    CHECK(p7 == std::vector<uint64_t>{0, 1911, 273, 823});

    auto p11 = partition_profile(sys11());
    CHECK(p11 == std::vector<uint64_t>{0, 0, 0, 8190});  // M_1 = 0, off-grid M_2 = 0
}

TEST_CASE("zero-level branch of the profile") {
    // all constants zero: M_0 counts the points killing the first block
    Variety v0 = Variety::validate(parse_system("field 5\nx1^2 + x1*x2^3 = 0\n"));
    auto prof = partition_profile(v0);
    CHECK(prof[0] == zero_level_term(v0));

    // some constant nonzero: M_0 = 0
    Variety v1 = Variety::validate(parse_system("field 5\nx1^2 + x1*x2^3 = 2\n"));
    CHECK(partition_profile(v1)[0] == 0);
}

TEST_CASE("profile reconciles with the formula on random instances") {
    std::mt19937_64 rng(20240820);
    int done = 0;
    while (done < 20) {
        Variety v = gen::random_variety(rng);
        double space = std::pow(double(v.field().q()), v.nt());
        if (space > 200000) continue;
        ++done;

        auto prof = partition_profile(v);
        uint64_t bc = brute_count(v);
        uint64_t sum = 0;
        for (uint64_t x : prof) sum += x;
        CHECK(sum == bc);

        CountReport rep = count_points(v);
        for (int l = 1; l <= v.t(); ++l)
            CHECK(mpz_class(prof[size_t(v.r()[size_t(l - 1)])]) == rep.levels[size_t(l - 1)].term);
        // off the r-grid everything vanishes
        for (int n = 1; n <= v.rt(); ++n) {
            bool on_grid = false;
            for (int rl : v.r()) on_grid |= rl == n;
            if (!on_grid) CHECK(prof[size_t(n)] == 0);
        }
        CHECK(mpz_class(prof[0]) == (v.all_b_zero() ? zero_level_term(v) : mpz_class(0)));
    }
}

TEST_CASE("cap trips cleanly") {
    OracleOptions opts;
    opts.cap = 1000;
    try {
        brute_count(sys7(), opts);  // 7^7 >> 1000
        FAIL("expected CapExceeded");
    } catch (const error& e) {
        CHECK(e.code() == errc::cap_exceeded);
    }
}

TEST_CASE("threaded scan matches single-threaded") {
    std::mt19937_64 rng(20240821);
    for (int it = 0; it < 6; ++it) {
        Variety v = gen::random_variety(rng);
        double space = std::pow(double(v.field().q()), v.nt());
        if (space > 200000) continue;
        OracleOptions par;
        par.threads = 3;
        CHECK(brute_count(v) == brute_count(v, par));
        CHECK(partition_profile(v) == partition_profile(v, par));
    }
}
