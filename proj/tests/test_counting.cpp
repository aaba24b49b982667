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

// Reference N_l: enumerate full r_l-tuples over nonzero coordinates per
// equation, walk the complete product, and apply the divisibility test row by
// row. Slow and direct; keeps the convolution in count_Nl honest.
mpz_class count_Nl_direct(const Variety& v, int l, const LogTable& logs) {
    const Field& F = v.field();
    const uint32_t q = F.q(), Q = q - 1;
    const int m = v.m(), rl = v.r()[size_t(l - 1)];
    const int rows = m * rl;

    auto snf = smith_normal_form(v.level_matrix(l));
    std::vector<uint32_t> g(static_cast<size_t>(rows), Q);
    for (int i = 0; i < snf.rank(); ++i) {
        mpz_class gg;
        mpz_class Qz = Q;
        mpz_gcd(gg.get_mpz_t(), Qz.get_mpz_t(), snf.d[size_t(i)].get_mpz_t());
        g[size_t(i)] = uint32_t(gg.get_ui());
    }
    std::vector<std::vector<uint32_t>> Ured(static_cast<size_t>(rows), std::vector<uint32_t>(static_cast<size_t>(rows)));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) {
            mpz_class c = snf.U.at(i, j) % Q;
            if (c < 0) c += Q;
            Ured[size_t(i)][size_t(j)] = uint32_t(c.get_ui());
        }

    // per-equation solution tuples by full enumeration
    std::vector<std::vector<std::vector<uint32_t>>> sets(static_cast<size_t>(m));
    for (int k = 1; k <= m; ++k) {
        std::vector<uint32_t> u(size_t(rl), 1);
        for (;;) {
            uint32_t acc = 0;
            for (int i = 0; i < rl; ++i)
                acc = F.add_code(acc, F.mul_code(v.a(k, i + 1).code(), u[size_t(i)]));
            if (acc == v.b(k).code()) {
                std::vector<uint32_t> h(static_cast<size_t>(rl));
                for (int i = 0; i < rl; ++i) h[size_t(i)] = logs.ind_code(u[size_t(i)]);
                sets[size_t(k - 1)].push_back(std::move(h));
            }
            int i = 0;
            while (i < rl && ++u[size_t(i)] == q) u[size_t(i++)] = 1;
            if (i == rl) break;
        }
    }

    mpz_class count = 0;
    std::vector<size_t> pick(static_cast<size_t>(m), 0);
    for (;;) {
        std::vector<uint32_t> h;
        bool valid = true;
        for (int k = 0; k < m && valid; ++k) {
            if (sets[size_t(k)].empty()) valid = false;
            else
                h.insert(h.end(), sets[size_t(k)][pick[size_t(k)]].begin(),
                         sets[size_t(k)][pick[size_t(k)]].end());
        }
        if (!valid) break;
        bool ok = true;
        for (int i = 0; i < rows && ok; ++i) {
            uint64_t acc = 0;
            for (int j = 0; j < rows; ++j) acc += uint64_t(Ured[size_t(i)][size_t(j)]) * h[size_t(j)];
            ok = acc % Q % g[size_t(i)] == 0;
        }
        if (ok) ++count;
        int k = 0;
        while (k < m && ++pick[size_t(k)] == sets[size_t(k)].size()) pick[size_t(k++)] = 0;
        if (k == m) break;
    }
    return count;
}

std::vector<Element> primitive_elements(const Field& F) {
    std::vector<Element> out;
    for (uint32_t c = 1; c < F.q(); ++c) {
        uint64_t ord = 1;
        uint32_t x = c;
        while (x != 1) {
            x = F.mul_code(x, c);
            ++ord;
        }
        if (ord == F.q() - 1) out.push_back(F.element(c));
    }
    return out;
}

}  // namespace

TEST_CASE("hyperplane count (single equation)") {
    CHECK(hyperplane_count(1, true, 7) == 0);
    CHECK(hyperplane_count(1, false, 7) == 1);
    CHECK(hyperplane_count(3, false, 7) == 31);
    CHECK(hyperplane_count(2, true, 7) == 6);
    CHECK(hyperplane_count(2, false, 7) == 5);

    // exhaustive cross-check over small fields and lengths
    for (int q : {3, 5, 9}) {
        auto Fp = q == 9 ? std::make_unique<Field>(3, 2, std::vector<long long>{1, 0, 1})
                         : std::make_unique<Field>(uint64_t(q));
        const Field& F = *Fp;
        std::mt19937_64 rng(static_cast<uint64_t>(q));
        std::uniform_int_distribution<uint32_t> nz(1, F.q() - 1);
        for (int k = 1; k <= 3; ++k) {
            std::vector<uint32_t> c(static_cast<size_t>(k));
            for (auto& x : c) x = nz(rng);
            for (uint32_t rhs : {uint32_t(0), nz(rng)}) {
                uint64_t direct = 0;
                std::vector<uint32_t> u(size_t(k), 1);
                for (;;) {
                    uint32_t acc = 0;
                    for (int i = 0; i < k; ++i)
                        acc = F.add_code(acc, F.mul_code(c[size_t(i)], u[size_t(i)]));
                    if (acc == rhs) ++direct;
                    int i = 0;
                    while (i < k && ++u[size_t(i)] == F.q()) u[size_t(i++)] = 1;
                    if (i == k) break;
                }
                CHECK(hyperplane_count(k, rhs == 0, F.q()) == mpz_class(direct));
            }
        }
    }
}

TEST_CASE("product count over disjoint equations") {
    CHECK(hyperplane_product_count(3, 2, 0, 7) == 125);
    CHECK(hyperplane_product_count(3, 3, 0, 7) == 29791);
    CHECK(hyperplane_product_count(1, 1, 1, 7) == 0);
    CHECK(hyperplane_product_count(1, 1, 1, 13) == 0);

    // always the product of the single-equation counts
    for (int q : {5, 9, 11})
        for (int m = 1; m <= 3; ++m)
            for (int k = 1; k <= 4; ++k)
                for (int r = 0; r <= m; ++r) {
                    mpz_class prod = 1;
                    for (int i = 0; i < r; ++i) prod *= hyperplane_count(k, true, q);
                    for (int i = r; i < m; ++i) prod *= hyperplane_count(k, false, q);
                    CHECK(hyperplane_product_count(m, k, r, q) == prod);
                }
}

TEST_CASE("filtered counts of the F_7 reference system") {
    Variety v = sys7();
    LogTable logs = v.field().build_log_table(v.field().from_int(3));
    CHECK(count_Nl(v, 1, logs) == 1);
    CHECK(count_Nl(v, 2, logs) == 21);
    CHECK(count_Nl(v, 3, logs) == 823);
}

TEST_CASE("level terms of the F_7 reference system") {
    Variety v = sys7();
    CHECK(level_term(v, 1, 1, smith_normal_form(v.level_matrix(1))) == 1911);
    CHECK(level_term(v, 2, 21, smith_normal_form(v.level_matrix(2))) == 273);
    CHECK(level_term(v, 3, 823, smith_normal_form(v.level_matrix(3))) == 823);
    CHECK_THROWS_AS(level_term(v, 4, 1, smith_normal_form(v.level_matrix(3))), error);
}

TEST_CASE("closed-form applicability") {
    CHECK(closed_form_applicable(sys11()));       // gcd(291, 10) = 1
    CHECK_FALSE(closed_form_applicable(sys7()));  // gcd(6, 9) = 3 at level 1

    // rank bound: m*r_l exceeds n_l
    auto in = parse_system("field 7\nx1 + x1^2 = 1\nx1^3 + x1^4 = 2\n");
    CHECK_FALSE(closed_form_applicable(Variety::validate(std::move(in))));
}

TEST_CASE("full counts on the reference systems") {
    CountReport r11 = count_points(sys11());
    CHECK(r11.total == 8190);
    CHECK_FALSE(r11.includes_zero_level);
    CHECK_FALSE(r11.alpha.has_value());
    REQUIRE(r11.levels.size() == 2);
    for (const auto& lv : r11.levels) CHECK(lv.path == LevelPath::closed_form);
    CHECK(r11.levels[0].term == 0);
    CHECK(r11.levels[1].term == 8190);
    CHECK(r11.levels[0].snf.d == std::vector<mpz_class>{1, 1});
    CHECK(r11.levels[1].snf.d == std::vector<mpz_class>{1, 1, 1, 1, 1, 291});

    CountReport r7 = count_points(sys7());
    CHECK(r7.total == 3007);
    REQUIRE(r7.levels.size() == 3);
    CHECK(r7.levels[0].N == 1);
    CHECK(r7.levels[1].N == 21);
    CHECK(r7.levels[2].N == 823);
    CHECK(r7.levels[0].term == 1911);
    CHECK(r7.levels[1].term == 273);
    CHECK(r7.levels[2].term == 823);
    CHECK(r7.levels[0].s == 3);
    CHECK(r7.levels[1].s == 5);
    CHECK(r7.levels[2].s == 7);
    CHECK(r7.levels[1].snf.d.back() == 5);
    CHECK(r7.levels[2].snf.d.back() == 5);
    for (const auto& lv : r7.levels) CHECK(lv.path == LevelPath::general);
    CHECK(r7.alpha.has_value());
    CHECK(*r7.alpha == r7.field->from_int(3));  // least primitive element of F_7
}

TEST_CASE("trivial system x1 = 0") {
    Variety v = Variety::validate(parse_system("field 7\nx1 = 0\n"));
    CountReport r = count_points(v);
    CHECK(r.includes_zero_level);
    CHECK(r.zero_term == 1);          // q^0 (q - (q-1))
    CHECK(r.levels[0].N == 0);        // no nonzero solution of u = 0
    CHECK(r.levels[0].term == 0);
    CHECK(r.total == 1);
}

TEST_CASE("all-zero constants include the zero level") {
    Variety v = Variety::validate(parse_system("field 5\nx1^2 + x1*x2^3 = 0\n"));
    CountReport r = count_points(v);
    CHECK(r.includes_zero_level);
    CHECK(r.zero_term == zero_level_term(v));
    CHECK(r.total == mpz_class(brute_count(v)));
}

TEST_CASE("alpha override changes nothing") {
    Variety v = sys7();
    CountOptions opts;
    opts.alpha = v.field().from_int(5);  // the other primitive element of F_7
    CountReport r = count_points(v, opts);
    CHECK(r.total == 3007);
    CHECK(*r.alpha == v.field().from_int(5));
}

TEST_CASE("filtered count is independent of the primitive element (small fields)") {
    std::mt19937_64 rng(20240815);
    for (int it = 0; it < 8; ++it) {
        Variety v = gen::random_variety(rng);
        if (v.field().q() > 13) continue;
        std::vector<mpz_class> base;
        for (const Element& alpha : primitive_elements(v.field())) {
            LogTable logs = v.field().build_log_table(alpha);
            std::vector<mpz_class> vals;
            for (int l = 1; l <= v.t(); ++l) vals.push_back(count_Nl(v, l, logs));
            if (base.empty()) base = vals;
            else CHECK(base == vals);
        }
    }
}

TEST_CASE("convolution agrees with the direct product filter") {
    std::mt19937_64 rng(20240816);
    int done = 0;
    while (done < 25) {
        Variety v = gen::random_variety(rng);
        // keep the direct reference cheap
        mpz_class worst = 1;
        for (int k = 1; k <= v.m(); ++k) worst *= hyperplane_count(v.rt(), v.b(k).is_zero(), v.field().q());
        if (worst > 200000) continue;
        ++done;
        const LogTable& logs = v.field().canonical_log_table();
        for (int l = 1; l <= v.t(); ++l)
            CHECK(count_Nl(v, l, logs) == count_Nl_direct(v, l, logs));
    }
}

TEST_CASE("closed form agrees with the filter when applicable") {
    std::mt19937_64 rng(20240817);
    int done = 0;
    while (done < 20) {
        Variety v = gen::random_square_unimodular(rng);
        if (!closed_form_applicable(v)) continue;  // always true here, by construction
        ++done;
        int zero_count = v.b(1).is_zero() ? 1 : 0;
        const LogTable& logs = v.field().canonical_log_table();
        CHECK(count_Nl(v, 1, logs) == hyperplane_product_count(1, v.rt(), zero_count, v.field().q()));
    }
}

TEST_CASE("square unimodular instances match the closed hypersurface formula") {
    std::mt19937_64 rng(20240818);
    for (int it = 0; it < 30; ++it) {
        Variety v = gen::random_square_unimodular(rng);
        const mpz_class q = v.field().q();
        const int n = v.nt();
        const int sign = n % 2 == 0 ? 1 : -1;
        mpz_class qn, qm1n;
        mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n);
        mpz_class qm1 = q - 1;
        mpz_pow_ui(qm1n.get_mpz_t(), qm1.get_mpz_t(), n);
        mpz_class want;
        if (v.b(1).is_zero()) want = qn - qm1n + (qm1n + sign * qm1) / q;
        else want = (qm1n - sign) / q;
        CHECK(count_points(v).total == want);
    }
}

TEST_CASE("totals match the oracle on random instances") {
    std::mt19937_64 rng(20240819);
    int done = 0;
    while (done < 25) {
        Variety v = gen::random_variety(rng);
        double space = std::pow(double(v.field().q()), v.nt());
        if (space > 300000) continue;  // keep the unit suite fast
        ++done;
        CHECK(count_points(v).total == mpz_class(brute_count(v)));
    }
}

TEST_CASE("degree-3 extension field instance matches the oracle") {
    auto F27 = std::make_shared<const Field>(3, 3, std::vector<long long>{1, 2, 0, 1});
    std::mt19937_64 rng(20240822);
    int done = 0;
    for (int it = 0; done < 4 && it < 200; ++it) {
        Variety v = gen::random_variety(rng, F27);
        if (v.rt() > 3 || std::pow(27.0, v.nt()) > 600000) continue;
        ++done;
        CHECK(count_points(v).total == mpz_class(brute_count(v)));
    }
    CHECK(done == 4);
}

TEST_CASE("report bookkeeping") {
    CountReport r = count_points(sys7());
    const mpz_class q = 7;
    for (const auto& lv : r.levels) {
        const int rl = r.r[size_t(lv.l - 1)];
        REQUIRE(lv.set_sizes.size() == 3);
        mpz_class prod = 1;
        for (int k = 1; k <= 3; ++k) {
            CHECK(lv.set_sizes[size_t(k - 1)] == hyperplane_count(rl, false, q));
            prod *= lv.set_sizes[size_t(k - 1)];
        }
        CHECK(lv.N <= prod);
        CHECK(lv.N >= 0);
        CHECK(prod == hyperplane_product_count(3, rl, 0, q));
    }
    mpz_class sum = r.zero_term;
    for (const auto& lv : r.levels) sum += lv.term;
    CHECK(sum == r.total);
}

TEST_CASE("work cap trips cleanly") {
    Variety v = sys7();
    CountOptions opts;
    opts.work_cap = 10;  // level 3 needs 31 tuples per equation
    try {
        count_points(v, opts);
        FAIL("expected a resource error");
    } catch (const error& e) {
        CHECK(e.code() == errc::resource_limit);
    }
    CHECK_THROWS_AS(count_Nl(v, 3, v.field().canonical_log_table(), 10), error);
}
