// Acceptance runner: goldens from the two reference systems, randomized
// formula-versus-oracle equivalence, the partition and independence
// properties, and the parser contracts. Prints one line per criterion and
// exits nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "generators.hpp"
#include "paper_cases.hpp"
#include "varcount/counting.hpp"
#include "varcount/oracle.hpp"
#include "varcount/parser.hpp"
#include "varcount/report.hpp"

using namespace varcount;

namespace {

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Outcome {
    int id;
    bool pass;
    double seconds;
    std::string detail;
};

std::vector<Outcome> outcomes;

void report(int id, bool pass, double seconds, const std::string& detail) {
    outcomes.push_back({id, pass, seconds, detail});
    std::printf("[%s] criterion %2d (%7.2f s): %s\n", pass ? "PASS" : "FAIL", id, seconds,
                detail.c_str());
    std::fflush(stdout);
}

template <class Fn>
void criterion(int id, double time_limit_s, Fn&& fn) {
    const double t0 = now_s();
    try {
        std::string detail = fn();
        const double dt = now_s() - t0;
        if (dt >= time_limit_s) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " [exceeded %.0f s bound]", time_limit_s);
            report(id, false, dt, detail + buf);
        } else {
            report(id, true, dt, detail);
        }
    } catch (const std::exception& e) {
        report(id, false, now_s() - t0, e.what());
    }
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void expect(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

std::string str(const mpz_class& x) { return x.get_str(); }

Variety load_data(const char* name) {
    return Variety::validate(load_system_file(std::string(VARCOUNT_DATA) + "/" + name));
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(VARCOUNT_BIN) + " " + args + " > acc_cli.out 2> acc_cli.err";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string cli_stdout() {
    std::ifstream in("acc_cli.out", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool dchain_is(const std::vector<mpz_class>& d, const std::vector<long>& want) {
    if (d.size() != want.size()) return false;
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] != want[i]) return false;
    return true;
}

// shared between criteria 4, 6 and 10
struct Instance {
    Variety v;
    CountReport rep;
    uint64_t brute;
    std::vector<uint64_t> profile;
};
std::vector<Instance> instances;

constexpr double kNoLimit = 1e9;

}  // namespace

int main() {
    // 1. F_11 golden run: exact total, invariant factors, closed-form path.
    criterion(1, 1.0, [] {
        Variety v = load_data("sys_f11.vsys");
        CountReport rep = count_points(v);
        expect(rep.total == 8190, "total " + str(rep.total) + " != 8190");
        expect(rep.levels.size() == 2, "expected 2 levels");
        expect(dchain_is(rep.levels[0].snf.d, {1, 1}), "level 1 d-chain");
        expect(dchain_is(rep.levels[1].snf.d, {1, 1, 1, 1, 1, 291}), "level 2 d-chain");
        expect(closed_form_applicable(v), "closed form should apply");
        for (const auto& lv : rep.levels)
            expect(lv.path == LevelPath::closed_form, "closed-form path not taken");
        expect(run_cli("count " + std::string(VARCOUNT_DATA) + "/sys_f11.vsys") == 0,
               "CLI count failed");
        expect(cli_stdout().find("total = 8190") != std::string::npos, "CLI total line");
        return std::string(
            "F_11 system: total 8190, d-chains (1,1) and (1,...,291), closed-form path");
    });

    // 2. F_7 golden run: total and all printed intermediates.
    criterion(2, 5.0, [] {
        Variety v = load_data("sys_f7.vsys");
        CountReport rep = count_points(v);
        expect(rep.total == 3007, "total " + str(rep.total) + " != 3007");
        expect(rep.levels.size() == 3, "expected 3 levels");
        expect(rep.levels[0].N == 1 && rep.levels[1].N == 21 && rep.levels[2].N == 823,
               "N_l intermediates");
        expect(rep.levels[0].term == 1911 && rep.levels[1].term == 273 &&
                   rep.levels[2].term == 823,
               "level terms");
        expect(dchain_is(rep.levels[0].snf.d, {1, 1, 9}), "level 1 d = (1,1,9)");
        expect(rep.levels[1].s == 5 && rep.levels[1].snf.d.back() == 5, "level 2 ends in 5, s=5");
        expect(rep.levels[2].s == 7 && rep.levels[2].snf.d.back() == 5, "level 3 ends in 5, s=7");
        expect(run_cli("count " + std::string(VARCOUNT_DATA) + "/sys_f7.vsys") == 0,
               "CLI count failed");
        expect(cli_stdout().find("total = 3007") != std::string::npos, "CLI total line");
        return std::string("F_7 system: total 3007 = 1911 + 273 + 823 with N = (1, 21, 823)");
    });

    // 3. Oracle cross-check on both systems, single-threaded, and verify exit 0.
    criterion(3, kNoLimit, [] {
        const double t11 = now_s();
        Variety v11 = load_data("sys_f11.vsys");
        const uint64_t b11 = brute_count(v11);  // 11^6 points
        expect(b11 == 8190, "oracle total for the F_11 system");
        const double d11 = now_s() - t11;

        const double t7 = now_s();
        Variety v7 = load_data("sys_f7.vsys");
        const uint64_t b7 = brute_count(v7);  // 7^7 points
        expect(b7 == 3007, "oracle total for the F_7 system");
        const double d7 = now_s() - t7;
        expect(d11 < 30.0 && d7 < 30.0, "oracle runtime bound of 30 s exceeded");

        expect(run_cli("verify " + std::string(VARCOUNT_DATA) + "/sys_f11.vsys") == 0,
               "verify exit code, F_11 system");
        expect(run_cli("verify " + std::string(VARCOUNT_DATA) + "/sys_f7.vsys") == 0,
               "verify exit code, F_7 system");
        char buf[128];
        std::snprintf(buf, sizeof buf, "oracle 8190 in %.2f s, 3007 in %.2f s, verify exits 0",
                      d11, d7);
        return std::string(buf);
    });

    // 4. Randomized formula-versus-oracle equivalence (also fills the shared
    //    instance pool for criteria 6 and 10).
    criterion(4, 600.0, [] {
        std::mt19937_64 rng(0xace0fba5e);
        int mismatches = 0;
        for (int it = 0; it < 200; ++it) {
            Variety v = gen::random_variety(rng);
            CountReport rep = count_points(v);
            const uint64_t bc = brute_count(v);
            const auto prof = partition_profile(v);
            if (rep.total != mpz_class(bc)) ++mismatches;
            instances.push_back({std::move(v), std::move(rep), bc, prof});
        }
        expect(mismatches == 0, std::to_string(mismatches) + " of 200 instances disagree");
        return std::string("200 random systems: formula total == oracle total on every instance");
    });

    // 5. The filtered count is independent of the primitive element, exhaustively
    //    over all primitive elements for every q <= 13.
    criterion(5, kNoLimit, [] {
        std::mt19937_64 rng(0x5eed);
        int fields_checked = 0, alphas_checked = 0;
        for (int q : {3, 5, 7, 9, 11, 13}) {
            auto F = q == 9 ? std::make_shared<const Field>(3, 2, std::vector<long long>{1, 0, 1})
                            : std::make_shared<const Field>(uint64_t(q));
            std::vector<Element> prim;
            for (uint32_t c = 1; c < F->q(); ++c) {
                uint64_t ord = 1;
                uint32_t x = c;
                while (x != 1) {
                    x = F->mul_code(x, c);
                    ++ord;
                }
                if (ord == F->q() - 1) prim.push_back(F->element(c));
            }
            ++fields_checked;
            for (int inst = 0; inst < 4; ++inst) {
                Variety v = gen::random_variety(rng, F);
                std::vector<std::vector<mpz_class>> per_alpha;
                for (const Element& alpha : prim) {
                    LogTable logs = F->build_log_table(alpha);
                    std::vector<mpz_class> vals;
                    for (int l = 1; l <= v.t(); ++l) vals.push_back(count_Nl(v, l, logs));
                    per_alpha.push_back(std::move(vals));
                }
                for (const auto& vals : per_alpha)
                    expect(vals == per_alpha.front(),
                           "N_l depends on alpha for q=" + std::to_string(q));
            }
            alphas_checked += int(prim.size());
        }
        return "N_l identical across all " + std::to_string(alphas_checked) +
               " primitive elements of the " + std::to_string(fields_checked) + " fields";
    });

    // 6. Partition profile matches the level decomposition on every criterion-4
    //    instance: sums, per-level terms, off-grid zeros, zero-level branch.
    criterion(6, kNoLimit, [] {
        expect(!instances.empty(), "criterion 4 must run first");
        for (const auto& inst : instances) {
            const Variety& v = inst.v;
            uint64_t sum = 0;
            for (uint64_t x : inst.profile) sum += x;
            expect(sum == inst.brute, "profile sum != oracle count");
            for (int l = 1; l <= v.t(); ++l)
                expect(mpz_class(inst.profile[size_t(v.r()[size_t(l - 1)])]) ==
                           inst.rep.levels[size_t(l - 1)].term,
                       "M_{r_l} != level term");
            for (int n = 1; n <= v.rt(); ++n) {
                bool on_grid = false;
                for (int rl : v.r()) on_grid |= rl == n;
                if (!on_grid) expect(inst.profile[size_t(n)] == 0, "M_n != 0 off the grid");
            }
            const mpz_class m0 = v.all_b_zero() ? zero_level_term(v) : mpz_class(0);
            expect(mpz_class(inst.profile[0]) == m0, "zero-level branch");
        }
        return std::string(
            "partition profile matches terms, off-grid zeros and the zero-level branch on all "
            "200 instances");
    });

    // 7. Congruence counting against exhaustive enumeration.
    criterion(7, kNoLimit, [] {
        std::mt19937_64 rng(0xc0491e5);
        for (int it = 0; it < 500; ++it) {
            auto sys = gen::random_congruence(rng);
            expect(mpz_class(enumerate_solutions(sys).size()) == count_solutions(sys),
                   "congruence count mismatch");
        }
        return std::string(
            "500 random congruence systems: closed-form count equals exhaustive enumeration");
    });

    // 8. Square systems with determinant coprime to q-1 match the closed
    //    hypersurface formula.
    criterion(8, kNoLimit, [] {
        std::mt19937_64 rng(0x5a11e);
        for (int it = 0; it < 100; ++it) {
            Variety v = gen::random_square_unimodular(rng);
            const mpz_class q = v.field().q();
            const int n = v.nt();
            const int sign = n % 2 == 0 ? 1 : -1;
            mpz_class qn, qm1n;
            mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n);
            mpz_class qm1 = q - 1;
            mpz_pow_ui(qm1n.get_mpz_t(), qm1.get_mpz_t(), n);
            const mpz_class want = v.b(1).is_zero()
                                       ? mpz_class(qn - qm1n + (qm1n + sign * qm1) / q)
                                       : mpz_class((qm1n - sign) / q);
            expect(count_points(v).total == want, "closed hypersurface formula mismatch");
        }
        return std::string("100 square instances with gcd(det, q-1) = 1 match the closed formula");
    });

    // 9. The product count reproduces the two reference values.
    criterion(9, kNoLimit, [] {
        expect(hyperplane_product_count(3, 2, 0, 7) == 125, "m=3, k=2 count");
        expect(hyperplane_product_count(3, 3, 0, 7) == 29791, "m=3, k=3 count");
        return std::string("product counts 125 and 29791 reproduced exactly");
    });

    // 10. Parser round trip on every generated spec; fuzzed inputs never crash.
    criterion(10, kNoLimit, [] {
        expect(!instances.empty(), "criterion 4 must run first");
        for (const auto& inst : instances) {
            Variety back = Variety::validate(parse_system(serialize_system(inst.v)));
            expect(back == inst.v, "parse(serialize(v)) != v");
            Variety jback = Variety::validate(system_from_json(system_to_json(inst.v)));
            expect(jback == inst.v, "json mirror round trip");
        }
        std::mt19937_64 rng(0xf022);
        std::uniform_int_distribution<int> len(0, 160), byte(0, 255), mode(0, 2);
        const std::string seeds[] = {cases::kSys7, cases::kSys11,
                                     "field 3^2 mod [1,0,1]\n[1,1]*x1*x2^2 = [0,1]\n"};
        for (int it = 0; it < 10000; ++it) {
            std::string s;
            if (mode(rng) == 0) {
                const int n = len(rng);
                for (int i = 0; i < n; ++i) s += char(byte(rng));
            } else {
                s = seeds[rng() % 3];
                const int flips = 1 + int(rng() % 6);
                for (int i = 0; i < flips && !s.empty(); ++i)
                    s[rng() % s.size()] = char(byte(rng));
            }
            try {
                Variety::validate(parse_system(s));
            } catch (const error&) {
                // structured rejection is the expected outcome
            }
        }
        return std::string("round trip on all 200 generated specs; 10000 fuzzed inputs, no crash");
    });

    std::remove("acc_cli.out");
    std::remove("acc_cli.err");

    int failed = 0;
    for (const auto& o : outcomes)
        if (!o.pass) ++failed;
    if (failed) {
        std::printf("%d of %zu criteria FAILED\n", failed, outcomes.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", outcomes.size());
    return 0;
}
