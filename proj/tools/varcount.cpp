// varcount: exact rational point counts for staircase systems of
// diagonal-monomial equations over small finite fields, with a brute-force
// oracle for cross-checking.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "varcount/counting.hpp"
#include "varcount/oracle.hpp"
#include "varcount/parser.hpp"
#include "varcount/report.hpp"
#include "varcount/snf.hpp"

namespace {

using namespace varcount;

uint64_t oracle_cap() {
    const char* s = std::getenv("VARCOUNT_CAP");
    if (!s || !*s) return OracleOptions{}.cap;
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (errno != 0 || *end != '\0' || v == 0)
        throw error(errc::invalid_argument, "VARCOUNT_CAP must be a positive integer");
    return v;
}

std::string case_name(const std::string& path) {
    size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

bool is_system_file(const std::string& path) {
    auto ends_with = [&](const char* suf) {
        const size_t n = std::strlen(suf);
        return path.size() >= n && path.compare(path.size() - n, n, suf) == 0;
    };
    return ends_with(".vsys") || ends_with(".json");
}

Variety load(const std::string& path, bool force_even) {
    ParseOptions po;
    po.allow_even = force_even;
    return Variety::validate(load_system_file(path, po));
}

uint64_t now_ns() {
    return uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now().time_since_epoch())
                        .count());
}

struct Args {
    std::string path;
    bool json = false;
    std::string alpha;
    bool force_even = false;
    int threads = 1;
    int repeat = 3;
    std::string csv;
};

CountOptions count_options(const Variety& v, const Args& a) {
    CountOptions co;
    if (!a.alpha.empty()) {
        co.alpha = v.field().parse_element(a.alpha);
        v.field().build_log_table(*co.alpha);  // primitivity check up front
    }
    return co;
}

void warn_even(const Variety& v) {
    if (v.field().p() != 2) return;
    std::cerr << "warning: characteristic 2 is outside the stated hypotheses of the counting\n"
                 "         formula; every result is cross-checked against the oracle.\n";
}

int cmd_count(const Args& a) {
    Variety v = load(a.path, a.force_even);
    CountReport rep = count_points(v, count_options(v, a));
    if (a.json) std::cout << report_to_json(rep);
    else std::cout << report_to_text(rep);
    if (a.force_even && v.field().p() == 2) {
        warn_even(v);
        OracleOptions oo{oracle_cap(), a.threads};
        const uint64_t bc = brute_count(v, oo);
        if (rep.total != mpz_class(bc)) {
            std::cerr << "MISMATCH: formula " << rep.total << " != oracle " << bc << "\n";
            return 1;
        }
        std::cerr << "oracle agrees: " << bc << "\n";
    }
    return 0;
}

int cmd_brute(const Args& a) {
    Variety v = load(a.path, a.force_even);
    if (a.force_even) warn_even(v);
    OracleOptions oo{oracle_cap(), a.threads};
    std::cout << "oracle = " << brute_count(v, oo) << "\n";
    return 0;
}

int cmd_verify(const Args& a) {
    Variety v = load(a.path, a.force_even);
    if (a.force_even) warn_even(v);
    CountReport rep = count_points(v, count_options(v, a));
    OracleOptions oo{oracle_cap(), a.threads};
    const uint64_t bc = brute_count(v, oo);
    const auto prof = partition_profile(v, oo);

    struct Row {
        std::string name;
        mpz_class formula, oracle;
    };
    std::vector<Row> rows;
    rows.push_back({"total", rep.total, mpz_class(bc)});
    uint64_t psum = 0;
    for (uint64_t x : prof) psum += x;
    rows.push_back({"profile sum", mpz_class(psum), mpz_class(bc)});
    rows.push_back({"M_0", rep.includes_zero_level ? rep.zero_term : mpz_class(0),
                    mpz_class(prof[0])});
    for (int l = 1; l <= v.t(); ++l)
        rows.push_back({"M_" + std::to_string(v.r()[size_t(l - 1)]) + " (level " +
                            std::to_string(l) + ")",
                        rep.levels[size_t(l - 1)].term,
                        mpz_class(prof[size_t(v.r()[size_t(l - 1)])])});
    for (int n = 1; n <= v.rt(); ++n) {
        bool on_grid = false;
        for (int rl : v.r()) on_grid |= rl == n;
        if (!on_grid)
            rows.push_back(
                {"M_" + std::to_string(n) + " (off grid)", 0, mpz_class(prof[size_t(n)])});
    }

    bool ok = true;
    for (const auto& r : rows) ok &= r.formula == r.oracle;

    if (rep.total == mpz_class(bc))
        std::cout << "formula " << rep.total << " == oracle " << bc << "\n";
    else
        std::cout << "formula " << rep.total << " != oracle " << bc << "\n";
    if (!ok) {
        std::cout << "cross-check differences:\n";
        for (const auto& r : rows)
            if (r.formula != r.oracle)
                std::cout << "  " << r.name << ": formula " << r.formula << " vs oracle "
                          << r.oracle << "\n";
    } else {
        std::cout << "all " << rows.size() << " cross-checks match\n";
    }
    return ok ? 0 : 1;
}

void print_snf_block(const IntMatrix& E, const SnfDecomposition& s, const mpz_class* qm1) {
    if (!verify_snf(E, s)) throw error(errc::internal_check, "decomposition failed verification");
    std::cout << "  d = (";
    for (size_t i = 0; i < s.d.size(); ++i) std::cout << (i ? ", " : "") << s.d[i];
    std::cout << "), rank s = " << s.rank() << "\n";
    if (qm1) {
        std::cout << "  gcd(q-1, d_j) = (";
        for (size_t i = 0; i < s.d.size(); ++i) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), qm1->get_mpz_t(), s.d[i].get_mpz_t());
            std::cout << (i ? ", " : "") << g;
        }
        std::cout << ")\n";
    }
    std::cout << "  U =\n";
    std::istringstream us(s.U.to_text());
    for (std::string line; std::getline(us, line);) std::cout << "    " << line << "\n";
    std::cout << "  V =\n";
    std::istringstream vs(s.V.to_text());
    for (std::string line; std::getline(vs, line);) std::cout << "    " << line << "\n";
}

int cmd_snf(const Args& a) {
    if (is_system_file(a.path)) {
        Variety v = load(a.path, a.force_even);
        const mpz_class qm1 = mpz_class(v.field().q()) - 1;
        for (int l = 1; l <= v.t(); ++l) {
            IntMatrix E = v.level_matrix(l);
            std::cout << "level " << l << ": E^(" << l << ") is " << E.rows() << "x" << E.cols()
                      << "\n";
            print_snf_block(E, smith_normal_form(E), &qm1);
        }
    } else {
        std::ifstream in(a.path, std::ios::binary);
        if (!in) throw error(errc::io_error, "cannot read '" + a.path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        IntMatrix E = IntMatrix::parse_text(buf.str());
        std::cout << "matrix is " << E.rows() << "x" << E.cols() << "\n";
        print_snf_block(E, smith_normal_form(E), nullptr);
    }
    return 0;
}

int cmd_bench(const Args& a) {
    Variety v = load(a.path, a.force_even);
    if (a.force_even) warn_even(v);
    OracleOptions oo{oracle_cap(), a.threads};
    CountOptions co = count_options(v, a);

    auto median_of = [&](auto&& fn) {
        std::vector<uint64_t> ns;
        for (int i = 0; i < a.repeat; ++i) {
            const uint64_t t0 = now_ns();
            fn();
            ns.push_back(now_ns() - t0);
        }
        std::sort(ns.begin(), ns.end());
        return ns[ns.size() / 2];
    };

    mpz_class formula_total;
    const uint64_t formula_ns = median_of([&] { formula_total = count_points(v, co).total; });
    uint64_t oracle_total = 0;
    const uint64_t oracle_ns = median_of([&] { oracle_total = brute_count(v, oo); });

    if (formula_total != mpz_class(oracle_total))
        throw error(errc::internal_check, "formula and oracle disagree during bench");

    const std::string name = case_name(a.path);
    std::cout << "case\tpath\truns\tmedian_ns\n";
    std::cout << name << "\tformula\t" << a.repeat << "\t" << formula_ns << "\n";
    std::cout << name << "\toracle\t" << a.repeat << "\t" << oracle_ns << "\n";

    if (!a.csv.empty()) {
        std::ofstream out(a.csv, std::ios::binary);
        if (!out) throw error(errc::io_error, "cannot write '" + a.csv + "'");
        out << "case,path,runs,median_ns\n";
        out << name << ",formula," << a.repeat << "," << formula_ns << "\n";
        out << name << ",oracle," << a.repeat << "," << oracle_ns << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact point counts for staircase diagonal-monomial systems over F_q"};
    app.require_subcommand(1);
    Args args;

    auto add_common = [&](CLI::App* sub, bool with_alpha) {
        sub->add_option("file", args.path, "input system (.vsys text or .json mirror)")
            ->required();
        sub->add_flag("--force-even", args.force_even,
                      "allow characteristic 2 (oracle cross-check enforced)");
        sub->add_option("--threads", args.threads, "worker threads for enumeration scans")
            ->check(CLI::Range(1, 64));
        if (with_alpha)
            sub->add_option("--alpha", args.alpha, "primitive element override, e.g. 3 or [1,1]");
    };

    CLI::App* count =
        app.add_subcommand("count", "count rational points via the normal-form formula");
    add_common(count, true);
    count->add_flag("--json", args.json, "emit the report as canonical JSON");

    CLI::App* brute =
        app.add_subcommand("brute", "count rational points by exhaustive enumeration");
    add_common(brute, false);

    CLI::App* verify =
        app.add_subcommand("verify", "run formula and oracle, cross-check every level");
    add_common(verify, true);

    CLI::App* snf = app.add_subcommand(
        "snf", "print invariant factors and transforms (system file or raw matrix)");
    add_common(snf, false);

    CLI::App* bench = app.add_subcommand("bench", "time the formula against the oracle");
    add_common(bench, false);
    bench->add_option("--repeat", args.repeat, "runs per path (median reported)")
        ->check(CLI::Range(1, 1000));
    bench->add_option("--csv", args.csv, "write results as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(count)) return cmd_count(args);
        if (app.got_subcommand(brute)) return cmd_brute(args);
        if (app.got_subcommand(verify)) return cmd_verify(args);
        if (app.got_subcommand(snf)) return cmd_snf(args);
        if (app.got_subcommand(bench)) return cmd_bench(args);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return error_exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
