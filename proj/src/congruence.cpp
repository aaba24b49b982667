#include "varcount/congruence.hpp"

namespace varcount {

CongruenceSystem::CongruenceSystem(IntMatrix h, std::vector<mpz_class> b, mpz_class mod)
    : H(std::move(h)), B(std::move(b)), m(std::move(mod)) {
    if (B.size() != size_t(H.rows()))
        throw error(errc::dimension_mismatch, "right-hand side length does not match row count");
    if (m < 2) throw error(errc::invalid_argument, "modulus must be >= 2");
}

std::vector<mpz_class> transformed_rhs(const CongruenceSystem& sys, const SnfDecomposition& snf) {
    if (snf.U.rows() != sys.H.rows() || snf.U.cols() != sys.H.rows())
        throw error(errc::dimension_mismatch, "transform does not match the system");
    std::vector<mpz_class> bp(sys.H.rows());
    for (int i = 0; i < sys.H.rows(); ++i) {
        mpz_class acc = 0;
        for (int j = 0; j < sys.H.rows(); ++j) acc += snf.U.at(i, j) * sys.B[size_t(j)];
        bp[size_t(i)] = acc;
    }
    return bp;
}

namespace {

bool solvable_impl(const CongruenceSystem& sys, const SnfDecomposition& snf) {
    const auto bp = transformed_rhs(sys, snf);
    const int r = snf.rank();
    for (int i = 0; i < sys.H.rows(); ++i) {
        mpz_class bi = bp[size_t(i)] % sys.m;
        if (bi < 0) bi += sys.m;
        if (i < r) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), sys.m.get_mpz_t(), snf.d[size_t(i)].get_mpz_t());
            if (bi % g != 0) return false;
        } else {
            if (bi != 0) return false;
        }
    }
    return true;
}

}  // namespace

bool is_solvable(const CongruenceSystem& sys) {
    return solvable_impl(sys, smith_normal_form(sys.H));
}

mpz_class count_solutions(const CongruenceSystem& sys) {
    const auto snf = smith_normal_form(sys.H);
    if (!solvable_impl(sys, snf)) return 0;
    const int r = snf.rank();
    mpz_class count = 1;
    for (int i = 0; i < sys.H.cols() - r; ++i) count *= sys.m;
    for (int i = 0; i < r; ++i) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), sys.m.get_mpz_t(), snf.d[size_t(i)].get_mpz_t());
        count *= g;
    }
    return count;
}

std::vector<std::vector<uint32_t>> enumerate_solutions(const CongruenceSystem& sys, uint64_t cap) {
    if (!sys.m.fits_uint_p() || sys.m > (long)(uint64_t(1) << 31))
        throw error(errc::cap_exceeded, "modulus too large for exhaustive enumeration");
    const uint64_t m = sys.m.get_ui();
    const int n = sys.H.cols(), s = sys.H.rows();

    mpz_class space = 1;
    for (int i = 0; i < n; ++i) space *= m;
    if (space > cap)
        throw error(errc::cap_exceeded,
                    "solution space " + space.get_str() + " exceeds cap " + std::to_string(cap));

    // coefficients and rhs reduced once
    std::vector<uint64_t> h(size_t(s) * n);
    std::vector<uint64_t> b(s);
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < n; ++j) {
            mpz_class c = sys.H.at(i, j) % m;
            if (c < 0) c += m;
            h[size_t(i) * n + j] = c.get_ui();
        }
        mpz_class c = sys.B[size_t(i)] % m;
        if (c < 0) c += m;
        b[size_t(i)] = c.get_ui();
    }

    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> y(n, 0);
    for (;;) {
        bool ok = true;
        for (int i = 0; i < s && ok; ++i) {
            uint64_t acc = 0;
            for (int j = 0; j < n; ++j) acc += h[size_t(i) * n + j] * y[size_t(j)] % m;
            ok = acc % m == b[size_t(i)];
        }
        if (ok) out.push_back(y);
        int j = 0;
        while (j < n && uint64_t(++y[size_t(j)]) == m) y[size_t(j++)] = 0;
        if (j == n) break;
    }
    return out;
}

}  // namespace varcount
