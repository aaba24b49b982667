#pragma once

#include "varcount/snf.hpp"

namespace varcount {

// System of linear congruences H * Y = B (mod m) over integer vectors Y.
struct CongruenceSystem {
    IntMatrix H;
    std::vector<mpz_class> B;
    mpz_class m;

    CongruenceSystem(IntMatrix h, std::vector<mpz_class> b, mpz_class mod);
};

// B' = U * B, exact (no reduction).
std::vector<mpz_class> transformed_rhs(const CongruenceSystem& sys, const SnfDecomposition& snf);

// Solvable iff gcd(m, d_i) | b'_i for i <= r and m | b'_i for r < i <= s.
// The divisibility tests reduce b'_i mod m first; every test modulus divides m,
// so the result is unchanged.
bool is_solvable(const CongruenceSystem& sys);

// 0 when unsolvable, otherwise m^{n-r} * prod gcd(m, d_i), counting solutions
// with coordinates in [0, m).
mpz_class count_solutions(const CongruenceSystem& sys);

// Exhaustive scan of [0, m)^n; the oracle side of count_solutions.
std::vector<std::vector<uint32_t>> enumerate_solutions(const CongruenceSystem& sys,
                                                       uint64_t cap = 1000000);

}  // namespace varcount
