#pragma once

#include "varcount/variety.hpp"

namespace varcount {

// Ground truth by direct enumeration of F_q^{n_t}. Deliberately shares nothing
// with the counting module beyond field arithmetic and the variety model: no
// normal forms, no index tables. Every monomial is re-evaluated at every point.
struct OracleOptions {
    uint64_t cap = 100000000;  // maximum q^{n_t}
    int threads = 1;           // disjoint enumeration ranges, summed
};

uint64_t brute_count(const Variety& v, const OracleOptions& opts = {});

// M_n for n = 0..r_t: points of the variety classified by how many of each
// equation's monomials are nonzero there. All equations must agree on that
// number at every point of the variety; a disagreement trips StructureViolation.
std::vector<uint64_t> partition_profile(const Variety& v, const OracleOptions& opts = {});

}  // namespace varcount
