#pragma once

#include <string>

#include "varcount/variety.hpp"

namespace varcount {

struct ParseOptions {
    bool allow_even = false;  // forwarded to field construction
    uint64_t cardinality_cap = Field::kDefaultCardinalityCap;
};

// Text format, one equation per line after a field header:
//
//   field 7                    (or: field 3^2 mod [1,0,1], ascending coefficients)
//   x1*x2^2*x3^2 + x1^2*x2*x3^5*x4^3*x5 + x1*x2^4*x3^3*x4^2*x5^4*x6*x7 = 1
//
// Terms are coefficient-monomial products "c*x1^e1*...*xw^ew" with implicit
// coefficient 1 and exponent 1; coefficients are integers (reduced into the field)
// or bracketed tuples "[c0,c1,...]" for extension fields; '#' starts a comment.
// The block structure (t, r_j, n_j) is inferred from the monomial supports, which
// must be variable prefixes x1..xw of non-decreasing width.
VarietyInput parse_system(const std::string& text, const ParseOptions& opts = {});

// Canonical form: parse(serialize(v)) reproduces v exactly.
std::string serialize_system(const Variety& v);

// JSON mirror {field:{p,n,modulus}, equations:[{terms:[{coeff,exponents}],constant}]}.
VarietyInput system_from_json(const std::string& text, const ParseOptions& opts = {});
std::string system_to_json(const Variety& v);

// Dispatches on extension: ".json" files take the JSON mirror, anything else the
// text grammar.
VarietyInput load_system_file(const std::string& path, const ParseOptions& opts = {});

}  // namespace varcount
