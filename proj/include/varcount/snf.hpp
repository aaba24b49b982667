#pragma once

#include "varcount/intmatrix.hpp"

namespace varcount {

// Smith normal form U * A * V = diag(d_1, ..., d_r) padded with zeros, where U, V
// are unimodular and d_1 | d_2 | ... | d_r are positive. The invariant factors d
// are unique; U and V are not, and nothing downstream may depend on their values
// beyond verify_snf.
struct SnfDecomposition {
    IntMatrix U;
    IntMatrix V;
    std::vector<mpz_class> d;

    int rank() const { return int(d.size()); }
};

// Kannan–Bachem-style elimination: move a minimal-absolute-value pivot into the
// corner, clear its row and column by division with remainder, repair divisibility
// violations by row addition. Every elementary operation is mirrored into U or V.
SnfDecomposition smith_normal_form(const IntMatrix& A);

// Exact check of the defining equation: unimodular transforms, diagonal padding,
// positive invariant factors in a divisibility chain.
bool verify_snf(const IntMatrix& A, const SnfDecomposition& s);

}  // namespace varcount
