#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "varcount/errors.hpp"

namespace varcount {

// Dense integer matrix with arbitrary-precision entries. Intermediate values in
// the normal-form elimination routinely leave the machine-word range even for
// single-digit inputs, so everything here is exact.
class IntMatrix {
public:
    IntMatrix(int rows, int cols);
    IntMatrix(int rows, int cols, std::vector<mpz_class> entries);
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    mpz_class& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const mpz_class& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    bool is_zero() const;
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;

    // Exact determinant (fraction-free Gaussian elimination).
    mpz_class det() const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void addmul_row(int dst, int src, const mpz_class& c);  // row[dst] += c * row[src]
    void addmul_col(int dst, int src, const mpz_class& c);
    void negate_row(int i);

    // Text form used by the CLI: one row per line, whitespace-separated integers.
    static IntMatrix parse_text(const std::string& text);
    std::string to_text() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<mpz_class> e_;
};

// Vertical concatenation; all blocks must share a column count.
IntMatrix stack_rows(const std::vector<IntMatrix>& blocks);

}  // namespace varcount
