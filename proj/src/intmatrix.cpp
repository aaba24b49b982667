#include "varcount/intmatrix.hpp"

#include <sstream>

namespace varcount {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
        throw error(errc::dimension_mismatch, "matrix dimensions must be positive");
    e_.assign(size_t(rows) * cols, mpz_class(0));
}

IntMatrix::IntMatrix(int rows, int cols, std::vector<mpz_class> entries) : IntMatrix(rows, cols) {
    if (entries.size() != size_t(rows) * cols)
        throw error(errc::dimension_mismatch, "entry count does not match dimensions");
    e_ = std::move(entries);
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
    if (rows.empty() || rows[0].empty())
        throw error(errc::dimension_mismatch, "matrix dimensions must be positive");
    IntMatrix m(int(rows.size()), int(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw error(errc::dimension_mismatch, "ragged rows");
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(int(i), int(j)) = (long)rows[i][j];
    }
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : e_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_)
        throw error(errc::dimension_mismatch, "product dimensions incompatible");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const mpz_class& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

mpz_class IntMatrix::det() const {
    if (rows_ != cols_) throw error(errc::dimension_mismatch, "determinant of non-square matrix");
    // Bareiss: fraction-free elimination, exact divisions throughout
    IntMatrix w(*this);
    const int n = rows_;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            w.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::addmul_row(int dst, int src, const mpz_class& c) {
    for (int j = 0; j < cols_; ++j) at(dst, j) += c * at(src, j);
}

void IntMatrix::addmul_col(int dst, int src, const mpz_class& c) {
    for (int i = 0; i < rows_; ++i) at(i, dst) += c * at(i, src);
}

void IntMatrix::negate_row(int i) {
    for (int j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

IntMatrix IntMatrix::parse_text(const std::string& text) {
    std::vector<std::vector<mpz_class>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<mpz_class> row;
        std::string tok;
        while (ls >> tok) {
            if (tok[0] == '#') break;  // rest of line is a comment
            try {
                row.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                throw error(errc::syntax_error, "bad integer '" + tok + "'", lineno, 1);
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw error(errc::syntax_error, "empty matrix", lineno, 1);
    size_t cols = rows[0].size();
    std::vector<mpz_class> flat;
    for (auto& r : rows) {
        if (r.size() != cols)
            throw error(errc::dimension_mismatch, "rows have differing lengths");
        for (auto& x : r) flat.push_back(std::move(x));
    }
    return IntMatrix(int(rows.size()), int(cols), std::move(flat));
}

std::string IntMatrix::to_text() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) s += ' ';
            s += at(i, j).get_str();
        }
        s += '\n';
    }
    return s;
}

IntMatrix stack_rows(const std::vector<IntMatrix>& blocks) {
    if (blocks.empty()) throw error(errc::dimension_mismatch, "nothing to stack");
    int cols = blocks[0].cols();
    int rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols)
            throw error(errc::dimension_mismatch, "blocks have differing column counts");
        rows += b.rows();
    }
    IntMatrix r(rows, cols);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < cols; ++j) r.at(off + i, j) = b.at(i, j);
        off += b.rows();
    }
    return r;
}

}  // namespace varcount
