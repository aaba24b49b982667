#include "varcount/snf.hpp"

namespace varcount {

SnfDecomposition smith_normal_form(const IntMatrix& A) {
    if (A.is_zero()) throw error(errc::zero_matrix, "Smith normal form of the zero matrix");

    const int m = A.rows(), n = A.cols();
    IntMatrix S(A);
    SnfDecomposition out{IntMatrix::identity(m), IntMatrix::identity(n), {}};
    IntMatrix& U = out.U;
    IntMatrix& V = out.V;

    for (int k = 0; k < std::min(m, n); ++k) {
        for (;;) {
            // minimal |entry| in the working block, ties to the lowest row then column
            int pi = -1, pj = -1;
            for (int i = k; i < m; ++i)
                for (int j = k; j < n; ++j) {
                    const mpz_class& x = S.at(i, j);
                    if (x == 0) continue;
                    if (pi < 0 || mpz_cmpabs(x.get_mpz_t(), S.at(pi, pj).get_mpz_t()) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) break;  // block is all zero, done

            if (pi != k) {
                S.swap_rows(k, pi);
                U.swap_rows(k, pi);
            }
            if (pj != k) {
                S.swap_cols(k, pj);
                V.swap_cols(k, pj);
            }
            if (S.at(k, k) < 0) {
                S.negate_row(k);
                U.negate_row(k);
            }
            const mpz_class p = S.at(k, k);

            bool clean = true;
            for (int i = k + 1; i < m; ++i) {
                if (S.at(i, k) == 0) continue;
                mpz_class qt;
                mpz_fdiv_q(qt.get_mpz_t(), S.at(i, k).get_mpz_t(), p.get_mpz_t());
                if (qt != 0) {
                    S.addmul_row(i, k, -qt);
                    U.addmul_row(i, k, -qt);
                }
                if (S.at(i, k) != 0) clean = false;  // remainder became a smaller pivot
            }
            for (int j = k + 1; j < n; ++j) {
                if (S.at(k, j) == 0) continue;
                mpz_class qt;
                mpz_fdiv_q(qt.get_mpz_t(), S.at(k, j).get_mpz_t(), p.get_mpz_t());
                if (qt != 0) {
                    S.addmul_col(j, k, -qt);
                    V.addmul_col(j, k, -qt);
                }
                if (S.at(k, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot now alone in its row and column; force it to divide the rest of
            // the block so the invariant-factor chain comes out ordered
            int bad = -1;
            for (int i = k + 1; i < m && bad < 0; ++i)
                for (int j = k + 1; j < n; ++j)
                    if (S.at(i, j) % p != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            S.addmul_row(k, bad, 1);
            U.addmul_row(k, bad, 1);
        }
        if (S.at(k, k) == 0) break;
        out.d.push_back(S.at(k, k));
    }
    return out;
}

bool verify_snf(const IntMatrix& A, const SnfDecomposition& s) {
    if (s.U.rows() != A.rows() || s.U.cols() != A.rows() || s.V.rows() != A.cols() ||
        s.V.cols() != A.cols())
        throw error(errc::dimension_mismatch, "transform dimensions do not match the matrix");

    if (int(s.d.size()) > std::min(A.rows(), A.cols())) return false;
    for (size_t i = 0; i < s.d.size(); ++i) {
        if (s.d[i] <= 0) return false;
        if (i + 1 < s.d.size() && s.d[i + 1] % s.d[i] != 0) return false;
    }
    mpz_class du = s.U.det();
    if (du != 1 && du != -1) return false;
    mpz_class dv = s.V.det();
    if (dv != 1 && dv != -1) return false;

    IntMatrix prod = s.U * A * s.V;
    for (int i = 0; i < prod.rows(); ++i)
        for (int j = 0; j < prod.cols(); ++j) {
            const mpz_class want = (i == j && i < int(s.d.size())) ? s.d[i] : mpz_class(0);
            if (prod.at(i, j) != want) return false;
        }
    return true;
}

}  // namespace varcount
