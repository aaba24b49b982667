#pragma once

#include <optional>

#include "varcount/snf.hpp"
#include "varcount/variety.hpp"

namespace varcount {

// Number of (x_1,...,x_k) over nonzero coordinates with c_1 x_1 + ... + c_k x_k = c.
// Depends only on k and whether c = 0, not on the nonzero coefficients.
mpz_class hyperplane_count(int k, bool c_is_zero, const mpz_class& q);

// Product form over m disjoint-variable equations of length k, zero_count of which
// have zero right-hand side.
mpz_class hyperplane_product_count(int m, int k, int zero_count, const mpz_class& q);

enum class LevelPath { general, closed_form };

const char* level_path_name(LevelPath p);

// Everything computed for one level l: the stacked exponent matrix truncation,
// its normal form, the filtered solution count N_l and the level's contribution
// to the total.
struct LevelData {
    int l = 0;
    SnfDecomposition snf{IntMatrix(1, 1), IntMatrix(1, 1), {}};
    int s = 0;                       // rank of E^{(l)}
    std::vector<mpz_class> gcds;     // gcd(q-1, d_j) for j <= s
    std::vector<mpz_class> set_sizes;  // |S_k| per equation before the divisibility filter
    mpz_class N;                     // N_l
    mpz_class term;                  // level contribution
    LevelPath path = LevelPath::general;
    uint64_t ns = 0;
};

struct CountReport {
    std::shared_ptr<const Field> field;
    int m = 0, t = 0;
    std::vector<int> r, nvar;
    bool includes_zero_level = false;
    std::optional<Element> alpha;    // primitive element used; absent when no index
                                     // table was needed
    std::vector<LevelData> levels;
    mpz_class zero_term;             // 0 unless includes_zero_level
    mpz_class total;
    uint64_t total_ns = 0;
};

struct CountOptions {
    // Overrides the primitive element for the index tables (must be primitive).
    std::optional<Element> alpha;
    // Bounds the work per level: the (q-1)^{r_l - 1} enumeration behind each
    // per-equation solution set, and the number of combinations streamed through
    // the divisibility filter. Must stay below ~2e9 so counters fit in 64 bits.
    uint64_t work_cap = 100000000;
};

// N_l: tuples over nonzero coordinates solving the level-l linear system whose
// stacked index vector h satisfies gcd(q-1, d_i) | (U h)_i for i <= s_l and
// (q-1) | (U h)_i above the rank. The divisibility test decomposes additively
// across the per-equation blocks of U, so the m-fold product is counted by
// convolving per-equation residue signatures instead of walking it element by
// element; the result is identical and the work drops from prod |S_k| to
// roughly sum |S_k| plus the streamed complement lookups.
mpz_class count_Nl(const Variety& v, int l, const LogTable& logs,
                   uint64_t work_cap = CountOptions{}.work_cap);

// Contribution of level l given N_l and the SNF of E^{(l)}.
mpz_class level_term(const Variety& v, int l, const mpz_class& Nl, const SnfDecomposition& snf);

// q^{n_t - n_1} (q^{n_1} - (q-1)^{n_1}), counted only when every b_k = 0.
mpz_class zero_level_term(const Variety& v);

// True when every level has full row rank s_l = m r_l with all invariant factors
// coprime to q-1; the divisibility conditions are then vacuous and each N_l has
// the closed product form.
bool closed_form_applicable(const Variety& v);

// The full point count: per-level terms plus the zero-level term when all b_k
// vanish. Levels whose SNF has full row rank with all invariant factors
// coprime to q-1 take the closed form (no index table); the rest run the
// general filter.
CountReport count_points(const Variety& v, const CountOptions& opts = {});

}  // namespace varcount
