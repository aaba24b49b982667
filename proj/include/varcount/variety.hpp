#pragma once

#include <memory>
#include <span>

#include "varcount/field.hpp"
#include "varcount/intmatrix.hpp"

namespace varcount {

// Unvalidated system data as produced by the parser or assembled by hand.
// Indices follow the block structure: equations k = 1..m each have r_t monomials;
// monomial i lives in block j+1 when r_j < i <= r_{j+1} and uses exactly the
// variables x_1 .. x_{n_{j+1}}.
struct VarietyInput {
    std::shared_ptr<const Field> field;
    int m = 0;
    int t = 0;
    std::vector<int> r;     // r_1 < ... < r_t
    std::vector<int> nvar;  // n_1 < ... < n_t
    std::vector<std::vector<uint32_t>> a;            // m x r_t coefficient codes, all nonzero
    std::vector<uint32_t> b;                         // m constant codes
    std::vector<std::vector<std::vector<long long>>> e;  // exponent rows, row i has n_{block(i)} entries
};

// Validated, immutable system of the staircase shape. Construction is only
// possible through validate().
class Variety {
public:
    static Variety validate(VarietyInput in);

    const Field& field() const { return *in_.field; }
    const std::shared_ptr<const Field>& shared_field() const { return in_.field; }
    int m() const { return in_.m; }
    int t() const { return in_.t; }
    const std::vector<int>& r() const { return in_.r; }
    const std::vector<int>& nvar() const { return in_.nvar; }
    int rt() const { return in_.r.back(); }
    int nt() const { return in_.nvar.back(); }

    // block index (1-based) of monomial i in 1..r_t
    int block_of(int i) const;

    Element a(int k, int i) const;  // k in 1..m, i in 1..r_t
    Element b(int k) const;
    bool all_b_zero() const;
    const std::vector<long long>& exponents(int k, int i) const;

    // The m*r_l x n_l stacked truncation E^{(l)}: first r_l exponent rows of each
    // equation, first n_l columns, equations stacked in order.
    IntMatrix level_matrix(int l) const;

    // x^{E^{(k)}_i} at a point given by element codes (at least n_{block(i)} of them).
    Element evaluate_monomial(int k, int i, std::span<const uint32_t> x) const;

    bool operator==(const Variety& o) const;

private:
    explicit Variety(VarietyInput in) : in_(std::move(in)) {}
    VarietyInput in_;
};

}  // namespace varcount
