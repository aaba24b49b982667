#include "varcount/variety.hpp"

namespace varcount {

Variety Variety::validate(VarietyInput in) {
    if (!in.field) throw error(errc::invalid_argument, "missing field");
    const Field& F = *in.field;

    if (in.m < 1) throw error(errc::invalid_argument, "at least one equation required");
    if (in.t < 1) throw error(errc::invalid_argument, "at least one block required");
    if (int(in.r.size()) != in.t || int(in.nvar.size()) != in.t)
        throw error(errc::invalid_argument, "block vectors must have length t");

    int prev_r = 0;
    for (int j = 0; j < in.t; ++j)
        if (in.r[size_t(j)] <= prev_r)
            throw error(errc::non_increasing_blocks, "monomial counts r_1 < ... < r_t violated");
        else
            prev_r = in.r[size_t(j)];
    int prev_n = 0;
    for (int j = 0; j < in.t; ++j)
        if (in.nvar[size_t(j)] <= prev_n)
            throw error(errc::non_increasing_blocks, "variable counts n_1 < ... < n_t violated");
        else
            prev_n = in.nvar[size_t(j)];

    const int rt = in.r.back();
    if (int(in.a.size()) != in.m || int(in.b.size()) != in.m || int(in.e.size()) != in.m)
        throw error(errc::invalid_argument, "per-equation data must have length m");

    for (int k = 0; k < in.m; ++k) {
        if (int(in.a[size_t(k)].size()) != rt || int(in.e[size_t(k)].size()) != rt)
            throw error(errc::invalid_argument,
                        "equation " + std::to_string(k + 1) + " must have r_t monomials");
        if (in.b[size_t(k)] >= F.q())
            throw error(errc::constant_out_of_field,
                        "constant of equation " + std::to_string(k + 1) + " is not a field element");
        for (int i = 0; i < rt; ++i) {
            uint32_t code = in.a[size_t(k)][size_t(i)];
            if (code >= F.q())
                throw error(errc::constant_out_of_field, "coefficient is not a field element");
            if (code == 0)
                throw error(errc::zero_coefficient,
                            "coefficient a_{" + std::to_string(k + 1) + "," + std::to_string(i + 1) +
                                "} must be nonzero");
            // width of monomial i is dictated by its block
            int blk = 0;
            while (in.r[size_t(blk)] < i + 1) ++blk;
            const int width = in.nvar[size_t(blk)];
            const auto& row = in.e[size_t(k)][size_t(i)];
            if (int(row.size()) != width)
                throw error(errc::block_shape_violation,
                            "monomial " + std::to_string(i + 1) + " of equation " +
                                std::to_string(k + 1) + " must use exactly variables x1..x" +
                                std::to_string(width));
            for (long long exp : row)
                if (exp < 1)
                    throw error(errc::non_positive_exponent,
                                "exponents must be positive (equation " + std::to_string(k + 1) +
                                    ", monomial " + std::to_string(i + 1) + ")");
        }
    }
    return Variety(std::move(in));
}

int Variety::block_of(int i) const {
    if (i < 1 || i > rt()) throw error(errc::index_out_of_range, "monomial index out of range");
    int blk = 0;
    while (in_.r[size_t(blk)] < i) ++blk;
    return blk + 1;
}

Element Variety::a(int k, int i) const {
    if (k < 1 || k > m() || i < 1 || i > rt())
        throw error(errc::index_out_of_range, "coefficient index out of range");
    return field().element(in_.a[size_t(k - 1)][size_t(i - 1)]);
}

Element Variety::b(int k) const {
    if (k < 1 || k > m()) throw error(errc::index_out_of_range, "equation index out of range");
    return field().element(in_.b[size_t(k - 1)]);
}

bool Variety::all_b_zero() const {
    for (uint32_t code : in_.b)
        if (code != 0) return false;
    return true;
}

const std::vector<long long>& Variety::exponents(int k, int i) const {
    if (k < 1 || k > m() || i < 1 || i > rt())
        throw error(errc::index_out_of_range, "monomial index out of range");
    return in_.e[size_t(k - 1)][size_t(i - 1)];
}

IntMatrix Variety::level_matrix(int l) const {
    if (l < 1 || l > t()) throw error(errc::level_out_of_range, "level out of range");
    const int rl = in_.r[size_t(l - 1)];
    const int nl = in_.nvar[size_t(l - 1)];
    IntMatrix E(m() * rl, nl);
    for (int k = 0; k < m(); ++k)
        for (int i = 0; i < rl; ++i) {
            const auto& row = in_.e[size_t(k)][size_t(i)];
            for (int j = 0; j < nl && j < int(row.size()); ++j)
                E.at(k * rl + i, j) = (long)row[size_t(j)];
        }
    return E;
}

Element Variety::evaluate_monomial(int k, int i, std::span<const uint32_t> x) const {
    const auto& row = exponents(k, i);
    if (x.size() < row.size())
        throw error(errc::index_out_of_range, "point has too few coordinates");
    const Field& F = field();
    uint32_t acc = 1;
    for (size_t j = 0; j < row.size(); ++j) {
        acc = F.mul_code(acc, F.pow_code(x[j], uint64_t(row[j])));
        if (acc == 0) return F.zero();
    }
    return F.element(acc);
}

bool Variety::operator==(const Variety& o) const {
    return field().same_field(o.field()) && in_.m == o.in_.m && in_.t == o.in_.t &&
           in_.r == o.in_.r && in_.nvar == o.in_.nvar && in_.a == o.in_.a && in_.b == o.in_.b &&
           in_.e == o.in_.e;
}

}  // namespace varcount
