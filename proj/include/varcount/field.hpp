#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varcount/errors.hpp"

namespace varcount {

class Field;

// Element of F_q in polynomial-basis coordinates c_0 + c_1 x + ... + c_{n-1} x^{n-1},
// stored as the dense code sum_i c_i p^i with every c_i in [0, p). Increasing code
// is the canonical enumeration order (constant coordinate varies fastest), and code
// equality is coordinate-wise equality.
class Element {
public:
    Element() = default;

    uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }
    const Field& field() const;
    std::vector<uint32_t> coeffs() const;

    // Canonical text form: decimal residue for prime fields, "[c0,c1,...]" otherwise.
    std::string str() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element operator/(const Element& o) const;
    Element operator-() const;
    Element pow(uint64_t e) const;
    Element inverse() const;

    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
    friend class Field;
    Element(const Field* f, uint32_t c) : fld_(f), code_(c) {}

    const Field* fld_ = nullptr;
    uint32_t code_ = 0;
};

// Discrete-logarithm table with respect to a primitive element alpha:
// alpha^{ind(b)} = b for every nonzero b, with ind(b) in [0, q-2].
struct LogTable {
    Element alpha;
    std::vector<uint32_t> index_of;  // indexed by element code; entry for 0 is a sentinel

    uint32_t ind_code(uint32_t code) const {
        if (code == 0)
            throw error(errc::invalid_argument, "index of zero is undefined");
        return index_of[code];
    }
    uint32_t ind(const Element& b) const;
};

struct FieldOptions {
    bool allow_even = false;  // permit p = 2 for experimentation
    uint64_t cardinality_cap = uint64_t(1) << 16;
};

// The finite field F_q, q = p^n. Immutable after construction; all operations are
// pure, so a Field may be shared freely across threads. Non-copyable because
// Elements hold a pointer back to their field.
class Field {
public:
    static constexpr uint64_t kDefaultCardinalityCap = uint64_t(1) << 16;

    using Options = FieldOptions;

    // Validates p prime (odd unless allow_even), n >= 1, q within the cap, and the
    // modulus monic of degree n and irreducible over F_p (exhaustive divisor search).
    // The modulus is given by ascending-degree coefficients and is ignored for n = 1.
    Field(uint64_t p, int n = 1,
          std::optional<std::vector<long long>> modulus = std::nullopt,
          FieldOptions opts = {});

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;
    Field(Field&&) = delete;
    Field& operator=(Field&&) = delete;

    uint32_t p() const { return p_; }
    int n() const { return n_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    Element zero() const { return Element(this, 0); }
    Element one() const { return Element(this, 1); }
    Element element(uint32_t code) const;
    Element from_int(long long v) const;
    Element from_coeffs(const std::vector<long long>& c) const;

    // Least nonzero element (in code order) of multiplicative order q - 1.
    Element primitive_element() const { return Element(this, primitive_code_); }

    // Index table for an arbitrary primitive alpha; throws NotPrimitive otherwise.
    LogTable build_log_table(const Element& alpha) const;
    const LogTable& canonical_log_table() const { return canonical_logs_; }

    bool same_field(const Field& o) const;

    // code-level arithmetic (used by hot loops; the Element operators wrap these)
    uint32_t add_code(uint32_t a, uint32_t b) const;
    uint32_t sub_code(uint32_t a, uint32_t b) const { return add_code(a, neg_[b]); }
    uint32_t neg_code(uint32_t a) const { return neg_[a]; }
    uint32_t mul_code(uint32_t a, uint32_t b) const;
    uint32_t div_code(uint32_t a, uint32_t b) const;
    uint32_t inv_code(uint32_t a) const;
    uint32_t pow_code(uint32_t base, uint64_t e) const;

    std::string element_str(uint32_t code) const;
    // Parses the canonical element text form (decimal or "[c0,c1,...]").
    Element parse_element(const std::string& text) const;

private:
    void decode(uint32_t code, uint32_t* out) const;
    uint32_t encode(const uint32_t* c) const;
    uint32_t mul_nolut(uint32_t a, uint32_t b) const;
    uint32_t pow_nolut(uint32_t base, uint64_t e) const;
    bool modulus_irreducible() const;

    uint32_t p_ = 0;
    int n_ = 0;
    uint32_t q_ = 0;
    std::vector<uint32_t> modulus_;   // n+1 ascending coefficients, monic
    uint32_t primitive_code_ = 0;
    std::vector<uint32_t> exp_;       // exp_[i] = code of alpha^i, i in [0, q-2]
    std::vector<uint32_t> log_;       // inverse of exp_ on nonzero codes
    std::vector<uint32_t> neg_;
    std::vector<uint32_t> add_tbl_;   // q*q table for small extension fields
    LogTable canonical_logs_;
};

}  // namespace varcount
