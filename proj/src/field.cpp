#include "varcount/field.hpp"

#include <cctype>

namespace varcount {

namespace {

bool is_prime_u64(uint64_t v) {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    for (uint64_t d = 3; d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t v) {
    std::vector<uint64_t> f;
    for (uint64_t d = 2; d * d <= v; d += (d == 2 ? 1 : 2)) {
        if (v % d == 0) {
            f.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) f.push_back(v);
    return f;
}

}  // namespace

const Field& Element::field() const {
    if (!fld_) throw error(errc::field_mismatch, "element has no field");
    return *fld_;
}

std::vector<uint32_t> Element::coeffs() const {
    const Field& f = field();
    std::vector<uint32_t> c(f.n());
    uint32_t v = code_;
    for (int i = 0; i < f.n(); ++i) {
        c[i] = v % f.p();
        v /= f.p();
    }
    return c;
}

std::string Element::str() const { return field().element_str(code_); }

namespace {
void check_same(const Element& a, const Element& b) {
    if (!a.field().same_field(b.field()))
        throw error(errc::field_mismatch, "operands belong to different fields");
}
}  // namespace

Element Element::operator+(const Element& o) const {
    check_same(*this, o);
    return Element(fld_, fld_->add_code(code_, o.code_));
}
Element Element::operator-(const Element& o) const {
    check_same(*this, o);
    return Element(fld_, fld_->sub_code(code_, o.code_));
}
Element Element::operator*(const Element& o) const {
    check_same(*this, o);
    return Element(fld_, fld_->mul_code(code_, o.code_));
}
Element Element::operator/(const Element& o) const {
    check_same(*this, o);
    return Element(fld_, fld_->div_code(code_, o.code_));
}
Element Element::operator-() const { return Element(fld_, field().neg_code(code_)); }
Element Element::pow(uint64_t e) const { return Element(fld_, field().pow_code(code_, e)); }
Element Element::inverse() const { return Element(fld_, field().inv_code(code_)); }

bool operator==(const Element& a, const Element& b) {
    if (a.fld_ == b.fld_) return a.code_ == b.code_;
    if (!a.fld_ || !b.fld_) return false;
    return a.fld_->same_field(*b.fld_) && a.code_ == b.code_;
}

uint32_t LogTable::ind(const Element& b) const {
    if (!alpha.field().same_field(b.field()))
        throw error(errc::field_mismatch, "element does not belong to the table's field");
    return ind_code(b.code());
}

Field::Field(uint64_t p, int n, std::optional<std::vector<long long>> modulus, FieldOptions opts) {
    if (n < 1) throw error(errc::degree_mismatch, "extension degree must be >= 1");
    if (!is_prime_u64(p)) throw error(errc::not_prime, "characteristic " + std::to_string(p) + " is not prime");
    if (p == 2 && !opts.allow_even)
        throw error(errc::even_characteristic, "characteristic 2 rejected (pass the force flag to allow it)");

    uint64_t q = 1;
    for (int i = 0; i < n; ++i) {
        q *= p;
        if (q > opts.cardinality_cap)
            throw error(errc::field_too_large,
                        "cardinality " + std::to_string(p) + "^" + std::to_string(n) +
                            " exceeds cap " + std::to_string(opts.cardinality_cap));
    }
    p_ = uint32_t(p);
    n_ = n;
    q_ = uint32_t(q);

    if (n_ == 1) {
        modulus_ = {0, 1};  // implicit; never used
    } else {
        if (!modulus)
            throw error(errc::degree_mismatch, "extension field requires a modulus polynomial");
        if (int(modulus->size()) != n_ + 1)
            throw error(errc::degree_mismatch,
                        "modulus must have degree " + std::to_string(n_) + " (" +
                            std::to_string(n_ + 1) + " coefficients)");
        modulus_.resize(n_ + 1);
        for (int i = 0; i <= n_; ++i) {
            long long c = (*modulus)[i] % (long long)p_;
            if (c < 0) c += p_;
            modulus_[i] = uint32_t(c);
        }
        if (modulus_[n_] != 1)
            throw error(errc::degree_mismatch, "modulus must be monic");
        if (!modulus_irreducible())
            throw error(errc::reducible_modulus, "modulus polynomial is reducible over F_p");
    }

    neg_.resize(q_);
    for (uint32_t a = 0; a < q_; ++a) {
        if (n_ == 1) {
            neg_[a] = a == 0 ? 0 : p_ - a;
        } else {
            uint32_t c[32];
            decode(a, c);
            for (int i = 0; i < n_; ++i) c[i] = c[i] == 0 ? 0 : p_ - c[i];
            neg_[a] = encode(c);
        }
    }

    // addition table pays off only for extension fields; prime-field add is two ops
    if (n_ > 1 && q_ <= 1024) {
        add_tbl_.resize(size_t(q_) * q_);
        for (uint32_t a = 0; a < q_; ++a) {
            uint32_t ca[32], cb[32];
            decode(a, ca);
            for (uint32_t b = 0; b < q_; ++b) {
                decode(b, cb);
                uint32_t cs[32];
                for (int i = 0; i < n_; ++i) {
                    uint32_t s = ca[i] + cb[i];
                    cs[i] = s >= p_ ? s - p_ : s;
                }
                add_tbl_[size_t(a) * q_ + b] = encode(cs);
            }
        }
    }

    // least primitive element: order exactly q-1, tested via the maximal
    // proper-divisor powers of q-1
    const uint64_t Q = q_ - 1;
    const auto factors = prime_factors(Q);
    primitive_code_ = 0;
    for (uint32_t c = 1; c < q_; ++c) {
        bool prim = true;
        for (uint64_t f : factors) {
            if (pow_nolut(c, Q / f) == 1) {
                prim = false;
                break;
            }
        }
        if (prim) {
            primitive_code_ = c;
            break;
        }
    }
    if (primitive_code_ == 0)
        throw error(errc::internal_check, "no primitive element found");  // unreachable

    exp_.resize(Q);
    log_.assign(q_, UINT32_MAX);
    uint32_t x = 1;
    for (uint64_t i = 0; i < Q; ++i) {
        exp_[i] = x;
        log_[x] = uint32_t(i);
        x = mul_nolut(x, primitive_code_);
    }
    if (x != 1) throw error(errc::internal_check, "primitive element order check failed");

    canonical_logs_.alpha = Element(this, primitive_code_);
    canonical_logs_.index_of = log_;
}

void Field::decode(uint32_t code, uint32_t* out) const {
    for (int i = 0; i < n_; ++i) {
        out[i] = code % p_;
        code /= p_;
    }
}

uint32_t Field::encode(const uint32_t* c) const {
    uint32_t v = 0;
    for (int i = n_ - 1; i >= 0; --i) v = v * p_ + c[i];
    return v;
}

uint32_t Field::mul_nolut(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (n_ == 1) return uint32_t(uint64_t(a) * b % p_);
    uint32_t ca[32], cb[32];
    decode(a, ca);
    decode(b, cb);
    uint64_t prod[63] = {0};
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) prod[i + j] += uint64_t(ca[i]) * cb[j];
    for (int d = 2 * n_ - 2; d >= n_; --d) {
        uint64_t c = prod[d] % p_;
        if (c == 0) continue;
        // x^d = -m(x) x^{d-n} + x^d, subtract c * x^{d-n} * modulus
        for (int i = 0; i <= n_; ++i) {
            uint64_t sub = c * modulus_[i] % p_;
            prod[d - n_ + i] += p_ - sub;
        }
        prod[d] = 0;  // leading term cancelled
    }
    uint32_t cr[32];
    for (int i = 0; i < n_; ++i) cr[i] = uint32_t(prod[i] % p_);
    return encode(cr);
}

uint32_t Field::pow_nolut(uint32_t base, uint64_t e) const {
    uint32_t r = 1;
    uint32_t b = base;
    while (e) {
        if (e & 1) r = mul_nolut(r, b);
        b = mul_nolut(b, b);
        e >>= 1;
    }
    return r;
}

bool Field::modulus_irreducible() const {
    // exhaustive search for a monic divisor of degree 1..n/2
    std::vector<uint32_t> div(n_ + 1), rem(n_ + 1);
    for (int d = 1; 2 * d <= n_; ++d) {
        uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p_;
        for (uint64_t idx = 0; idx < count; ++idx) {
            uint64_t v = idx;
            for (int i = 0; i < d; ++i) {
                div[i] = uint32_t(v % p_);
                v /= p_;
            }
            div[d] = 1;
            // remainder of modulus_ by div (both monic)
            rem.assign(modulus_.begin(), modulus_.end());
            for (int k = n_; k >= d; --k) {
                uint32_t c = rem[k];
                if (c == 0) continue;
                for (int i = 0; i <= d; ++i) {
                    uint64_t t = uint64_t(c) * div[i] % p_;
                    rem[k - d + i] = uint32_t((rem[k - d + i] + p_ - t) % p_);
                }
            }
            bool zero = true;
            for (int i = 0; i < d; ++i)
                if (rem[i] != 0) zero = false;
            if (zero) return false;
        }
    }
    return true;
}

Element Field::element(uint32_t code) const {
    if (code >= q_) throw error(errc::index_out_of_range, "element code out of range");
    return Element(this, code);
}

Element Field::from_int(long long v) const {
    long long r = v % (long long)p_;
    if (r < 0) r += p_;
    return Element(this, uint32_t(r));
}

Element Field::from_coeffs(const std::vector<long long>& c) const {
    if (int(c.size()) > n_)
        throw error(errc::constant_out_of_field,
                    "coefficient tuple has " + std::to_string(c.size()) +
                        " entries but the field has degree " + std::to_string(n_));
    uint32_t digits[32] = {0};
    for (size_t i = 0; i < c.size(); ++i) {
        long long r = c[i] % (long long)p_;
        if (r < 0) r += p_;
        digits[i] = uint32_t(r);
    }
    return Element(this, encode(digits));
}

LogTable Field::build_log_table(const Element& alpha) const {
    if (!alpha.field().same_field(*this))
        throw error(errc::field_mismatch, "alpha belongs to a different field");
    if (alpha.is_zero())
        throw error(errc::not_primitive, "zero is not a primitive element");
    LogTable t;
    t.alpha = Element(this, alpha.code());
    t.index_of.assign(q_, UINT32_MAX);
    const uint32_t Q = q_ - 1;
    uint32_t x = 1;
    for (uint32_t i = 0; i < Q; ++i) {
        if (i > 0 && x == 1)
            throw error(errc::not_primitive,
                        element_str(alpha.code()) + " has multiplicative order " + std::to_string(i));
        t.index_of[x] = i;
        x = mul_code(x, alpha.code());
    }
    if (x != 1) throw error(errc::internal_check, "log table power iteration did not close");
    return t;
}

bool Field::same_field(const Field& o) const {
    if (this == &o) return true;
    return p_ == o.p_ && n_ == o.n_ && modulus_ == o.modulus_;
}

uint32_t Field::add_code(uint32_t a, uint32_t b) const {
    if (n_ == 1) {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (!add_tbl_.empty()) return add_tbl_[size_t(a) * q_ + b];
    uint32_t ca[32], cb[32];
    decode(a, ca);
    decode(b, cb);
    for (int i = 0; i < n_; ++i) {
        uint32_t s = ca[i] + cb[i];
        ca[i] = s >= p_ ? s - p_ : s;
    }
    return encode(ca);
}

uint32_t Field::mul_code(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    const uint32_t Q = q_ - 1;
    if (s >= Q) s -= Q;
    return exp_[s];
}

uint32_t Field::div_code(uint32_t a, uint32_t b) const {
    if (b == 0) throw error(errc::division_by_zero, "division by zero");
    if (a == 0) return 0;
    const uint32_t Q = q_ - 1;
    uint32_t s = log_[a] + Q - log_[b];
    if (s >= Q) s -= Q;
    return exp_[s];
}

uint32_t Field::inv_code(uint32_t a) const { return div_code(1, a); }

uint32_t Field::pow_code(uint32_t base, uint64_t e) const {
    if (base == 0) return e == 0 ? 1 : 0;
    const uint32_t Q = q_ - 1;
    uint64_t er = e % Q;
    return exp_[uint64_t(log_[base]) * er % Q];
}

std::string Field::element_str(uint32_t code) const {
    if (n_ == 1) return std::to_string(code);
    std::string s = "[";
    uint32_t c[32];
    decode(code, c);
    for (int i = 0; i < n_; ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    s += ']';
    return s;
}

Element Field::parse_element(const std::string& text) const {
    auto bad = [&](const std::string& why) {
        return error(errc::syntax_error, "bad element literal '" + text + "': " + why);
    };
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    auto read_int = [&]() -> long long {
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
        if (i >= text.size() || !std::isdigit((unsigned char)text[i])) throw bad("expected integer");
        long long v = 0;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) {
            v = v * 10 + (text[i++] - '0');
            if (v > (1LL << 40)) throw bad("integer too large");
        }
        return neg ? -v : v;
    };
    skip();
    if (i < text.size() && text[i] == '[') {
        ++i;
        std::vector<long long> c;
        skip();
        if (i < text.size() && text[i] == ']') {
            ++i;
        } else {
            for (;;) {
                skip();
                c.push_back(read_int());
                skip();
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < text.size() && text[i] == ']') {
                    ++i;
                    break;
                }
                throw bad("expected ',' or ']'");
            }
        }
        skip();
        if (i != text.size()) throw bad("trailing characters");
        return from_coeffs(c);
    }
    long long v = read_int();
    skip();
    if (i != text.size()) throw bad("trailing characters");
    return from_int(v);
}

}  // namespace varcount
