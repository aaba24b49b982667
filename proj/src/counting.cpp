#include "varcount/counting.hpp"

#include <chrono>
#include <map>

namespace varcount {

namespace {

uint64_t now_ns() {
    return uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now().time_since_epoch())
                        .count());
}

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpz_class exact_div(const mpz_class& num, const mpz_class& den) {
    mpz_class qv, rv;
    mpz_tdiv_qr(qv.get_mpz_t(), rv.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rv != 0) throw error(errc::internal_check, "count formula division is not exact");
    return qv;
}

}  // namespace

const char* level_path_name(LevelPath p) {
    return p == LevelPath::general ? "general" : "closed_form";
}

mpz_class hyperplane_count(int k, bool c_is_zero, const mpz_class& q) {
    if (k < 1) throw error(errc::invalid_argument, "equation length must be >= 1");
    const mpz_class qm1 = q - 1;
    const int sign = k % 2 == 0 ? 1 : -1;
    if (c_is_zero) return exact_div(pow_mpz(qm1, k) + sign * qm1, q);
    return exact_div(pow_mpz(qm1, k) - sign, q);
}

mpz_class hyperplane_product_count(int m, int k, int zero_count, const mpz_class& q) {
    if (m < 1 || zero_count < 0 || zero_count > m)
        throw error(errc::invalid_argument, "need 0 <= zero_count <= m");
    const mpz_class qm1 = q - 1;
    const int sign = k % 2 == 0 ? 1 : -1;
    mpz_class num = pow_mpz(qm1, zero_count);
    num *= pow_mpz(pow_mpz(qm1, k - 1) + sign, zero_count);
    num *= pow_mpz(pow_mpz(qm1, k) - sign, m - zero_count);
    return exact_div(num, pow_mpz(q, m));
}

namespace {

// per-level data gathered once and shared by count_points / count_Nl
struct LevelSnf {
    SnfDecomposition snf;
    int rows;
    std::vector<mpz_class> gcds;  // gcd(q-1, d_j), j <= rank
    bool closed_form;             // rank == rows and all gcds == 1
};

LevelSnf analyze_level(const Variety& v, int l) {
    const mpz_class Q = mpz_class(v.field().q()) - 1;
    LevelSnf out{smith_normal_form(v.level_matrix(l)), v.m() * v.r()[size_t(l - 1)], {}, false};
    out.closed_form = out.snf.rank() == out.rows;
    for (const mpz_class& d : out.snf.d) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), Q.get_mpz_t(), d.get_mpz_t());
        if (g != 1) out.closed_form = false;
        out.gcds.push_back(std::move(g));
    }
    return out;
}

// Solution set of equation k at level l: the index vectors of all tuples
// (u_1,...,u_{r_l}) over nonzero coordinates with sum a_i u_i = b_k. The first
// r_l - 1 coordinates run free; the last is solved and kept when nonzero.
std::vector<uint32_t> build_solution_inds(const Variety& v, int k, int rl, const LogTable& logs) {
    const Field& F = v.field();
    const uint32_t q = F.q();
    std::vector<uint32_t> a(static_cast<size_t>(rl));
    for (int i = 0; i < rl; ++i) a[size_t(i)] = v.a(k, i + 1).code();
    const uint32_t bk = v.b(k).code();

    std::vector<uint32_t> flat;
    if (rl == 1) {
        if (bk != 0) flat.push_back(logs.ind_code(F.div_code(bk, a[0])));
        return flat;
    }
    std::vector<uint32_t> u(size_t(rl) - 1, 1);
    for (;;) {
        uint32_t sum = 0;
        for (int i = 0; i + 1 < rl; ++i) sum = F.add_code(sum, F.mul_code(a[size_t(i)], u[size_t(i)]));
        const uint32_t last = F.div_code(F.sub_code(bk, sum), a[size_t(rl) - 1]);
        if (last != 0) {
            for (int i = 0; i + 1 < rl; ++i) flat.push_back(logs.ind_code(u[size_t(i)]));
            flat.push_back(logs.ind_code(last));
        }
        int i = 0;
        while (i + 1 < rl && ++u[size_t(i)] == q) u[size_t(i++)] = 1;
        if (i + 1 == rl) break;
    }
    return flat;
}

mpz_class count_Nl_impl(const Variety& v, int l, const LevelSnf& ls, const LogTable& logs,
                        uint64_t work_cap) {
    if (work_cap > 2000000000ULL)
        throw error(errc::invalid_argument, "work cap above 2e9 would overflow the counters");
    const Field& F = v.field();
    const mpz_class q = F.q();
    const uint32_t Q = F.q() - 1;
    const int m = v.m();
    const int rl = v.r()[size_t(l - 1)];
    const int rows = m * rl;

    // enumeration behind each solution set
    const mpz_class per_eq = pow_mpz(mpz_class(Q), rl - 1);
    if (per_eq > work_cap)
        throw error(errc::resource_limit, "level " + std::to_string(l) + " solution sets need " +
                                              per_eq.get_str() + " tuples per equation (cap " +
                                              std::to_string(work_cap) + ")");

    int zero_count = 0;
    std::vector<std::vector<uint32_t>> sets(static_cast<size_t>(m));  // ind vectors, stride rl
    for (int k = 1; k <= m; ++k) {
        if (v.b(k).is_zero()) ++zero_count;
        sets[size_t(k - 1)] = build_solution_inds(v, k, rl, logs);
        const mpz_class expect = hyperplane_count(rl, v.b(k).is_zero(), q);
        if (mpz_class(sets[size_t(k - 1)].size() / size_t(rl)) != expect)
            throw error(errc::internal_check, "solution set size disagrees with the closed form");
    }
    mpz_class product = 1;
    for (const auto& s : sets) product *= mpz_class(s.size() / size_t(rl));
    if (product != hyperplane_product_count(m, rl, zero_count, q))
        throw error(errc::internal_check, "product of set sizes disagrees with the closed form");
    if (product == 0) return 0;

    // rows with gcd(q-1, d_i) = 1 constrain nothing; below the rank the modulus
    // is q-1 itself
    std::vector<int> active;
    std::vector<uint32_t> mods;
    for (int i = 0; i < rows; ++i) {
        uint32_t g = i < ls.snf.rank() ? uint32_t(ls.gcds[size_t(i)].get_ui()) : Q;
        if (g > 1) {
            active.push_back(i);
            mods.push_back(g);
        }
    }
    if (active.empty()) return product;

    // U reduced mod q-1, restricted to the active rows
    const int na = int(active.size());
    std::vector<uint32_t> Ured(size_t(na) * rows);
    for (int ai = 0; ai < na; ++ai)
        for (int j = 0; j < rows; ++j) {
            mpz_class c = ls.snf.U.at(active[size_t(ai)], j) % Q;
            if (c < 0) c += Q;
            Ured[size_t(ai) * rows + j] = uint32_t(c.get_ui());
        }

    // signature of one equation-k tuple: its additive contribution to U h,
    // reduced into the active rows' moduli
    auto signature = [&](int k, const uint32_t* h, uint32_t* out) {
        const int base = (k - 1) * rl;
        for (int ai = 0; ai < na; ++ai) {
            uint64_t acc = 0;
            for (int j = 0; j < rl; ++j)
                acc += uint64_t(Ured[size_t(ai) * rows + base + j]) * h[j];
            out[ai] = uint32_t(acc % mods[size_t(ai)]);
        }
    };

    if (m == 1) {
        uint64_t count = 0;
        std::vector<uint32_t> sig(static_cast<size_t>(na));
        const auto& s = sets[0];
        for (size_t off = 0; off < s.size(); off += size_t(rl)) {
            signature(1, s.data() + off, sig.data());
            bool ok = true;
            for (int ai = 0; ai < na; ++ai) ok &= sig[size_t(ai)] == 0;
            count += ok;
        }
        return mpz_class(count);
    }

    // convolution: hold the smallest set in a signature -> multiplicity map and
    // stream the product of the remaining sets against it
    int kmap = 0;
    for (int k = 1; k < m; ++k)
        if (sets[size_t(k)].size() < sets[size_t(kmap)].size()) kmap = k;

    mpz_class stream = 1;
    for (int k = 0; k < m; ++k)
        if (k != kmap) stream *= mpz_class(sets[size_t(k)].size() / size_t(rl));
    if (stream > work_cap)
        throw error(errc::resource_limit,
                    "level " + std::to_string(l) + " filter would stream " + stream.get_str() +
                        " combinations (cap " + std::to_string(work_cap) + ")");

    std::map<std::vector<uint32_t>, uint64_t> freq;
    {
        std::vector<uint32_t> sig(static_cast<size_t>(na));
        const auto& s = sets[size_t(kmap)];
        for (size_t off = 0; off < s.size(); off += size_t(rl)) {
            signature(kmap + 1, s.data() + off, sig.data());
            ++freq[sig];
        }
    }

    // materialized signatures for the streamed equations
    std::vector<std::vector<uint32_t>> sigs;  // per streamed equation, stride na
    std::vector<int> streamed;
    for (int k = 0; k < m; ++k) {
        if (k == kmap) continue;
        streamed.push_back(k);
        std::vector<uint32_t> flat;
        flat.reserve(sets[size_t(k)].size() / size_t(rl) * size_t(na));
        std::vector<uint32_t> sig(static_cast<size_t>(na));
        const auto& s = sets[size_t(k)];
        for (size_t off = 0; off < s.size(); off += size_t(rl)) {
            signature(k + 1, s.data() + off, sig.data());
            flat.insert(flat.end(), sig.begin(), sig.end());
        }
        sigs.push_back(std::move(flat));
    }

    uint64_t count = 0;
    std::vector<uint32_t> partial(size_t(na) * (streamed.size() + 1), 0);
    std::vector<uint32_t> need(static_cast<size_t>(na));
    // iterative odometer over the streamed tuples, accumulating partial sums
    std::vector<size_t> pos(streamed.size(), 0);
    const size_t depth_n = streamed.size();
    size_t depth = 0;
    for (;;) {
        if (pos[depth] * size_t(na) >= sigs[depth].size()) {
            if (depth == 0) break;
            pos[depth] = 0;
            ++pos[--depth];
            continue;
        }
        const uint32_t* prev = partial.data() + depth * size_t(na);
        uint32_t* cur = partial.data() + (depth + 1) * size_t(na);
        const uint32_t* sg = sigs[depth].data() + pos[depth] * size_t(na);
        for (int ai = 0; ai < na; ++ai) {
            uint32_t sum = prev[ai] + sg[ai];
            cur[ai] = sum >= mods[size_t(ai)] ? sum - mods[size_t(ai)] : sum;
        }
        if (depth + 1 < depth_n) {
            ++depth;
            continue;
        }
        for (int ai = 0; ai < na; ++ai)
            need[size_t(ai)] = cur[ai] == 0 ? 0 : mods[size_t(ai)] - cur[ai];
        auto it = freq.find(need);
        if (it != freq.end()) count += it->second;
        ++pos[depth];
    }
    return mpz_class(count);
}

}  // namespace

mpz_class count_Nl(const Variety& v, int l, const LogTable& logs, uint64_t work_cap) {
    if (l < 1 || l > v.t()) throw error(errc::level_out_of_range, "level out of range");
    return count_Nl_impl(v, l, analyze_level(v, l), logs, work_cap);
}

mpz_class level_term(const Variety& v, int l, const mpz_class& Nl, const SnfDecomposition& snf) {
    if (l < 1 || l > v.t()) throw error(errc::level_out_of_range, "level out of range");
    const mpz_class q = v.field().q();
    const mpz_class Q = q - 1;
    const int s = snf.rank();
    const int nl = v.nvar()[size_t(l - 1)];
    const int nt = v.nt();

    mpz_class gcd_prod = 1;
    for (const mpz_class& d : snf.d) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), Q.get_mpz_t(), d.get_mpz_t());
        gcd_prod *= g;
    }

    if (l == v.t()) return Nl * pow_mpz(Q, nt - s) * gcd_prod;

    const int nl1 = v.nvar()[size_t(l)];
    return Nl * pow_mpz(q, nt - nl1) * pow_mpz(Q, nl - s) *
           (pow_mpz(q, nl1 - nl) - pow_mpz(Q, nl1 - nl)) * gcd_prod;
}

mpz_class zero_level_term(const Variety& v) {
    const mpz_class q = v.field().q();
    const mpz_class Q = q - 1;
    const int n1 = v.nvar().front();
    return pow_mpz(q, v.nt() - n1) * (pow_mpz(q, n1) - pow_mpz(Q, n1));
}

bool closed_form_applicable(const Variety& v) {
    for (int l = 1; l <= v.t(); ++l)
        if (!analyze_level(v, l).closed_form) return false;
    return true;
}

CountReport count_points(const Variety& v, const CountOptions& opts) {
    const uint64_t start = now_ns();
    const Field& F = v.field();
    const mpz_class q = F.q();

    CountReport rep;
    rep.field = v.shared_field();
    rep.m = v.m();
    rep.t = v.t();
    rep.r = v.r();
    rep.nvar = v.nvar();
    rep.includes_zero_level = v.all_b_zero();

    int zero_count = 0;
    for (int k = 1; k <= v.m(); ++k)
        if (v.b(k).is_zero()) ++zero_count;

    std::vector<LevelSnf> per_level;
    bool need_general = false;
    for (int l = 1; l <= v.t(); ++l) {
        per_level.push_back(analyze_level(v, l));
        if (!per_level.back().closed_form) need_general = true;
    }

    std::optional<LogTable> table;
    if (need_general) {
        table = opts.alpha ? F.build_log_table(*opts.alpha)
                           : F.build_log_table(F.primitive_element());
        rep.alpha = table->alpha;
    }

    rep.total = 0;
    for (int l = 1; l <= v.t(); ++l) {
        const uint64_t lvl_start = now_ns();
        LevelSnf& ls = per_level[size_t(l - 1)];
        LevelData ld;
        ld.l = l;
        ld.s = ls.snf.rank();
        ld.gcds = ls.gcds;
        const int rl = v.r()[size_t(l - 1)];
        for (int k = 1; k <= v.m(); ++k)
            ld.set_sizes.push_back(hyperplane_count(rl, v.b(k).is_zero(), q));
        if (ls.closed_form) {
            ld.path = LevelPath::closed_form;
            ld.N = hyperplane_product_count(v.m(), rl, zero_count, q);
        } else {
            ld.path = LevelPath::general;
            ld.N = count_Nl_impl(v, l, ls, *table, opts.work_cap);
        }
        ld.term = level_term(v, l, ld.N, ls.snf);
        rep.total += ld.term;
        ld.snf = std::move(ls.snf);
        ld.ns = now_ns() - lvl_start;
        rep.levels.push_back(std::move(ld));
    }

    rep.zero_term = 0;
    if (rep.includes_zero_level) {
        rep.zero_term = zero_level_term(v);
        rep.total += rep.zero_term;
    }

    if (rep.total < 0 || rep.total > pow_mpz(q, v.nt()))
        throw error(errc::internal_check, "total outside [0, q^{n_t}]");

    rep.total_ns = now_ns() - start;
    return rep;
}

}  // namespace varcount
