#include "varcount/oracle.hpp"

#include <atomic>
#include <thread>

namespace varcount {

namespace {

uint64_t point_space(const Variety& v, uint64_t cap) {
    const uint64_t q = v.field().q();
    uint64_t total = 1;
    for (int i = 0; i < v.nt(); ++i) {
        if (total > cap / q + 1) total = cap + 1;  // saturate, avoids overflow
        else total *= q;
        if (total > cap)
            throw error(errc::cap_exceeded, "point space q^" + std::to_string(v.nt()) +
                                                " exceeds cap " + std::to_string(cap));
    }
    return total;
}

void decode_point(uint64_t idx, uint32_t q, std::vector<uint32_t>& x) {
    for (auto& c : x) {
        c = uint32_t(idx % q);
        idx /= q;
    }
}

// Scans [begin, end) of the odometer range. profile != nullptr switches on the
// per-point classification.
uint64_t scan_range(const Variety& v, uint64_t begin, uint64_t end,
                    std::vector<uint64_t>* profile) {
    const Field& F = v.field();
    const uint32_t q = F.q();
    const int m = v.m(), rt = v.rt();

    std::vector<uint32_t> x(size_t(v.nt()));
    decode_point(begin, q, x);

    uint64_t count = 0;
    for (uint64_t idx = begin; idx < end; ++idx) {
        bool on_variety = true;
        int nonzero = -1;
        for (int k = 1; k <= m && on_variety; ++k) {
            uint32_t acc = 0;
            int nz = 0;
            for (int i = 1; i <= rt; ++i) {
                const uint32_t ui = v.evaluate_monomial(k, i, x).code();
                if (ui != 0) ++nz;
                acc = F.add_code(acc, F.mul_code(v.a(k, i).code(), ui));
            }
            if (acc != v.b(k).code()) {
                on_variety = false;
                break;
            }
            if (nonzero < 0) nonzero = nz;
            else if (nz != nonzero)
                throw error(errc::structure_violation,
                            "equations disagree on the number of nonzero monomials");
        }
        if (on_variety) {
            ++count;
            if (profile) ++(*profile)[size_t(nonzero)];
        }
        // odometer step
        for (size_t j = 0; j < x.size(); ++j) {
            if (++x[j] < q) break;
            x[j] = 0;
        }
    }
    return count;
}

uint64_t run(const Variety& v, const OracleOptions& opts, std::vector<uint64_t>* profile) {
    const uint64_t total = point_space(v, opts.cap);
    const int threads = std::max(1, std::min(opts.threads, 64));

    if (threads == 1 || total < 1024) return scan_range(v, 0, total, profile);

    std::vector<std::thread> pool;
    std::vector<uint64_t> counts(size_t(threads), 0);
    std::vector<std::vector<uint64_t>> profiles(
        size_t(threads), std::vector<uint64_t>(profile ? profile->size() : 0, 0));
    std::exception_ptr err;
    std::atomic<bool> failed{false};

    const uint64_t chunk = (total + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const uint64_t lo = chunk * uint64_t(w);
        const uint64_t hi = std::min(total, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            try {
                counts[size_t(w)] =
                    scan_range(v, lo, hi, profile ? &profiles[size_t(w)] : nullptr);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed) std::rethrow_exception(err);

    uint64_t count = 0;
    for (int w = 0; w < threads; ++w) {
        count += counts[size_t(w)];
        if (profile)
            for (size_t i = 0; i < profile->size(); ++i) (*profile)[i] += profiles[size_t(w)][i];
    }
    return count;
}

}  // namespace

uint64_t brute_count(const Variety& v, const OracleOptions& opts) {
    return run(v, opts, nullptr);
}

std::vector<uint64_t> partition_profile(const Variety& v, const OracleOptions& opts) {
    std::vector<uint64_t> profile(size_t(v.rt()) + 1, 0);
    run(v, opts, &profile);
    return profile;
}

}  // namespace varcount
