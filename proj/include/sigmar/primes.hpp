// primes.hpp
// Prime table generation (sieve of Eratosthenes, segmented for large
// limits) plus the consecutive-prime ratio facts used by the density
// criterion: the exact sqrt(2) ratio scan and the index beyond which
// p_{j+1}/p_j < theta is guaranteed.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigmar {

// Thrown when an operation needs prime coverage beyond the table's sieve
// bound. required_limit names a sieve limit that would suffice.
class insufficient_table_error : public std::runtime_error {
public:
    insufficient_table_error(const std::string& what, std::uint64_t required)
        : std::runtime_error(what + " (required sieve limit: " + std::to_string(required) + ")"),
          required_limit(required) {}

    std::uint64_t required_limit;
};

namespace detail {

// Plain sieve, fine up to ~1e7.
inline std::vector<std::uint64_t> sieve_plain(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return primes;
}

// Segmented sieve for larger limits; identical output to sieve_plain.
inline std::vector<std::uint64_t> sieve_segmented(std::uint64_t limit) {
    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    const std::vector<std::uint64_t> base = sieve_plain(root);

    std::vector<std::uint64_t> primes;
    const std::uint64_t segment = 1u << 20;
    std::vector<bool> composite(segment);
    for (std::uint64_t lo = 2; lo <= limit; lo += segment) {
        const std::uint64_t hi = std::min(limit, lo + segment - 1);
        std::fill(composite.begin(), composite.end(), false);
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= hi; j += p)
                composite[j - lo] = true;
        }
        for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n)
            if (!composite[n - lo]) primes.push_back(n);
    }
    return primes;
}

} // namespace detail

// All primes <= limit, in increasing order. Indexing is 1-based so that
// prime(1) == 2, matching the usual p_i convention. Immutable once built,
// safe to share across threads.
class PrimeTable {
public:
    static constexpr std::uint64_t kDefaultLimit = 400000;

    explicit PrimeTable(std::uint64_t limit) : limit_(limit) {
        if (limit < 2)
            throw std::domain_error("PrimeTable: limit must be at least 2");
        primes_ = limit > 10'000'000 ? detail::sieve_segmented(limit)
                                     : detail::sieve_plain(limit);
    }

    std::uint64_t limit() const { return limit_; }
    std::size_t size() const { return primes_.size(); }
    const std::vector<std::uint64_t>& primes() const { return primes_; }

    // 1-based: prime(1) == 2.
    std::uint64_t prime(std::size_t i) const {
        if (i == 0 || i > primes_.size())
            throw std::out_of_range("PrimeTable: prime index " + std::to_string(i) +
                                    " out of range (table holds " +
                                    std::to_string(primes_.size()) + " primes)");
        return primes_[i - 1];
    }

    std::uint64_t largest() const { return primes_.back(); }

    // Binary cache. Purely an optimisation: a missing or stale cache is
    // always recomputable from the limit alone.
    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("PrimeTable::save: cannot open " + path);
        out.write(kCacheMagic, 8);
        write_u64(out, kCacheVersion);
        write_u64(out, limit_);
        write_u64(out, primes_.size());
        for (std::uint64_t p : primes_) write_u64(out, p);
        if (!out) throw std::runtime_error("PrimeTable::save: write failed for " + path);
    }

    static PrimeTable load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("PrimeTable::load: cannot open " + path);
        char magic[8];
        in.read(magic, 8);
        if (!in || std::memcmp(magic, kCacheMagic, 8) != 0)
            throw std::runtime_error("PrimeTable::load: bad magic in " + path);
        if (read_u64(in) != kCacheVersion)
            throw std::runtime_error("PrimeTable::load: unsupported cache version in " + path);
        PrimeTable table;
        table.limit_ = read_u64(in);
        const std::uint64_t count = read_u64(in);
        table.primes_.resize(count);
        for (std::uint64_t i = 0; i < count; ++i) table.primes_[i] = read_u64(in);
        if (!in) throw std::runtime_error("PrimeTable::load: truncated cache " + path);
        // Cheap sanity checks; a corrupt cache must never masquerade as a table.
        if (table.primes_.empty() || table.primes_.front() != 2 ||
            table.primes_.back() > table.limit_)
            throw std::runtime_error("PrimeTable::load: inconsistent cache " + path);
        for (std::size_t i = 1; i < table.primes_.size(); ++i)
            if (table.primes_[i] <= table.primes_[i - 1])
                throw std::runtime_error("PrimeTable::load: entries not increasing in " + path);
        return table;
    }

private:
    PrimeTable() = default;

    static constexpr const char* kCacheMagic = "SIGMARPT";
    static constexpr std::uint64_t kCacheVersion = 1;

    static void write_u64(std::ostream& out, std::uint64_t v) {
        char buf[8];
        for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        out.write(buf, 8);
    }
    static std::uint64_t read_u64(std::istream& in) {
        char buf[8] = {};
        in.read(buf, 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
        return v;
    }

    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> primes_;
};

inline PrimeTable build_prime_table(std::uint64_t limit) { return PrimeTable(limit); }

// Indices j (1-based, p_{j+1} within the table) where p_{j+1}/p_j >= sqrt(2).
// The comparison is exact integer arithmetic, p_{j+1}^2 >= 2 p_j^2; a float
// ratio near sqrt(2) never decides. Expected result for any limit >= 12 is
// a prefix of {1, 2, 4}.
inline std::vector<std::size_t> verify_ratio_lemma(const PrimeTable& table) {
    std::vector<std::size_t> exceptions;
    const auto& primes = table.primes();
    for (std::size_t j = 0; j + 1 < primes.size(); ++j) {
        const unsigned __int128 lhs =
            static_cast<unsigned __int128>(primes[j + 1]) * primes[j + 1];
        const unsigned __int128 rhs =
            2 * static_cast<unsigned __int128>(primes[j]) * primes[j];
        if (lhs >= rhs) exceptions.push_back(j + 1);
    }
    return exceptions;
}

namespace detail {

// 396738 is the floor of the prime-interval bound: for x >= 396738 the
// interval [x, x + x/(25 ln^2 x)] contains a prime.
inline constexpr std::uint64_t kPrimeIntervalBound = 396738;

// Upper bound on p_{j+1}/p_j implied by the prime-interval theorem when
// p_j >= x - 1: set x = p_j + 1, then p_{j+1} <= (p_j+1)(1 + 1/(25 ln^2(p_j+1))).
inline double interval_ratio_bound(double p) {
    const double lg = std::log(p + 1.0);
    return (1.0 + 1.0 / p) * (1.0 + 1.0 / (25.0 * lg * lg));
}

// Smallest x0 >= 396739 such that every prime p >= x0 provably has
// p_next/p < theta. interval_ratio_bound is decreasing, so bisect.
inline std::uint64_t analytic_ratio_threshold(double theta) {
    std::uint64_t lo = kPrimeIntervalBound + 1;
    if (interval_ratio_bound(static_cast<double>(lo)) < theta) return lo;
    std::uint64_t hi = lo;
    while (interval_ratio_bound(static_cast<double>(hi)) >= theta) {
        if (hi > (std::uint64_t{1} << 62))
            throw std::domain_error("ratio_bound_index: theta too close to 1 to bound analytically");
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (interval_ratio_bound(static_cast<double>(mid)) >= theta)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

} // namespace detail

// Smallest m0 such that p_{j+1}/p_j < theta for every j >= m0. In-table
// pairs are scanned directly; primes past the analytic threshold are
// covered by the prime-interval theorem, so the table only needs to reach
// that threshold. Throws insufficient_table_error when it does not.
inline std::size_t ratio_bound_index(const PrimeTable& table, double theta) {
    if (!(theta > 1.0))
        throw std::domain_error("ratio_bound_index: theta must exceed 1");

    const std::uint64_t handoff = detail::analytic_ratio_threshold(theta);
    if (table.largest() < handoff) {
        // Pad by the interval bound itself so the recommended limit is
        // guaranteed to contain a prime past the handoff point.
        const double x = static_cast<double>(handoff);
        const std::uint64_t required =
            static_cast<std::uint64_t>(x * detail::interval_ratio_bound(x)) + 1;
        throw insufficient_table_error(
            "ratio_bound_index: table covers primes up to " + std::to_string(table.largest()) +
            " but the scan must reach " + std::to_string(handoff), required);
    }

    const auto& primes = table.primes();
    std::size_t last_bad = 0;
    for (std::size_t j = 0; j + 1 < primes.size(); ++j) {
        if (static_cast<double>(primes[j + 1]) >= theta * static_cast<double>(primes[j]))
            last_bad = j + 1;
    }
    return last_bad + 1;
}

} // namespace sigmar
