#ifndef VIR_PARTITION_HPP
#define VIR_PARTITION_HPP

#include <map>
#include <string>
#include <vector>

#include "vir/errors.hpp"

namespace vir {

/* Weakly decreasing list of positive parts; the empty list is the level-0 basis element. */
using Partition = std::vector<long>;

inline long level_of(const Partition& p) {
    long n = 0;
    for (long k : p) n += k;
    return n;
}

/*
 * Basis order within a level: [n] first, all-ones last. Comparing two
 * partitions lexicographically with larger parts first realizes that order
 * and stays a strict total order across levels, which map keys need.
 */
struct PartLess {
    bool operator()(const Partition& x, const Partition& y) const {
        return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
    }
};

inline std::vector<Partition> partitions_into(long n, long maxpart) {
    std::vector<Partition> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    for (long k = std::min(n, maxpart); k >= 1; --k) {
        for (auto& tail : partitions_into(n - k, k)) {
            Partition p;
            p.reserve(tail.size() + 1);
            p.push_back(k);
            p.insert(p.end(), tail.begin(), tail.end());
            out.push_back(std::move(p));
        }
    }
    return out;
}

/* Cached monomial basis of a graded level, in the order described above. */
inline const std::vector<Partition>& level_basis(long n) {
    if (n < 0) throw InvalidParameters("level must be nonnegative");
    static std::vector<std::vector<Partition>> cache;
    while (static_cast<long>(cache.size()) <= n)
        cache.push_back(partitions_into(static_cast<long>(cache.size()),
                                        static_cast<long>(cache.size())));
    return cache[static_cast<size_t>(n)];
}

/* p(n) by the pentagonal number recurrence. */
inline long long partition_count(long n) {
    if (n < 0) return 0;
    static std::vector<long long> p{1};
    while (static_cast<long>(p.size()) <= n) {
        long m = static_cast<long>(p.size());
        long long v = 0;
        for (long k = 1;; ++k) {
            long g1 = k * (3 * k - 1) / 2;
            long g2 = k * (3 * k + 1) / 2;
            if (g1 > m && g2 > m) break;
            long long sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= m) v += sign * p[m - g1];
            if (g2 <= m) v += sign * p[m - g2];
        }
        p.push_back(v);
    }
    return p[static_cast<size_t>(n)];
}

inline std::string partition_str(const Partition& p) {
    std::string s = "[";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + "]";
}

} // namespace vir

#endif
