#include "hlie/combinatorics.hpp"

#include "hlie/errors.hpp"

#include <algorithm>

namespace hlie {

std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<IndexTuple> combinations(int n, int k) {
    std::vector<IndexTuple> out;
    if (k < 0 || k > n) return out;
    IndexTuple c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

int combination_rank(std::span<const int> tuple, int n) {
    const int k = static_cast<int>(tuple.size());
    std::int64_t rank = 0;
    int previous = -1;
    for (int pos = 0; pos < k; ++pos) {
        const int v = tuple[static_cast<std::size_t>(pos)];
        if (v <= previous || v >= n) throw UsageError("combination_rank: tuple is not strictly increasing in range");
        for (int skipped = previous + 1; skipped < v; ++skipped) rank += binomial(n - 1 - skipped, k - 1 - pos);
        previous = v;
    }
    return static_cast<int>(rank);
}

int permutation_sign(std::span<const int> perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

SortedTuple sort_tuple(std::span<const int> tuple) {
    SortedTuple out;
    out.sign = permutation_sign(tuple);
    out.sorted.assign(tuple.begin(), tuple.end());
    std::sort(out.sorted.begin(), out.sorted.end());
    out.repeated = std::adjacent_find(out.sorted.begin(), out.sorted.end()) != out.sorted.end();
    return out;
}

std::vector<Shuffle> shuffles(int p, int q) {
    if (p < 0 || q < 0) throw UsageError("shuffles: negative block size");
    std::vector<Shuffle> out;
    for (const auto& head : combinations(p + q, p)) {
        Shuffle s;
        s.perm = head;
        for (int i = 0; i < p + q; ++i)
            if (!std::binary_search(head.begin(), head.end(), i)) s.perm.push_back(i);
        s.sign = permutation_sign(s.perm);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace hlie
