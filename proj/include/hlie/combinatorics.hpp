#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hlie {

using IndexTuple = std::vector<int>;

std::int64_t binomial(int n, int k);

/// All strictly increasing k-tuples from {0,...,n-1}, lexicographic.
std::vector<IndexTuple> combinations(int n, int k);

/// Position of a strictly increasing tuple in the lexicographic order of combinations(n, size).
int combination_rank(std::span<const int> tuple, int n);

/// +1 / -1 by inversion count.
int permutation_sign(std::span<const int> perm);

/// Result of sorting a basis-index tuple: the sorted tuple, the sign of the sorting
/// permutation, and whether an index repeats (the alternating value is then zero).
struct SortedTuple {
    IndexTuple sorted;
    int sign = 1;
    bool repeated = false;
};
SortedTuple sort_tuple(std::span<const int> tuple);

/// An (p,q)-unshuffle: sigma(0..p-1) increasing and sigma(p..p+q-1) increasing.
struct Shuffle {
    IndexTuple perm; // perm[k] = sigma(k+1) - 1
    int sign = 1;
};

/// Sh(p,q), generated as lexicographically ordered p-subsets of {0,...,p+q-1}.
std::vector<Shuffle> shuffles(int p, int q);

} // namespace hlie
