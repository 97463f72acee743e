// Seeded random combinatorial objects for property tests and verification
// commands: partitions, KdV subsets (random mutation walks from S^∅), and
// mKdV tuples (random base subset + random permutation).
#pragma once

#include "combin.hpp"
#include "sampling.hpp"

namespace mkdv {

inline Partition random_partition(Sampler& s, long max_weight) {
    std::vector<long> parts;
    long budget = s.int_in(0, max_weight);
    long cap = budget;
    while (budget > 0 && cap > 0) {
        long p = s.int_in(1, cap);
        if (p > budget) p = budget;
        parts.push_back(p);
        budget -= p;
        cap = p;
    }
    return Partition(std::move(parts));
}

// Random KdV subset reached by a mutation walk from S^∅; resampled until the
// weight bound is met (mutations from S^∅ grow the weight slowly, so small
// bounds are reachable).
inline KdVSet random_kdv_set(Sampler& s, int n, long max_weight, int max_steps = 6) {
    while (true) {
        KdVSet k(Maya(), n);
        int steps = int(s.int_in(0, max_steps));
        for (int i = 0; i < steps; ++i) {
            std::vector<long> a = leading_term(k);
            k = mutate_kdv(k, a[size_t(s.int_in(0, n - 1))]);
        }
        if (maya_to_partition(k.s).weight() <= max_weight) return k;
    }
}

inline std::vector<int> random_permutation(Sampler& s, int n) {
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i + 1;
    for (int i = n - 1; i > 0; --i)
        std::swap(sigma[i], sigma[size_t(s.int_in(0, i))]);
    return sigma;
}

inline MKdVSetTuple random_mkdv_tuple(Sampler& s, int n, long max_weight,
                                      int max_steps = 4) {
    KdVSet base = random_kdv_set(s, n, max_weight, max_steps);
    return build_tuple(base, random_permutation(s, n));
}

// Random degree-increasing generation sequence of length m (uniform step
// choices, retried until degree increasing; the cyclic sequence always
// qualifies, so this terminates).
inline GenSeq random_degree_increasing_seq(Sampler& s, int n, int m, int tries = 64) {
    for (int t = 0; t < tries; ++t) {
        GenSeq j;
        for (int i = 0; i < m; ++i) j.push_back(int(s.int_in(1, n)));
        if (is_degree_increasing(j, n)) return j;
    }
    return cyclic_sequence(n, m);
}

} // namespace mkdv
