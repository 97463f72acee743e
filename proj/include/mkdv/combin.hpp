// Partitions, subsets of Z of virtual cardinal zero (Maya sets), KdV subsets
// with their leading terms and mutations, mKdV tuples of subsets, degree
// vectors and generation sequences, and the affine Weyl action on tuples.
//
// A set is stored as head ∪ [tail, ∞): "head" is the finite sorted list of
// exceptional elements below "tail", and every integer >= tail belongs to the
// set.  Writing its elements as s_0 < s_1 < ..., virtual cardinal zero means
// s_j = j for all large j, which on this encoding is |head| = tail.
#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mkdv {

struct Partition {
    std::vector<long> parts;  // weakly decreasing, positive (trailing zeros dropped)

    Partition() = default;
    explicit Partition(std::vector<long> p) : parts(std::move(p)) {
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        for (size_t i = 0; i + 1 < parts.size(); ++i)
            if (parts[i] < parts[i + 1])
                throw std::invalid_argument("Partition: parts not weakly decreasing");
        if (!parts.empty() && parts.back() < 0)
            throw std::invalid_argument("Partition: negative part");
    }

    long weight() const { return std::accumulate(parts.begin(), parts.end(), 0L); }
    long part(size_t i) const { return i < parts.size() ? parts[i] : 0; }
    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i)
            s += (i ? "," : "") + std::to_string(parts[i]);
        return s + ")";
    }
};

class Maya {
public:
    Maya() : tail_(0) {}  // S^emptyset = {0, 1, 2, ...}

    // Builds head ∪ [tail, ∞); elements >= tail are absorbed, duplicates rejected.
    static Maya from_parts(std::vector<long> head, long tail) {
        std::sort(head.begin(), head.end());
        if (std::adjacent_find(head.begin(), head.end()) != head.end())
            throw std::invalid_argument("Maya: duplicate element");
        Maya m;
        m.tail_ = tail;
        for (long h : head)
            if (h < tail) m.head_.push_back(h);
        m.normalize();
        return m;
    }

    const std::vector<long>& head() const { return head_; }
    long tail() const { return tail_; }

    long virtual_cardinal() const { return long(head_.size()) - tail_; }
    bool is_virtual_cardinal_zero() const { return virtual_cardinal() == 0; }

    bool contains(long k) const {
        if (k >= tail_) return true;
        return std::binary_search(head_.begin(), head_.end(), k);
    }

    // j-th smallest element s_j (0-based).
    long s(long j) const {
        if (j < long(head_.size())) return head_[j];
        return tail_ + (j - long(head_.size()));
    }

    long min_element() const { return head_.empty() ? tail_ : head_.front(); }

    Maya shifted(long c) const {
        Maya m;
        m.tail_ = tail_ + c;
        m.head_.reserve(head_.size());
        for (long h : head_) m.head_.push_back(h + c);
        return m;
    }

    // Union with a finite set of new elements (must not already be present).
    Maya with(const std::vector<long>& extra) const {
        std::vector<long> h = head_;
        for (long e : extra) {
            if (contains(e))
                throw std::invalid_argument("Maya: element " + std::to_string(e) +
                                            " already present");
            h.push_back(e);
        }
        return from_parts(std::move(h), tail_);
    }

    bool subset_of(const Maya& other) const {
        for (long h : head_)
            if (!other.contains(h)) return false;
        for (long k = tail_; k < other.tail_; ++k)
            if (!other.contains(k)) return false;
        return true;
    }

    // Difference *this \ other, which is finite because both sets contain
    // every integer >= max(tail_, other.tail_).
    std::vector<long> minus(const Maya& other) const {
        std::vector<long> out;
        for (long h : head_)
            if (!other.contains(h)) out.push_back(h);
        for (long k = tail_; k < other.tail_; ++k)
            if (!other.contains(k)) out.push_back(k);
        // Elements >= max(tail_, other.tail_) lie in both sets.
        return out;
    }

    friend bool operator==(const Maya& a, const Maya& b) {
        return a.tail_ == b.tail_ && a.head_ == b.head_;
    }
    friend bool operator!=(const Maya& a, const Maya& b) { return !(a == b); }
    friend bool operator<(const Maya& a, const Maya& b) {
        return std::tie(a.tail_, a.head_) < std::tie(b.tail_, b.head_);
    }

    std::string str() const {
        std::string s = "{";
        for (long h : head_) s += std::to_string(h) + ",";
        return s + std::to_string(tail_) + ",...}";
    }

private:
    void normalize() {
        while (!head_.empty() && head_.back() == tail_ - 1) {
            head_.pop_back();
            --tail_;
        }
    }

    std::vector<long> head_;
    long tail_;
};

// ---- Partition <-> Maya bijection (virtual cardinal zero): λ_i = i - s_i ----

inline Partition maya_to_partition(const Maya& s) {
    if (!s.is_virtual_cardinal_zero())
        throw std::invalid_argument("maya_to_partition: virtual cardinal != 0");
    std::vector<long> parts;
    for (long i = 0; i < long(s.head().size()); ++i) parts.push_back(i - s.s(i));
    return Partition(std::move(parts));
}

inline Maya partition_to_maya(const Partition& lambda) {
    std::vector<long> head;
    long n = long(lambda.parts.size());
    for (long i = 0; i < n; ++i) head.push_back(i - lambda.parts[i]);
    return Maya::from_parts(std::move(head), n);
}

// ------------------------------- KdV subsets -------------------------------

struct KdVSet {
    Maya s;
    int N = 2;

    KdVSet() = default;
    KdVSet(Maya set, int n) : s(std::move(set)), N(n) {
        if (n < 2) throw std::invalid_argument("KdVSet: N must exceed 1");
    }

    bool is_kdv() const { return s.shifted(N).subset_of(s); }
    friend bool operator==(const KdVSet& a, const KdVSet& b) {
        return a.N == b.N && a.s == b.s;
    }
};

// Leading term A = S \ (S+N): the unique N-element set with S = A ∪ (S+N).
inline std::vector<long> leading_term(const KdVSet& k) {
    if (!k.is_kdv()) throw std::invalid_argument("leading_term: not a KdV subset");
    std::vector<long> a = k.s.minus(k.s.shifted(k.N));
    // S ⊇ [tail, ∞) still contributes elements a with a-N missing:
    for (long v = k.s.tail(); v < k.s.tail() + k.N; ++v)
        if (!k.s.contains(v - k.N) && !std::binary_search(a.begin(), a.end(), v))
            a.push_back(v);
    std::sort(a.begin(), a.end());
    if (long(a.size()) != k.N)
        throw std::logic_error("leading_term: expected exactly N elements");
    return a;
}

// Theorem-level characterization: Σ a_i = N(N-1)/2 and entries pairwise
// distinct mod N.
inline bool validate_leading(const std::vector<long>& a, int n) {
    if (long(a.size()) != n) return false;
    long sum = std::accumulate(a.begin(), a.end(), 0L);
    if (sum != long(n) * (n - 1) / 2) return false;
    std::vector<long> res;
    for (long v : a) res.push_back(((v % n) + n) % n);
    std::sort(res.begin(), res.end());
    return std::adjacent_find(res.begin(), res.end()) == res.end();
}

inline KdVSet from_leading_term(const std::vector<long>& a, int n) {
    if (!validate_leading(a, n))
        throw std::invalid_argument("from_leading_term: invalid leading term");
    long hi = *std::max_element(a.begin(), a.end());
    std::vector<long> head;
    for (long v : a)
        for (long x = v; x <= hi; x += n) head.push_back(x);
    KdVSet k(Maya::from_parts(std::move(head), hi + 1), n);
    if (!k.s.is_virtual_cardinal_zero())
        throw std::invalid_argument("from_leading_term: not virtual cardinal zero");
    return k;
}

// Mutation S[a] = {a+1-N} ∪ (S+1) at a leading element a.
inline KdVSet mutate_kdv(const KdVSet& k, long a) {
    std::vector<long> lead = leading_term(k);
    if (!std::binary_search(lead.begin(), lead.end(), a))
        throw std::invalid_argument("mutate_kdv: a is not a leading element");
    return KdVSet(k.s.shifted(1).with({a + 1 - k.N}), k.N);
}

inline long kdv_width(const KdVSet& k) {
    std::vector<long> a = leading_term(k);
    return a.back() - a.front();
}

// Reduction to S^∅ by always mutating at the maximal leading element; the
// width a_N - a_1 strictly decreases until it reaches N-1 (i.e. S = S^∅).
inline std::vector<long> reduce_kdv_to_empty(KdVSet k) {
    std::vector<long> trace;
    long width = kdv_width(k);
    while (!(k.s == Maya())) {
        std::vector<long> a = leading_term(k);
        trace.push_back(a.back());
        k = mutate_kdv(k, a.back());
        long w = kdv_width(k);
        if (w >= width) throw std::logic_error("reduce_kdv_to_empty: width did not decrease");
        width = w;
    }
    return trace;
}

// ------------------------------- mKdV tuples -------------------------------

struct MKdVSetTuple {
    std::vector<Maya> members;  // S_1, ..., S_N
    int N = 2;

    MKdVSetTuple() = default;
    MKdVSetTuple(std::vector<Maya> m, int n) : members(std::move(m)), N(n) {
        if (long(members.size()) != N)
            throw std::invalid_argument("MKdVSetTuple: wrong arity");
    }

    const Maya& at(int i) const {  // 1-based, cyclic
        int idx = ((i - 1) % N + N) % N;
        return members[idx];
    }

    bool is_valid() const {
        for (int i = 0; i < N; ++i) {
            if (!KdVSet(members[i], N).is_kdv()) return false;
            if (!members[i].shifted(1).subset_of(members[(i + 1) % N])) return false;
        }
        return true;
    }

    bool is_empty_tuple() const {
        for (const auto& m : members)
            if (!(m == Maya())) return false;
        return true;
    }

    long total_weight() const {
        long w = 0;
        for (const auto& m : members) w += maya_to_partition(m).weight();
        return w;
    }

    std::vector<long> degree_vector() const {
        std::vector<long> k;
        for (const auto& m : members) k.push_back(maya_to_partition(m).weight());
        return k;
    }

    friend bool operator==(const MKdVSetTuple& a, const MKdVSetTuple& b) {
        return a.N == b.N && a.members == b.members;
    }
};

// S_i = {a_{σ(1)}+i-N, ..., a_{σ(i)}+i-N} ∪ (S+i), with S_N = S.
inline MKdVSetTuple build_tuple(const KdVSet& k, const std::vector<int>& sigma) {
    int n = k.N;
    if (long(sigma.size()) != n)
        throw std::invalid_argument("build_tuple: permutation arity mismatch");
    std::vector<bool> seen(n + 1, false);
    for (int v : sigma) {
        if (v < 1 || v > n || seen[v])
            throw std::invalid_argument("build_tuple: not a permutation of 1..N");
        seen[v] = true;
    }
    std::vector<long> a = leading_term(k);
    std::vector<Maya> members;
    for (int i = 1; i <= n; ++i) {
        std::vector<long> extra;
        for (int j = 1; j <= i; ++j) extra.push_back(a[sigma[j - 1] - 1] + i - n);
        members.push_back(k.s.shifted(i).with(extra));
    }
    MKdVSetTuple t(std::move(members), n);
    if (!(t.members[n - 1] == k.s))
        throw std::logic_error("build_tuple: S_N != S");
    return t;
}

// Recovers (S, σ) from a tuple: the new element of S_i over S_{i-1}+1 is
// a_{σ(i)} + i - N.
inline std::pair<KdVSet, std::vector<int>> decompose_tuple(const MKdVSetTuple& t) {
    KdVSet base(t.members[t.N - 1], t.N);
    std::vector<long> a = leading_term(base);
    std::vector<int> sigma;
    for (int i = 1; i <= t.N; ++i) {
        const Maya& prev = t.at(i - 1 == 0 ? t.N : i - 1);
        std::vector<long> diff = t.at(i).minus(prev.shifted(1));
        if (diff.size() != 1)
            throw std::invalid_argument("decompose_tuple: chain condition violated");
        long val = diff[0] - i + t.N;
        auto it = std::find(a.begin(), a.end(), val);
        if (it == a.end())
            throw std::invalid_argument("decompose_tuple: new element not in leading term");
        sigma.push_back(int(it - a.begin()) + 1);
    }
    return {base, sigma};
}

// Position-i mutation realizing the affine Weyl generator w_i.  For i < N the
// decomposition permutation swaps σ(i), σ(i+1); the i = N case goes through
// the rotated tuple (S_N, S_1, ..., S_{N-1}) and mutates its first position.
inline MKdVSetTuple mutate_tuple(const MKdVSetTuple& t, int i) {
    int n = t.N;
    if (i < 1 || i > n) throw std::invalid_argument("mutate_tuple: index out of range");
    if (i == n) {
        std::vector<Maya> rot;
        rot.push_back(t.members[n - 1]);
        for (int j = 0; j + 1 < n; ++j) rot.push_back(t.members[j]);
        MKdVSetTuple mutated = mutate_tuple(MKdVSetTuple(std::move(rot), n), 1);
        std::vector<Maya> back;
        for (int j = 1; j < n; ++j) back.push_back(mutated.members[j]);
        back.push_back(mutated.members[0]);
        return MKdVSetTuple(std::move(back), n);
    }
    auto [base, sigma] = decompose_tuple(t);
    std::swap(sigma[i - 1], sigma[i]);
    return build_tuple(base, sigma);
}

// Degree-decreasing reduction of a tuple to the S^∅-tuple.  The mutated
// position is selected by the s_min rule: decompose as (S, σ), set
// b_i = a_{σ(i)} + i - N, and mutate at the smallest i with b_i = min(b)
// such that position i+1 does not also attain the minimum.
inline std::vector<int> reduce_tuple_to_empty(MKdVSetTuple t) {
    std::vector<int> trace;
    long guard = 16 * (t.total_weight() + 1);
    while (!t.is_empty_tuple()) {
        if (--guard < 0) throw std::logic_error("reduce_tuple_to_empty: no progress");
        auto [base, sigma] = decompose_tuple(t);
        std::vector<long> a = leading_term(base);
        int n = t.N;
        std::vector<long> b;
        for (int i = 1; i <= n; ++i) b.push_back(a[sigma[i - 1] - 1] + i - n);
        long s_min = *std::min_element(b.begin(), b.end());
        int pick = -1;
        for (int i = 1; i <= n; ++i) {
            if (b[i - 1] != s_min) continue;
            if (i < n && b[i] == s_min) continue;
            pick = i;
            break;
        }
        if (pick < 0) throw std::logic_error("reduce_tuple_to_empty: no candidate");
        long before = t.total_weight();
        MKdVSetTuple next = mutate_tuple(t, pick);
        if (next.total_weight() >= before)
            throw std::logic_error("reduce_tuple_to_empty: weight did not decrease");
        trace.push_back(pick);
        t = std::move(next);
    }
    return trace;
}

// --------------------------- degree transformations ---------------------------

struct DegreeVec {
    std::vector<long> k;  // k_1 ... k_N

    long at(int j, int n) const {  // 1-based cyclic
        return k[((j - 1) % n + n) % n];
    }
    friend bool operator==(const DegreeVec& a, const DegreeVec& b) { return a.k == b.k; }
};

using GenSeq = std::vector<int>;  // direction indices j_1 ... j_m, each in 1..N

// w_j: k_j -> k_{j-1} + k_{j+1} - k_j + 1, other coordinates unchanged.
inline DegreeVec degree_transform(DegreeVec k, int j) {
    int n = int(k.k.size());
    long v = k.at(j - 1 == 0 ? n : j - 1, n) + k.at(j % n + 1, n) - k.at(j, n) + 1;
    k.k[((j - 1) % n + n) % n] = v;
    return k;
}

inline bool is_degree_increasing(const GenSeq& j_seq, int n) {
    DegreeVec k{std::vector<long>(n, 0)};
    for (int j : j_seq) {
        if (j < 1 || j > n) throw std::invalid_argument("is_degree_increasing: bad index");
        DegreeVec next = degree_transform(k, j);
        if (next.at(j, n) <= k.at(j, n)) return false;
        k = next;
    }
    return true;
}

inline DegreeVec degree_vector_of(const GenSeq& j_seq, int n) {
    DegreeVec k{std::vector<long>(n, 0)};
    for (int j : j_seq) k = degree_transform(k, j);
    return k;
}

// The cyclic sequence (1, 2, ..., N, 1, 2, ...) of length m; always degree
// increasing.
inline GenSeq cyclic_sequence(int n, int m) {
    GenSeq j;
    for (int i = 0; i < m; ++i) j.push_back(i % n + 1);
    return j;
}

} // namespace mkdv
