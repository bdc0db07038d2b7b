#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace lopt {

// Hard cap on mode counts; permanent cost and basis sizes explode beyond this.
inline constexpr int kMaxModes = 16;
inline constexpr int kMaxFactorial = 20;

/// n! as an exact 64-bit integer, n <= 20.
inline std::uint64_t factorial(int n) {
    if (n < 0 || n > kMaxFactorial)
        throw std::invalid_argument("factorial: argument out of supported range [0,20]");
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

/// Binomial coefficient C(n, k) without overflow for the sizes used here.
inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / i;
    return c;
}

/// Photon counts per mode.
struct OccupationVector {
    std::vector<int> counts;

    OccupationVector() = default;
    explicit OccupationVector(std::vector<int> c) : counts(std::move(c)) {
        for (int v : counts)
            if (v < 0) throw std::invalid_argument("OccupationVector: negative count");
    }

    int modes() const { return static_cast<int>(counts.size()); }

    int total() const {
        int t = 0;
        for (int v : counts) t += v;
        return t;
    }

    /// Product of per-mode count factorials, exact integer arithmetic.
    std::uint64_t factorial_weight() const {
        std::uint64_t w = 1;
        for (int v : counts) w *= factorial(v);
        return w;
    }

    bool operator==(const OccupationVector& o) const { return counts == o.counts; }
    bool operator<(const OccupationVector& o) const { return counts < o.counts; }
};

/// Photon present/absent per input channel.
struct InputPattern {
    std::vector<int> bits;

    InputPattern() = default;
    explicit InputPattern(std::vector<int> b) : bits(std::move(b)) {
        for (int v : bits)
            if (v != 0 && v != 1) throw std::invalid_argument("InputPattern: entries must be 0 or 1");
    }

    int modes() const { return static_cast<int>(bits.size()); }

    int weight() const {
        int w = 0;
        for (int v : bits) w += v;
        return w;
    }

    bool operator==(const InputPattern& o) const { return bits == o.bits; }
    bool operator<(const InputPattern& o) const { return bits < o.bits; }
};

/// s with bit i cleared (the pattern the recurrence steps down to).
inline InputPattern clear_one(const InputPattern& s, int i) {
    if (i < 0 || i >= s.modes()) throw std::out_of_range("clear_one: mode index out of range");
    if (s.bits[i] != 1) throw std::invalid_argument("clear_one: bit already 0");
    InputPattern r = s;
    r.bits[i] = 0;
    return r;
}

/// Ordered basis for a fixed (modes, total) sector with reverse lookup.
/// Ordering is lexicographic descending on entries, so layouts are
/// bit-comparable across runs.
template <class Vec>
class BasisIndex {
  public:
    BasisIndex() = default;
    explicit BasisIndex(std::vector<Vec> elems) : elems_(std::move(elems)) {
        for (std::size_t k = 0; k < elems_.size(); ++k) lookup_[elems_[k]] = k;
    }

    std::size_t size() const { return elems_.size(); }
    const Vec& at(std::size_t k) const { return elems_.at(k); }
    const std::vector<Vec>& all() const { return elems_; }

    std::size_t index_of(const Vec& v) const {
        auto it = lookup_.find(v);
        if (it == lookup_.end()) throw std::out_of_range("BasisIndex: vector not in basis");
        return it->second;
    }

    bool contains(const Vec& v) const { return lookup_.count(v) != 0; }

  private:
    std::vector<Vec> elems_;
    std::map<Vec, std::size_t> lookup_;
};

using OccupationBasis = BasisIndex<OccupationVector>;
using PatternBasis = BasisIndex<InputPattern>;

namespace detail {

inline void gen_occupations(int modes, int total, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == modes - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    // Descending leading entry gives lexicographic-descending overall order.
    for (int v = total; v >= 0; --v) {
        cur.push_back(v);
        gen_occupations(modes, total - v, cur, out);
        cur.pop_back();
    }
}

inline void gen_patterns(int modes, int weight, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    int left = modes - static_cast<int>(cur.size());
    if (weight > left || weight < 0) return;
    if (left == 0) {
        out.push_back(cur);
        return;
    }
    cur.push_back(1);
    gen_patterns(modes, weight - 1, cur, out);
    cur.back() = 0;
    gen_patterns(modes, weight, cur, out);
    cur.pop_back();
}

}  // namespace detail

/// All occupation vectors of the given length summing to `total`,
/// lexicographic descending. C(total+modes-1, modes-1) elements.
inline OccupationBasis enumerate_occupations(int modes, int total) {
    if (modes < 1 || modes > kMaxModes)
        throw std::invalid_argument("enumerate_occupations: modes out of range");
    if (total < 0 || total > kMaxModes)
        throw std::invalid_argument("enumerate_occupations: total out of range");
    std::vector<std::vector<int>> raw;
    std::vector<int> cur;
    detail::gen_occupations(modes, total, cur, raw);
    std::vector<OccupationVector> elems;
    elems.reserve(raw.size());
    for (auto& r : raw) elems.emplace_back(std::move(r));
    return OccupationBasis(std::move(elems));
}

/// All binary patterns of the given weight, lexicographic descending.
/// weight > modes yields an empty index (no such patterns).
inline PatternBasis enumerate_patterns(int modes, int weight) {
    if (modes < 1 || modes > kMaxModes)
        throw std::invalid_argument("enumerate_patterns: modes out of range");
    if (weight < 0) throw std::invalid_argument("enumerate_patterns: negative weight");
    std::vector<std::vector<int>> raw;
    std::vector<int> cur;
    detail::gen_patterns(modes, weight, cur, raw);
    std::vector<InputPattern> elems;
    elems.reserve(raw.size());
    for (auto& r : raw) elems.emplace_back(std::move(r));
    return PatternBasis(std::move(elems));
}

}  // namespace lopt
