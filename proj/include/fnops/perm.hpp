#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fnops/errors.hpp"

namespace fnops {

/* Permutations of {1..n} in tuple notation: a permutation sigma is stored
   as the sequence (sigma_1,...,sigma_n) with sigma_i = sigma^{-1}(i).
   Relabeling the identity-labeled object by sigma produces the label
   sequence equal to the tuple itself, so the tuple of a labeled tree is
   its label list read left to right. */
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> tuple) : t_(std::move(tuple)) {
        std::vector<char> seen(t_.size() + 1, 0);
        for (int v : t_) {
            if (v < 1 || v > static_cast<int>(t_.size()) || seen[v])
                throw validation_error("not a permutation tuple");
            seen[v] = 1;
        }
    }

    static Perm identity(int n) {
        std::vector<int> t(n);
        std::iota(t.begin(), t.end(), 1);
        return Perm(std::move(t));
    }

    int size() const { return static_cast<int>(t_.size()); }
    int operator[](int i) const { return t_[i - 1]; }   // 1-based
    const std::vector<int>& tuple() const { return t_; }

    /* Right-action composition: acting by *this then by s. */
    Perm then(const Perm& s) const {
        if (s.size() != size()) throw validation_error("permutation size mismatch");
        std::vector<int> r(t_.size());
        for (size_t i = 0; i < t_.size(); ++i) r[i] = s.t_[t_[i] - 1];
        return Perm(std::move(r));
    }

    Perm inverse() const {
        std::vector<int> r(t_.size());
        for (size_t i = 0; i < t_.size(); ++i) r[t_[i] - 1] = static_cast<int>(i) + 1;
        return Perm(std::move(r));
    }

    int sign() const {
        int inv = 0;
        for (size_t i = 0; i < t_.size(); ++i)
            for (size_t j = i + 1; j < t_.size(); ++j)
                if (t_[i] > t_[j]) ++inv;
        return (inv % 2 == 0) ? 1 : -1;
    }

    bool operator==(const Perm& o) const { return t_ == o.t_; }
    bool operator<(const Perm& o) const { return t_ < o.t_; }

private:
    std::vector<int> t_;
};

/* Standard operadic block composition on permutations, by index
   arithmetic: the tuple of (corolla.act(sigma)) composed at input i with
   (corolla.act(rho)). */
inline Perm block_compose(const Perm& sigma, int i, const Perm& rho) {
    int m = sigma.size(), n = rho.size();
    if (i < 1 || i > m) throw validation_error("block composition position out of range");
    int j = sigma.inverse()[i];
    std::vector<int> t;
    t.reserve(m + n - 1);
    auto shift = [&](int l) { return l > i ? l + n - 1 : l; };
    for (int p = 1; p < j; ++p) t.push_back(shift(sigma[p]));
    for (int q = 1; q <= n; ++q) t.push_back(rho[q] + i - 1);
    for (int p = j + 1; p <= m; ++p) t.push_back(shift(sigma[p]));
    return Perm(std::move(t));
}

inline std::vector<Perm> all_perms(int n) {
    std::vector<int> t(n);
    std::iota(t.begin(), t.end(), 1);
    std::vector<Perm> out;
    do out.emplace_back(t);
    while (std::next_permutation(t.begin(), t.end()));
    return out;
}

/* (s,t)-interleaving patterns: bit vector of length s+t with s zeros (first
   block) and t ones (second block), giving the source group of each output
   slot.  Corresponds to the unshuffle tau with tau(1)<...<tau(s),
   tau(s+1)<...<tau(s+t): pattern[p] = 1 iff p+1 is among tau(s+1..s+t). */
inline std::vector<std::vector<int>> interleavings(int s, int t) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(s + t, 0);
    for (int i = s; i < s + t; ++i) cur[i] = 1;
    std::sort(cur.begin(), cur.end());
    // enumerate all distinct 0/1 arrangements in lexicographic order
    do out.push_back(cur);
    while (std::next_permutation(cur.begin(), cur.end()));
    return out;
}

/* Number of inversions of an interleaving: pairs (one,zero) with the one
   placed before the zero; equals inv(tau) of the associated unshuffle. */
inline int interleaving_inversions(const std::vector<int>& pat) {
    int ones = 0, inv = 0;
    for (int b : pat) {
        if (b == 1) ++ones;
        else inv += ones;
    }
    return inv;
}

} // namespace fnops
