#pragma once

#include <optional>

#include "fnops/perm.hpp"
#include "fnops/snf.hpp"

namespace fnops {

/* A multilinear tensor word x_{w[0]} (x) ... (x) x_{w[n-1]}: each of the
   generators 1..n appears exactly once. */
using TensorWord = std::vector<int>;

/* Integer linear combinations of multilinear words. */
class TensorElement {
public:
    TensorElement() = default;
    explicit TensorElement(int degree) : n_(degree) {}

    int degree() const { return n_; }
    void add(const TensorWord& w, long long c);
    long long coeff(const TensorWord& w) const;
    const std::map<TensorWord, long long>& entries() const { return words_; }
    bool is_zero() const { return words_.empty(); }

    TensorElement operator*(long long c) const;
    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    bool operator==(const TensorElement& o) const { return words_ == o.words_; }

    /* concatenation product */
    static TensorElement tensor(const TensorElement& a, const TensorElement& b);

private:
    int n_ = 0;
    std::map<TensorWord, long long> words_;
};

/* The left-normed bracket b_lambda = [x_l1,[x_l2,...,[x_l(n-1),x_n]...]]
   for lambda a permutation of 1..n-1, fully expanded (2^(n-1) words). */
TensorElement expand_left_normed(const Perm& lambda);

/* Ree's criterion over the integers: F is a Lie element iff every
   unshuffle coefficient sum vanishes. */
bool ree_test(const TensorElement& f);

/* Coordinates of F in the left-normed basis, read off the words ending in
   x_n and verified by reconstruction; non-membership is a value. */
std::optional<std::map<std::vector<int>, long long>> lie_coordinates(
    const TensorElement& f);

struct UshReport {
    int n = 0;
    bool use_sign = false;
    int ush_rank = 0;
    std::vector<Int> divisors;
    int quotient_rank = 0;
    Int pairing_det = 0;
    bool pairing_unimodular = false;
    bool basis_certified = false;   // Ush + {e_{lambda x 1}} spans unimodularly
};

/* The span of the (signed) unshuffle sums, its Smith form, the quotient
   rank, and the duality pairing against the left-normed basis. */
UshReport ush_quotient_report(int n, bool use_sign);

/* The sign twist Psi maps every signed unshuffle generator to (+-1) times
   the plain one; verified as a matrix identity. */
bool psi_exchanges_ush(int n);

} // namespace fnops
