#include "fnops/free_lie.hpp"

#include <algorithm>
#include <numeric>

namespace fnops {

void TensorElement::add(const TensorWord& w, long long c) {
    if (c == 0) return;
    if (static_cast<int>(w.size()) != n_)
        throw validation_error("tensor word degree mismatch");
    auto it = words_.find(w);
    if (it == words_.end()) words_.emplace(w, c);
    else {
        it->second += c;
        if (it->second == 0) words_.erase(it);
    }
}

long long TensorElement::coeff(const TensorWord& w) const {
    auto it = words_.find(w);
    return it == words_.end() ? 0 : it->second;
}

TensorElement TensorElement::operator*(long long c) const {
    TensorElement out(n_);
    if (c != 0)
        for (const auto& [w, v] : words_) out.add(w, v * c);
    return out;
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    TensorElement out = *this;
    for (const auto& [w, v] : o.words_) out.add(w, v);
    return out;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    TensorElement out = *this;
    for (const auto& [w, v] : o.words_) out.add(w, -v);
    return out;
}

TensorElement TensorElement::tensor(const TensorElement& a, const TensorElement& b) {
    TensorElement out(a.degree() + b.degree());
    for (const auto& [wa, ca] : a.entries())
        for (const auto& [wb, cb] : b.entries()) {
            TensorWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add(w, ca * cb);
        }
    return out;
}

TensorElement expand_left_normed(const Perm& lambda) {
    int n = lambda.size() + 1;
    TensorElement acc(1);
    acc.add({n}, 1);
    for (int i = lambda.size(); i >= 1; --i) {
        TensorElement gen(1);
        gen.add({lambda[i]}, 1);
        acc = TensorElement::tensor(gen, acc) - TensorElement::tensor(acc, gen);
    }
    return acc;
}

bool ree_test(const TensorElement& f) {
    int n = f.degree();
    if (n < 1) throw validation_error("empty tensor element");
    if (n == 1) return true;
    for (const auto& rho : all_perms(n)) {
        for (int s = 1; s < n; ++s) {
            long long sum = 0;
            for (const auto& pat : interleavings(s, n - s)) {
                // interleave the two blocks of rho, keeping each in order
                TensorWord w(n);
                int ia = 0, ib = s;
                for (int p = 0; p < n; ++p)
                    w[p] = rho.tuple()[pat[p] == 0 ? ia++ : ib++];
                sum += f.coeff(w);
            }
            if (sum != 0) return false;
        }
    }
    return true;
}

std::optional<std::map<std::vector<int>, long long>> lie_coordinates(
    const TensorElement& f) {
    int n = f.degree();
    if (n < 2) {
        std::map<std::vector<int>, long long> triv;
        if (n == 1) triv[{}] = f.coeff({1});
        return triv;
    }
    std::map<std::vector<int>, long long> coords;
    TensorElement recon(n);
    for (const auto& lambda : all_perms(n - 1)) {
        TensorWord w(lambda.tuple().begin(), lambda.tuple().end());
        w.push_back(n);
        long long c = f.coeff(w);
        if (c != 0) {
            coords[lambda.tuple()] = c;
            recon = recon + expand_left_normed(lambda) * c;
        }
    }
    if (!(recon == f)) return std::nullopt;
    return coords;
}

namespace {

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int word_index(const TensorWord& w, const std::map<TensorWord, int>& idx) {
    return idx.at(w);
}

/* Rows of the (signed) unshuffle generator matrix in the word basis. */
SparseIntMatrix ush_matrix(int n, bool use_sign, const std::map<TensorWord, int>& idx) {
    std::vector<std::vector<std::pair<int, long long>>> rows;
    for (const auto& rho : all_perms(n)) {
        for (int s = 1; s < n; ++s) {
            std::vector<std::pair<int, long long>> row;
            for (const auto& pat : interleavings(s, n - s)) {
                TensorWord w(n);
                int ia = 0, ib = s;
                for (int p = 0; p < n; ++p)
                    w[p] = rho.tuple()[pat[p] == 0 ? ia++ : ib++];
                long long c = 1;
                if (use_sign && interleaving_inversions(pat) % 2 == 1) c = -1;
                row.emplace_back(word_index(w, idx), c);
            }
            rows.push_back(std::move(row));
        }
    }
    SparseIntMatrix m(static_cast<int>(factorial(n)), static_cast<int>(rows.size()));
    for (size_t j = 0; j < rows.size(); ++j)
        for (const auto& [r, v] : rows[j]) m.add(r, static_cast<int>(j), v);
    return m;
}

std::map<TensorWord, int> word_indexer(int n) {
    std::map<TensorWord, int> idx;
    int k = 0;
    for (const auto& p : all_perms(n)) {
        TensorWord w(p.tuple().begin(), p.tuple().end());
        idx.emplace(std::move(w), k++);
    }
    return idx;
}

} // namespace

UshReport ush_quotient_report(int n, bool use_sign) {
    if (n < 2 || n > 6) throw capacity_error("unshuffle reports cover 2 <= n <= 6");
    UshReport rep;
    rep.n = n;
    rep.use_sign = use_sign;
    auto idx = word_indexer(n);
    auto m = ush_matrix(n, use_sign, idx);
    SmithForm sf = smith_normal_form(m);
    rep.ush_rank = sf.rank();
    rep.divisors = sf.divisors;
    rep.quotient_rank = static_cast<int>(factorial(n)) - sf.rank();

    // pairing of the classes of e_{lambda x 1} against the b_lambda under
    // the duality Phi: P[l][m] = coefficient of e_{l x 1} in b_m
    long long k = factorial(n - 1);
    IntegerMatrix pairing(static_cast<int>(k), static_cast<int>(k));
    auto lambdas = all_perms(n - 1);
    for (size_t col = 0; col < lambdas.size(); ++col) {
        auto b = expand_left_normed(lambdas[col]);
        for (size_t row = 0; row < lambdas.size(); ++row) {
            TensorWord w(lambdas[row].tuple().begin(), lambdas[row].tuple().end());
            w.push_back(n);
            pairing.at(static_cast<int>(row), static_cast<int>(col)) = b.coeff(w);
        }
    }
    SmithForm psf = smith_normal_form(std::move(pairing));
    rep.pairing_unimodular =
        psf.rank() == k && psf.torsion().empty();
    rep.pairing_det = rep.pairing_unimodular ? 1 : 0;

    // basis certificate: unshuffles plus the unit vectors at e_{lambda x 1}
    // fill out Z^{n!} unimodularly
    SparseIntMatrix stacked(static_cast<int>(factorial(n)),
                            m.cols() + static_cast<int>(k));
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c)) stacked.add(r, c, v);
    for (size_t row = 0; row < lambdas.size(); ++row) {
        TensorWord w(lambdas[row].tuple().begin(), lambdas[row].tuple().end());
        w.push_back(n);
        stacked.add(word_index(w, idx), m.cols() + static_cast<int>(row), 1);
    }
    SmithForm ssf = smith_normal_form(stacked);
    rep.basis_certified =
        ssf.rank() == static_cast<int>(factorial(n)) && ssf.torsion().empty();
    return rep;
}

bool psi_exchanges_ush(int n) {
    // Psi(e_sigma) = sgn(sigma) e_sigma maps the signed generator of
    // (rho, s, t) to sgn(rho) times the plain one.
    auto idx = word_indexer(n);
    std::vector<Perm> perms = all_perms(n);
    std::vector<int> sign_of(perms.size());
    std::map<TensorWord, int> word_sign;
    for (const auto& p : perms) {
        TensorWord w(p.tuple().begin(), p.tuple().end());
        word_sign[w] = p.sign();
    }
    auto plain = ush_matrix(n, false, idx);
    auto sgn = ush_matrix(n, true, idx);
    std::vector<TensorWord> by_index(factorial(n));
    for (const auto& [w, i] : idx) by_index[i] = w;

    int col = 0;
    for (const auto& rho : perms) {
        for (int s = 1; s < n; ++s) {
            // apply Psi to the signed column; expect sgn(rho) * plain column
            std::map<int, long long> twisted;
            for (const auto& [r, v] : sgn.column(col))
                twisted[r] = v * word_sign[by_index[r]];
            std::map<int, long long> expect;
            for (const auto& [r, v] : plain.column(col)) expect[r] = v * rho.sign();
            if (twisted != expect) return false;
            ++col;
        }
    }
    return true;
}

} // namespace fnops
