#include "fnops/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fnops/bar.hpp"

namespace fnops {

std::vector<LabeledTree> labeled_basis(int n, int dim, int hmax) {
    std::vector<std::pair<std::string, LabeledTree>> keyed;
    for (const auto& shape : enumerate_reduced_bounded(n, dim, hmax)) {
        auto base = LabeledTree::identity_labeled(shape);
        for (const auto& s : all_perms(n)) {
            auto t = base.act(s);
            keyed.emplace_back(t.barcode(), std::move(t));
        }
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<LabeledTree> out;
    out.reserve(keyed.size());
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
}

SparseIntMatrix boundary_matrix(const std::vector<LabeledTree>& basis_d,
                                const std::map<std::string, int>& index_dm1,
                                int rows, ExecMode mode) {
    int nc = static_cast<int>(basis_d.size());
    std::vector<std::vector<std::pair<int, long long>>> columns(nc);
    auto column_of = [&](int j) {
        std::map<int, long long> acc;
        for (const auto& [sign, term] : d_lin_terms_merge(basis_d[j])) {
            auto it = index_dm1.find(term.barcode());
            if (it == index_dm1.end())
                throw internal_error("boundary term missing from the lower basis: " +
                                     term.barcode());
            acc[it->second] += sign;
        }
        std::vector<std::pair<int, long long>> col;
        for (auto& [r, v] : acc)
            if (v != 0) col.emplace_back(r, v);
        return col;
    };
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int j = 0; j < nc; ++j) columns[j] = column_of(j);
    } else {
        for (int j = 0; j < nc; ++j) columns[j] = column_of(j);
    }
    SparseIntMatrix m(rows, nc);
    for (int j = 0; j < nc; ++j)
        for (const auto& [r, v] : columns[j]) m.add(r, j, v);
    return m;
}

namespace {

/* A light signed-tree accumulator keyed by barcode. */
bool d2_is_zero(const LabeledTree& t) {
    std::map<std::string, long long> acc;
    for (const auto& [s1, u] : d_lin_terms_merge(t))
        for (const auto& [s2, v] : d_lin_terms_merge(u)) {
            auto key = v.barcode();
            auto it = acc.find(key);
            if (it == acc.end()) acc.emplace(std::move(key), s1 * s2);
            else {
                it->second += s1 * s2;
                if (it->second == 0) acc.erase(it);
            }
        }
    return acc.empty();
}

bool routes_agree(const LabeledTree& t) {
    std::map<std::string, long long> acc;
    for (const auto& [s, u] : d_lin_terms_merge(t)) acc[u.barcode()] += s;
    for (const auto& [s, u] : d_lin_terms_bar(t)) acc[u.barcode()] -= s;
    for (const auto& [k, v] : acc)
        if (v != 0) return false;
    return true;
}

bool equivariant_at(const LabeledTree& t) {
    int n = t.arity();
    // cyclic shift and a transposition generate the symmetric group; a
    // differential commuting with both commutes with everything
    std::vector<int> cyc(n), swp(n);
    for (int i = 0; i < n; ++i) cyc[i] = i % n + 1;
    for (int i = 0; i < n; ++i) swp[i] = i + 1;
    if (n >= 2) std::swap(swp[0], swp[1]);
    for (const auto& s : {Perm(cyc), Perm(swp)}) {
        std::map<std::string, long long> acc;
        for (const auto& [c, u] : d_lin_terms_merge(t.act(s))) acc[u.barcode()] += c;
        for (const auto& [c, u] : d_lin_terms_merge(t)) acc[u.act(s).barcode()] -= c;
        for (const auto& [k, v] : acc)
            if (v != 0) return false;
    }
    return true;
}

template <typename Pred>
bool sweep(const std::vector<LabeledTree>& gens, ExecMode mode, Pred&& pred) {
    int n = static_cast<int>(gens.size());
    std::vector<char> ok(n, 1);
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic, 32)
        for (int i = 0; i < n; ++i) ok[i] = pred(gens[i]) ? 1 : 0;
    } else {
        for (int i = 0; i < n; ++i) ok[i] = pred(gens[i]) ? 1 : 0;
    }
    return std::all_of(ok.begin(), ok.end(), [](char c) { return c == 1; });
}

} // namespace

bool d2_zero_sweep(const std::vector<LabeledTree>& gens, ExecMode mode) {
    return sweep(gens, mode, d2_is_zero);
}

bool route_agreement_sweep(const std::vector<LabeledTree>& gens, ExecMode mode) {
    return sweep(gens, mode, routes_agree);
}

bool equivariance_sweep(const std::vector<LabeledTree>& gens, ExecMode mode) {
    return sweep(gens, mode, equivariant_at);
}

} // namespace fnops
