#include "fnops/criticality.hpp"

#include <algorithm>

namespace fnops {

std::optional<int> d_crit(int arity, Height h) {
    if (arity < 2) throw validation_error("arity must be >= 2");
    if (!h.infinite && h.value < 1) throw validation_error("height must be >= 1");
    if (arity <= 3) return std::nullopt;
    if (h.infinite) return arity;
    if (arity <= 5 && h.value <= 2) return std::nullopt;
    if (h.value == 1) return std::nullopt;
    return arity;
}

Classification classify(int arity, Height h) {
    Classification c;
    c.arity = arity;
    c.height = h;
    c.critical_dim = d_crit(arity, h);
    c.regular = !c.critical_dim.has_value();
    if (c.regular) return c;
    if (arity >= 6) {
        // [1|2||3|4||5|6|...|n], the height-2 family headed by the
        // six-point cell
        std::string w = "[1|2||3|4||5|6";
        for (int i = 7; i <= arity; ++i) w += "|" + std::to_string(i);
        w += "]";
        c.witness_barcode = w;
        c.witness_base_height = 2;
    } else {
        // [1|2|||3|4] and [1|2|||3|4|5], the height-3 pair
        c.witness_barcode = (arity == 4) ? "[1|2|||3|4]" : "[1|2|||3|4|5]";
        c.witness_base_height = 3;
    }
    return c;
}

LabeledTree witness_tree(const Classification& c) {
    if (c.regular) throw validation_error("regular pairs have no bad-cell witness");
    auto t = LabeledTree::parse_barcode(c.witness_barcode);
    if (!c.height.infinite)
        for (int h = c.witness_base_height; h < c.height.value; ++h) t = t.suspend();
    return t;
}

namespace {

/* Amputate the source tree at level m over the ancestor columns of the
   given tips: the pruned m-tree on those ancestors. */
LevelTree amputate(const LevelTree& T, int m, const std::vector<int>& tip0) {
    int h = T.height();
    std::vector<std::vector<int>> keep(m + 1);
    for (int lvl = 0; lvl <= m; ++lvl) keep[lvl].assign(T.level_size(lvl), -1);
    for (int t0 : tip0) {
        int v = t0;
        for (int lvl = h; lvl > m; --lvl) v = T.parent(lvl, v);
        for (int lvl = m; lvl >= 0; --lvl) {
            keep[lvl][v] = 0;
            if (lvl > 0) v = T.parent(lvl, v);
        }
    }
    std::vector<std::vector<int>> parents(m);
    std::vector<int> prev_idx(1, 0);
    for (int lvl = 1; lvl <= m; ++lvl) {
        std::vector<int> idx(T.level_size(lvl), -1);
        int nxt = 0;
        for (int i = 0; i < T.level_size(lvl); ++i) {
            if (keep[lvl][i] < 0) continue;
            idx[i] = nxt++;
            parents[lvl - 1].push_back(prev_idx[T.parent(lvl, i)]);
        }
        prev_idx = std::move(idx);
    }
    return LevelTree::from_parents(std::move(parents));
}

} // namespace

std::vector<SourceTargetDatum> source_target_witnesses(const LabeledTree& t,
                                                       const FaceLimits& limits) {
    const LevelTree& T = t.shape();
    if (!T.is_pruned()) throw validation_error("source-target search requires a pruned tree");
    int h = T.height(), n = T.tips();
    std::vector<SourceTargetDatum> out;

    for_each_face(
        t,
        [&](Face&& f) {
            const auto& mor = f.morphism;
            if (mor.target.tips() >= n) return;   // k < n
            const auto& tipmap = mor.maps[h - 1];
            for (int u = 0; u < mor.target.tips(); ++u)
                for (int v = u + 1; v < mor.target.tips(); ++v) {
                    std::vector<int> pre_u, pre_v;
                    for (int i = 0; i < n; ++i) {
                        if (tipmap[i] == u) pre_u.push_back(i);
                        if (tipmap[i] == v) pre_v.push_back(i);
                    }
                    for (int m = 1; m < h; ++m) {
                        // interleaved selections a_1<b_1<...<a_s<b_s with
                        // matching, strictly increasing level-m ancestors
                        std::vector<std::pair<int, int>> pairs;   // (a_i, b_i)
                        std::function<void(size_t, size_t, int)> rec =
                            [&](size_t ia, size_t ib, int last_anc) {
                                if (pairs.size() >= 2) {
                                    int s = static_cast<int>(pairs.size());
                                    bool nontrivial =
                                        (s >= 2 && m >= 2) || (s >= 3 && m >= 1);
                                    if (nontrivial) {
                                        std::vector<int> tip0;
                                        for (auto& [a0, b0] : pairs) tip0.push_back(a0);
                                        LevelTree R = amputate(T, m, tip0);
                                        if (R.edges() - m - 1 >= 1) {
                                            SourceTargetDatum d;
                                            d.face_serial = f.serial;
                                            d.level = m;
                                            d.s = s;
                                            for (auto& [a0, b0] : pairs) {
                                                d.a.push_back(a0 + 1);
                                                d.b.push_back(b0 + 1);
                                            }
                                            d.u = u;
                                            d.v = v;
                                            d.amputated = std::move(R);
                                            out.push_back(std::move(d));
                                        }
                                    }
                                }
                                for (size_t x = ia; x < pre_u.size(); ++x) {
                                    int a0 = pre_u[x];
                                    if (!pairs.empty() && a0 <= pairs.back().second)
                                        continue;
                                    int anc_a = T.ancestor(h, a0, m);
                                    if (anc_a <= last_anc) continue;
                                    for (size_t y = ib; y < pre_v.size(); ++y) {
                                        int b0 = pre_v[y];
                                        if (b0 <= a0) continue;
                                        if (T.ancestor(h, b0, m) != anc_a) continue;
                                        pairs.emplace_back(a0, b0);
                                        rec(x + 1, y + 1, anc_a);
                                        pairs.pop_back();
                                    }
                                }
                            };
                        rec(0, 0, -1);
                    }
                }
        },
        limits);
    return out;
}

std::vector<Term> counterterm_pool(const LabeledTree& t, const FaceLimits& limits) {
    int dim = t.dim();
    std::map<std::string, Term> pool;
    for (const auto& f : enumerate_faces(t, limits)) {
        if (f.deg != dim || f.morphism.target.tips() >= t.arity()) continue;
        // replace one vertex decoration by one of its codimension-one faces
        const Term& c = f.c_sigma;
        std::function<void(const Term&, const std::function<Term(Term)>&)> walk =
            [&](const Term& node, const std::function<Term(Term)>& rebuild) {
                if (node.is_leaf()) return;
                if (node.deco().dim() >= 1) {
                    auto base = LabeledTree::identity_labeled(node.deco());
                    for (const auto& [face_elt, mult] : d_reg_multiset(base, limits)) {
                        Term replaced = graft_face(face_elt, node.items());
                        Term full = rebuild(replaced);
                        pool.emplace(full.extended_barcode(), full);
                    }
                }
                for (size_t j = 0; j < node.items().size(); ++j) {
                    auto rebuild_j = [&, j](Term x) {
                        std::vector<Term> items2 = node.items();
                        items2[j] = std::move(x);
                        return rebuild(Term::vertex(node.deco(), std::move(items2)));
                    };
                    walk(node.items()[j], rebuild_j);
                }
            };
        walk(c, [](Term x) { return x; });
    }
    std::vector<Term> out;
    out.reserve(pool.size());
    for (auto& [k, term] : pool) out.push_back(std::move(term));
    return out;
}

namespace {

/* F2 linear solve by Gaussian elimination on column-index sets; returns
   the lexicographically minimal solution support or nullopt. */
std::optional<std::vector<int>> solve_f2_min(
    const std::vector<std::vector<int>>& cols,   // cols[j] = row indices of column j
    const std::vector<int>& rhs_rows, int nrows) {
    int ncols = static_cast<int>(cols.size());
    // bitset rows: matrix (nrows) x (ncols + 1)
    size_t words = (ncols + 1 + 63) / 64;
    std::vector<std::vector<unsigned long long>> M(nrows,
                                                   std::vector<unsigned long long>(words, 0));
    auto set = [&](int r, int c) { M[r][c >> 6] ^= 1ull << (c & 63); };
    auto get = [&](int r, int c) { return (M[r][c >> 6] >> (c & 63)) & 1ull; };
    for (int j = 0; j < ncols; ++j)
        for (int r : cols[j]) set(r, j);
    for (int r : rhs_rows) set(r, ncols);

    auto feasible = [&](std::vector<std::vector<unsigned long long>> A,
                        const std::vector<char>& forced_zero,
                        const std::vector<char>& forced_one)
        -> std::optional<std::vector<char>> {
        // plug forced ones into the rhs, drop forced columns
        for (int j = 0; j < ncols; ++j) {
            if (forced_one[j])
                for (auto& row : A)
                    if ((row[j >> 6] >> (j & 63)) & 1ull) row[ncols >> 6] ^= 1ull
                                                          << (ncols & 63);
            if (forced_zero[j] || forced_one[j])
                for (auto& row : A) row[j >> 6] &= ~(1ull << (j & 63));
        }
        // eliminate
        std::vector<int> pivot_col;
        int rank = 0;
        for (int j = 0; j < ncols && rank < nrows; ++j) {
            int p = -1;
            for (int r = rank; r < nrows; ++r)
                if ((A[r][j >> 6] >> (j & 63)) & 1ull) {
                    p = r;
                    break;
                }
            if (p < 0) continue;
            std::swap(A[rank], A[p]);
            for (int r = 0; r < nrows; ++r)
                if (r != rank && ((A[r][j >> 6] >> (j & 63)) & 1ull))
                    for (size_t w = 0; w < A[r].size(); ++w) A[r][w] ^= A[rank][w];
            pivot_col.push_back(j);
            ++rank;
        }
        for (int r = rank; r < nrows; ++r)
            if ((A[r][ncols >> 6] >> (ncols & 63)) & 1ull) return std::nullopt;
        // particular solution: free variables zero
        std::vector<char> x(ncols, 0);
        for (int i = 0; i < rank; ++i)
            x[pivot_col[i]] = static_cast<char>((A[i][ncols >> 6] >> (ncols & 63)) & 1ull);
        return x;
    };

    std::vector<char> zero(ncols, 0), one(ncols, 0);
    auto base = feasible(M, zero, one);
    if (!base) return std::nullopt;
    // lexicographic minimization over the support vector
    for (int j = 0; j < ncols; ++j) {
        zero[j] = 1;
        auto attempt = feasible(M, zero, one);
        if (!attempt) {
            zero[j] = 0;
            one[j] = 1;
        }
    }
    std::vector<int> support;
    for (int j = 0; j < ncols; ++j)
        if (one[j]) support.push_back(j);
    return support;
}

} // namespace

CountertermReport find_counterterm(const LabeledTree& t, const FaceLimits& limits) {
    CountertermReport rep;
    rep.d_reg = d_reg_mod2(t, limits);
    rep.rhs = FormalSum(Ring::F2);
    for (const auto& [k, tc] : rep.d_reg.entries())
        rep.rhs.add(boundary_f2(tc.first, limits), tc.second);
    rep.pool = counterterm_pool(t, limits);

    // rows: every term appearing in any candidate boundary or the rhs
    std::map<std::string, int> row_of;
    auto row = [&](const std::string& key) {
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        int r = static_cast<int>(row_of.size());
        row_of.emplace(key, r);
        return r;
    };
    std::vector<std::vector<int>> cols;
    cols.reserve(rep.pool.size());
    for (const auto& cand : rep.pool) {
        std::vector<int> rows;
        FormalSum cand_boundary = boundary_f2(cand, limits);
        for (const auto& [k, tc] : cand_boundary.entries()) rows.push_back(row(k));
        cols.push_back(std::move(rows));
    }
    std::vector<int> rhs_rows;
    for (const auto& [k, tc] : rep.rhs.entries()) rhs_rows.push_back(row(k));

    auto sol = solve_f2_min(cols, rhs_rows, static_cast<int>(row_of.size()));
    if (!sol)
        throw internal_error(
            "no counterterm exists within the candidate pool (pool size " +
            std::to_string(rep.pool.size()) + ")");
    for (int j : *sol) rep.chosen.push_back(rep.pool[j]);
    rep.solved = true;
    return rep;
}

bool verify_counterterm(const LabeledTree& t, const std::vector<Term>& U,
                        const FaceLimits& limits) {
    FormalSum total(Ring::F2);
    FormalSum reg = d_reg_mod2(t, limits);
    for (const auto& [k, tc] : reg.entries())
        total.add(boundary_f2(tc.first, limits), tc.second);
    for (const auto& u : U) total.add(boundary_f2(u, limits), 1);
    return total.is_zero();
}

} // namespace fnops
