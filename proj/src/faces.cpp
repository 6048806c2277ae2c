#include "fnops/faces.hpp"

#include <algorithm>
#include <map>

namespace fnops {

void TreeMorphism::validate() const {
    int h = source.height();
    if (target.height() != h) throw validation_error("morphism heights differ");
    if (static_cast<int>(maps.size()) != h) throw validation_error("morphism tower size");
    for (int m = 1; m <= h; ++m) {
        if (static_cast<int>(maps[m - 1].size()) != source.level_size(m))
            throw validation_error("morphism level size mismatch");
        for (int i = 0; i < source.level_size(m); ++i) {
            int q = maps[m - 1][i];
            if (q < 0 || q >= target.level_size(m))
                throw validation_error("morphism image out of range");
            // commutation with the parent maps
            if (target.parent(m, q) != map(m - 1, source.parent(m, i)))
                throw validation_error("morphism does not commute with parents");
            // order preservation on each parent fiber
            if (i > 0 && source.parent(m, i) == source.parent(m, i - 1) &&
                maps[m - 1][i] < maps[m - 1][i - 1])
                throw validation_error("morphism not order-preserving on a fiber");
        }
    }
    if (!target.is_pruned()) throw validation_error("face target must be pruned");
    std::vector<char> hit(target.tips(), 0);
    for (int i = 0; i < source.tips(); ++i) hit[maps[h - 1][i]] = 1;
    for (char c : hit)
        if (!c) throw validation_error("face must be epi on tips");
}

std::pair<LevelTree, std::vector<int>> TreeMorphism::fiber(int j) const {
    int h = source.height();
    // path from target tip j to the root
    std::vector<int> path(h + 1);
    path[h] = j;
    for (int m = h; m >= 1; --m) path[m - 1] = target.parent(m, path[m]);
    // vertices of the source mapping onto the path, re-indexed per level
    std::vector<std::vector<int>> parents(h);
    std::vector<int> tips_in_source;
    std::vector<int> newidx_prev(1, 0);
    for (int m = 1; m <= h; ++m) {
        std::vector<int> newidx(source.level_size(m), -1);
        int nxt = 0;
        for (int i = 0; i < source.level_size(m); ++i) {
            if (map(m, i) != path[m]) continue;
            if (newidx_prev[source.parent(m, i)] < 0)
                throw internal_error("fiber parent missing");
            newidx[i] = nxt++;
            parents[m - 1].push_back(newidx_prev[source.parent(m, i)]);
            if (m == h) tips_in_source.push_back(i);
        }
        newidx_prev = std::move(newidx);
    }
    return {LevelTree::from_parents(std::move(parents)), std::move(tips_in_source)};
}

Term reduced_fiber_element(const TreeMorphism& sigma, const Perm& labels) {
    const LevelTree& S = sigma.target;
    int k = S.tips();
    std::vector<Term> items;
    items.reserve(k);
    for (int j = 0; j < k; ++j) {
        auto [F, tip_pos] = sigma.fiber(j);
        LevelTree R = F.reduced();
        if (R.is_terminal()) {
            items.push_back(Term::leaf(labels[tip_pos[0] + 1]));
        } else {
            std::vector<Term> leaves;
            leaves.reserve(tip_pos.size());
            for (int p : tip_pos) leaves.push_back(Term::leaf(labels[p + 1]));
            items.push_back(Term::vertex(R, std::move(leaves)));
        }
    }
    return Term::vertex(S.reduced(), std::move(items));
}

namespace {

/* Level-by-level backtracking over target towers and map towers.  At
   level m every target vertex of level m-1 receives an ordered set of
   children; each source fiber over its preimages distributes its members
   into those children weakly increasingly, jointly onto. */
struct FaceSearch {
    const LevelTree& T;
    const Perm& labels;
    const std::function<void(Face&&)>& visit;
    long long budget;
    long long steps = 0;
    int serial = 0;

    std::vector<std::vector<int>> tgt_parents;
    std::vector<std::vector<int>> maps;

    void tick() {
        if (++steps > budget)
            throw capacity_error("face enumeration exceeded its step budget");
    }

    void run() {
        tgt_parents.assign(T.height(), {});
        maps.assign(T.height(), {});
        level(1);
    }

    void level(int m) {
        tick();
        if (m > T.height()) {
            emit();
            return;
        }
        int tprev = (m == 1) ? 1 : static_cast<int>(tgt_parents[m - 2].size());
        std::vector<std::vector<std::vector<int>>> fibers(tprev);
        for (int i = 0; i < T.level_size(m - 1); ++i) {
            int q = (m == 1) ? 0 : maps[m - 2][i];
            fibers[q].push_back(T.children(m - 1, i));
        }
        std::vector<int> tgt_par_row;
        std::vector<int> map_row(T.level_size(m), -1);
        assign_parent(m, 0, fibers, tgt_par_row, map_row);
    }

    /* Choose the children of target parent q at level m and distribute
       its fibers; then move to the next parent. */
    void assign_parent(int m, int q,
                       const std::vector<std::vector<std::vector<int>>>& fibers,
                       std::vector<int>& tgt_par_row, std::vector<int>& map_row) {
        tick();
        if (q == static_cast<int>(fibers.size())) {
            tgt_parents[m - 1] = tgt_par_row;
            maps[m - 1] = map_row;
            level(m + 1);
            return;
        }
        int total = 0;
        for (const auto& f : fibers[q]) total += static_cast<int>(f.size());
        int base = static_cast<int>(tgt_par_row.size());
        for (int r = 1; r <= total; ++r) {
            for (int c = 0; c < r; ++c) tgt_par_row.push_back(q);
            std::vector<int> counts(r, 0);
            split_fiber(m, q, 0, r, base, counts, fibers, tgt_par_row, map_row);
            tgt_par_row.resize(base);
        }
    }

    /* Distribute fiber fi of parent q over its r target children. */
    void split_fiber(int m, int q, size_t fi, int r, int base, std::vector<int>& counts,
                     const std::vector<std::vector<std::vector<int>>>& fibers,
                     std::vector<int>& tgt_par_row, std::vector<int>& map_row) {
        tick();
        const auto& flist = fibers[q];
        if (fi == flist.size()) {
            for (int c = 0; c < r; ++c)
                if (counts[c] == 0) return;          // not onto
            assign_parent(m, q + 1, fibers, tgt_par_row, map_row);
            return;
        }
        const auto& fib = flist[fi];
        std::vector<int> block(fib.size(), 0);
        std::function<void(size_t, int)> rec = [&](size_t idx, int minblock) {
            tick();
            if (idx == fib.size()) {
                for (size_t x = 0; x < fib.size(); ++x) {
                    map_row[fib[x]] = base + block[x];
                    ++counts[block[x]];
                }
                split_fiber(m, q, fi + 1, r, base, counts, fibers, tgt_par_row, map_row);
                for (size_t x = 0; x < fib.size(); ++x) {
                    --counts[block[x]];
                    map_row[fib[x]] = -1;
                }
                return;
            }
            for (int b = minblock; b < r; ++b) {
                block[idx] = b;
                rec(idx + 1, b);
            }
        };
        rec(0, 0);
    }

    void emit() {
        TreeMorphism mor;
        mor.source = T;
        mor.target = LevelTree::from_parents(tgt_parents);
        mor.maps = maps;
        Face f;
        f.c_sigma = reduced_fiber_element(mor, labels);
        f.deg = f.c_sigma.degree();
        f.morphism = std::move(mor);
        f.serial = serial++;
        visit(std::move(f));
    }
};

} // namespace

void for_each_face(const LabeledTree& t, const std::function<void(Face&&)>& visit,
                   const FaceLimits& limits) {
    FaceSearch search{t.shape(), t.labels(), visit, limits.max_steps,
                      0, 0, {}, {}};
    search.run();
}

std::vector<Face> enumerate_faces(const LabeledTree& t, const FaceLimits& limits) {
    std::vector<Face> out;
    for_each_face(t, [&](Face&& f) { out.push_back(std::move(f)); }, limits);
    return out;
}

std::vector<std::pair<Term, int>> d_reg_multiset(const LabeledTree& t,
                                                 const FaceLimits& limits) {
    int want = t.dim() - 1;
    std::map<std::string, std::pair<Term, int>> acc;
    for_each_face(
        t,
        [&](Face&& f) {
            if (f.deg != want) return;
            auto key = f.c_sigma.extended_barcode();
            auto it = acc.find(key);
            if (it == acc.end()) acc.emplace(key, std::make_pair(f.c_sigma, 1));
            else ++it->second.second;
        },
        limits);
    std::vector<std::pair<Term, int>> out;
    out.reserve(acc.size());
    for (auto& [k, tc] : acc) out.emplace_back(std::move(tc.first), tc.second);
    return out;
}

FormalSum d_reg_mod2(const LabeledTree& t, const FaceLimits& limits) {
    FormalSum f(Ring::F2);
    for (auto& [term, mult] : d_reg_multiset(t, limits)) f.add(term, mult);
    return f;
}

MergeDatum merge_datum_of(const TreeMorphism& sigma) {
    if (!sigma.is_quasibijection())
        throw validation_error("merge data exist only for quasibijection faces");
    if (sigma.target.edges() != sigma.source.edges() - 1)
        throw validation_error("merge data exist only in codimension one");
    int h = sigma.source.height();
    int m = 0;
    for (int s = 1; s <= h; ++s)
        if (sigma.target.level_size(s) == sigma.source.level_size(s) - 1) {
            m = s;
            break;
        }
    if (m == 0 || m == h) throw internal_error("no merged level found");
    int u = -1;
    for (int i = 0; i + 1 < sigma.source.level_size(m); ++i)
        if (sigma.maps[m - 1][i] == sigma.maps[m - 1][i + 1]) {
            u = i;
            break;
        }
    if (u < 0) throw internal_error("no merged vertex found");
    int q = sigma.maps[m - 1][u];
    MergeDatum d;
    d.level = m;
    d.vertex = u;
    for (int c : sigma.target.children(m, q)) {
        int src = -1;
        for (int i = 0; i < sigma.source.level_size(m + 1); ++i)
            if (sigma.maps[m][i] == c) {
                src = i;
                break;
            }
        if (src < 0) throw internal_error("merged child without preimage");
        d.pattern.push_back(sigma.source.parent(m + 1, src) == u ? 0 : 1);
    }
    return d;
}

} // namespace fnops
