#include "fnops/bar.hpp"

namespace fnops {

namespace {

BarNode node_for_vertex(const LevelTree& T, const Perm& labels, int m, int i) {
    BarNode n;
    if (m == T.height()) {
        n.label = labels[i + 1];
        return n;
    }
    for (int c : T.children(m, i)) n.word.push_back(node_for_vertex(T, labels, m + 1, c));
    return n;
}

} // namespace

BarMonomial omega(const LabeledTree& t) {
    if (!t.shape().is_reduced())
        throw validation_error("omega requires a reduced tree");
    BarMonomial m;
    m.height = t.shape().height();
    for (int c : t.shape().children(0, 0))
        m.word.push_back(node_for_vertex(t.shape(), t.labels(), 1, c));
    return m;
}

LabeledTree omega_inv(const BarMonomial& m) {
    int h = m.height;
    std::vector<std::vector<int>> parents(h);
    std::vector<int> labels;
    std::vector<std::pair<const BarNode*, int>> cur;   // (node, parent index)
    for (const auto& f : m.word) cur.emplace_back(&f, 0);
    for (int lvl = 1; lvl <= h; ++lvl) {
        std::vector<std::pair<const BarNode*, int>> next;
        parents[lvl - 1].reserve(cur.size());
        for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
            auto [node, par] = cur[i];
            parents[lvl - 1].push_back(par);
            if (node->is_gen()) {
                if (lvl != h)
                    throw validation_error("generator factor above the top bar level");
                labels.push_back(node->label);
            } else {
                if (lvl == h) throw validation_error("word factor at the top bar level");
                if (node->word.empty()) throw validation_error("empty bar word");
                for (const auto& f : node->word) next.emplace_back(&f, i);
            }
        }
        cur = std::move(next);
    }
    return LabeledTree(LevelTree::from_parents(std::move(parents)), Perm(labels));
}

namespace {

/* Flatten a monomial into per-level factor lists; lists[s-1] holds
   pointers to the level-s factors in left-to-right order, which is the
   symbol order of the underlying cell. */
std::vector<std::vector<const BarNode*>> level_lists(const BarMonomial& m) {
    std::vector<std::vector<const BarNode*>> lists(m.height);
    std::vector<const BarNode*> cur;
    for (const auto& f : m.word) cur.push_back(&f);
    for (int lvl = 1; lvl <= m.height; ++lvl) {
        lists[lvl - 1] = cur;
        std::vector<const BarNode*> next;
        for (const BarNode* f : cur)
            for (const auto& g : f->word) next.push_back(&g);
        cur = std::move(next);
    }
    return lists;
}

/* Rebuild a node after interleaving the child words of lf and rf. */
BarNode interleave_nodes(const BarNode& lf, const BarNode& rf,
                         const std::vector<int>& pattern) {
    BarNode merged;
    size_t ia = 0, ib = 0;
    for (int bit : pattern)
        merged.word.push_back(bit == 0 ? lf.word[ia++] : rf.word[ib++]);
    return merged;
}

struct MergePair {
    const BarNode* lf;
    const BarNode* rf;
    int level;
};

/* Adjacent same-word factor pairs, anywhere in the monomial. */
void collect_merge_pairs(const std::vector<BarNode>& w, int level,
                         std::vector<MergePair>& out) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (!w[i].is_gen() && !w[i + 1].is_gen())
            out.push_back({&w[i], &w[i + 1], level});
    for (const auto& f : w)
        if (!f.is_gen()) collect_merge_pairs(f.word, level + 1, out);
}

} // namespace

std::vector<std::pair<int, BarMonomial>> bar_boundary(const BarMonomial& m) {
    std::vector<std::pair<int, BarMonomial>> out;
    auto lists = level_lists(m);

    // Annotate every factor with an id in symbol (level-major) order; the
    // id of a factor is the position of its own suspension symbol.
    std::map<const BarNode*, long long> old_id;
    long long next_id = 0;
    for (const auto& lvl : lists)
        for (const BarNode* f : lvl) old_id[f] = next_id++;

    std::vector<MergePair> pairs;
    collect_merge_pairs(m.word, 1, pairs);

    for (auto [lf, rf, mlvl] : pairs) {
        {
            int s = static_cast<int>(lf->word.size());
            int t = static_cast<int>(rf->word.size());
            // position of the vanishing symbol in the affine-quotient
            // frame, which drops one coordinate per level
            long long removed_pos = old_id.at(rf) - mlvl;
            for (const auto& pattern : interleavings(s, t)) {
                // inversion count of the symbol reordering: branches of rf
                // passing branches of lf, including every deeper symbol
                long long K = 0;
                {
                    // sizes (total symbols) of each branch, per level
                    std::vector<std::vector<long long>> lsz, rsz;
                    auto per_level = [&](const BarNode& b) {
                        std::vector<long long> sz;
                        std::vector<const BarNode*> cur{&b};
                        while (!cur.empty()) {
                            sz.push_back(static_cast<long long>(cur.size()));
                            std::vector<const BarNode*> nx;
                            for (auto* f : cur)
                                for (const auto& g : f->word) nx.push_back(&g);
                            cur = std::move(nx);
                        }
                        return sz;
                    };
                    for (const auto& b : lf->word) lsz.push_back(per_level(b));
                    for (const auto& b : rf->word) rsz.push_back(per_level(b));
                    int ia = 0, ib = 0;
                    for (int bit : pattern) {
                        if (bit == 0) {
                            // this lf-branch is passed by all rf-branches
                            // already placed, level by level
                            for (int j = 0; j < ib; ++j) {
                                size_t depth = std::min(lsz[ia].size(), rsz[j].size());
                                for (size_t dd = 0; dd < depth; ++dd)
                                    K += lsz[ia][dd] * rsz[j][dd];
                            }
                            ++ia;
                        } else {
                            ++ib;
                        }
                    }
                }
                int sign = ((removed_pos + K) & 1) ? -1 : 1;
                // rebuild the monomial with the merged factor
                BarMonomial r;
                r.height = m.height;
                BarNode merged = interleave_nodes(*lf, *rf, pattern);
                // structural copy replacing (lf, rf) by merged
                struct Rebuild {
                    const BarNode *lf, *rf;
                    const BarNode* merged;
                    std::vector<BarNode> copy_word(const std::vector<BarNode>& w) {
                        std::vector<BarNode> out;
                        for (size_t i = 0; i < w.size(); ++i) {
                            if (&w[i] == lf) {
                                out.push_back(*merged);
                                ++i;   // skip rf
                            } else {
                                BarNode c;
                                c.label = w[i].label;
                                c.word = copy_word(w[i].word);
                                out.push_back(std::move(c));
                            }
                        }
                        return out;
                    }
                };
                Rebuild rb{lf, rf, &merged};
                r.word = rb.copy_word(m.word);
                out.emplace_back(sign, std::move(r));
            }
        }
    }
    (void)lists;
    return out;
}

std::vector<MergeDatum> all_merges(const LevelTree& shape) {
    std::vector<MergeDatum> out;
    int h = shape.height();
    for (int m = 1; m < h; ++m) {
        for (int u = 0; u + 1 < shape.level_size(m); ++u) {
            if (shape.parent(m, u) != shape.parent(m, u + 1)) continue;
            int s = static_cast<int>(shape.children(m, u).size());
            int t = static_cast<int>(shape.children(m, u + 1).size());
            for (auto& pat : interleavings(s, t)) {
                MergeDatum d;
                d.level = m;
                d.vertex = u;
                d.pattern = std::move(pat);
                out.push_back(std::move(d));
            }
        }
    }
    return out;
}

namespace {

/* Level profile of the branch rooted at vertex i of level m: the number
   of its vertices at each level m..h. */
std::vector<int> branch_profile(const LevelTree& T, int m, int i) {
    std::vector<int> prof;
    std::vector<int> cur{i};
    for (int lvl = m; lvl <= T.height(); ++lvl) {
        prof.push_back(static_cast<int>(cur.size()));
        if (lvl == T.height()) break;
        std::vector<int> next;
        std::vector<char> in(T.level_size(lvl), 0);
        for (int v : cur) in[v] = 1;
        for (int c = 0; c < T.level_size(lvl + 1); ++c)
            if (in[T.parent(lvl + 1, c)]) next.push_back(c);
        cur = std::move(next);
    }
    return prof;
}

} // namespace

int merge_sign(const LevelTree& shape, const MergeDatum& d) {
    // symbols before u in the affine-quotient frame (one coordinate of
    // every level is gauge-fixed)
    long long expo = d.vertex;
    for (int s = 1; s < d.level; ++s) expo += shape.level_size(s) - 1;
    auto ca = shape.children(d.level, d.vertex);
    auto cb = shape.children(d.level, d.vertex + 1);
    std::vector<std::vector<int>> pa, pb;
    for (int c : ca) pa.push_back(branch_profile(shape, d.level + 1, c));
    for (int c : cb) pb.push_back(branch_profile(shape, d.level + 1, c));
    int ia = 0, ib = 0;
    for (int bit : d.pattern) {
        if (bit == 0) {
            for (int j = 0; j < ib; ++j) {
                size_t depth = std::min(pa[ia].size(), pb[j].size());
                for (size_t dd = 0; dd < depth; ++dd)
                    expo += static_cast<long long>(pa[ia][dd]) * pb[j][dd];
            }
            ++ia;
        } else {
            ++ib;
        }
    }
    return (expo & 1) ? -1 : 1;
}

namespace {

struct Nest {
    std::vector<Nest> kids;
    int tip = -1;
};

Nest to_nest(const LevelTree& T, int m, int i, int& tip_counter) {
    Nest n;
    if (m == T.height()) {
        n.tip = tip_counter++;
        return n;
    }
    for (int c : T.children(m, i)) n.kids.push_back(to_nest(T, m + 1, c, tip_counter));
    return n;
}

} // namespace

LabeledTree apply_merge(const LabeledTree& t, const MergeDatum& d) {
    const LevelTree& T = t.shape();
    int h = T.height();
    int tc = 0;
    Nest root = to_nest(T, 0, 0, tc);
    // walk down to the word holding vertex u at level d.level
    std::vector<int> path;   // child positions from the root to u
    int v = d.vertex;
    for (int j = d.level; j >= 1; --j) {
        int par = T.parent(j, v);
        int pos = 0;
        for (int w = 0; w < v; ++w)
            if (T.parent(j, w) == par) ++pos;
        path.push_back(pos);
        v = par;
    }
    Nest* holder = &root;
    for (int j = static_cast<int>(path.size()) - 1; j >= 1; --j)
        holder = &holder->kids[path[j]];
    int upos = path[0];
    Nest& a = holder->kids[upos];
    Nest& b = holder->kids[upos + 1];
    if (static_cast<int>(d.pattern.size()) !=
        static_cast<int>(a.kids.size() + b.kids.size()))
        throw validation_error("interleaving pattern does not match branch counts");
    Nest merged;
    size_t ia = 0, ib = 0;
    for (int bit : d.pattern)
        merged.kids.push_back(bit == 0 ? std::move(a.kids[ia++]) : std::move(b.kids[ib++]));
    holder->kids[upos] = std::move(merged);
    holder->kids.erase(holder->kids.begin() + upos + 1);

    // flatten back into a tower of the same height, breadth-first
    std::vector<std::vector<int>> parents(h);
    std::vector<int> tip_order;
    std::vector<Nest*> cur{&root};
    for (int depth = 1; depth <= h; ++depth) {
        std::vector<Nest*> next;
        for (int i = 0; i < static_cast<int>(cur.size()); ++i)
            for (auto& k : cur[i]->kids) {
                parents[depth - 1].push_back(i);
                next.push_back(&k);
            }
        cur = std::move(next);
    }
    for (auto* n : cur) tip_order.push_back(n->tip);
    std::vector<int> labels;
    labels.reserve(tip_order.size());
    for (int tip : tip_order) labels.push_back(t.labels()[tip + 1]);
    return LabeledTree(LevelTree::from_parents(std::move(parents)), Perm(labels));
}

std::vector<std::pair<int, LabeledTree>> d_lin_terms_bar(const LabeledTree& t) {
    std::vector<std::pair<int, LabeledTree>> out;
    for (const auto& [sign, mono] : bar_boundary(omega(t)))
        out.emplace_back(sign, omega_inv(mono).reduced());
    return out;
}

std::vector<std::pair<int, LabeledTree>> d_lin_terms_merge(const LabeledTree& t) {
    if (!t.shape().is_reduced())
        throw validation_error("the linear differential requires a reduced tree");
    std::vector<std::pair<int, LabeledTree>> out;
    for (const auto& d : all_merges(t.shape()))
        out.emplace_back(merge_sign(t.shape(), d), apply_merge(t, d).reduced());
    return out;
}

FormalSum d_lin(const LabeledTree& t, Ring ring) {
    FormalSum f(ring);
    for (const auto& [sign, term] : d_lin_terms_merge(t))
        f.add(Term::generator(term), sign);
    return f;
}

} // namespace fnops
