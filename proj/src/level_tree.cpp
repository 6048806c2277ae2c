#include "fnops/level_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace fnops {

LevelTree LevelTree::from_parents(std::vector<std::vector<int>> parents) {
    if (parents.empty()) throw validation_error("height must be >= 1");
    int prev = 1;
    for (size_t m = 0; m < parents.size(); ++m) {
        const auto& pm = parents[m];
        if (pm.empty()) throw validation_error("empty level");
        int last = 0;
        for (int p : pm) {
            if (p < 0 || p >= prev) throw validation_error("parent index out of range");
            if (p < last) throw validation_error("parent map is not order-preserving");
            last = p;
        }
        prev = static_cast<int>(pm.size());
    }
    return LevelTree(std::move(parents));
}

LevelTree LevelTree::corolla(int n) {
    if (n < 1) throw validation_error("corolla arity must be >= 1");
    return LevelTree({std::vector<int>(n, 0)});
}

LevelTree LevelTree::terminal(int h) {
    if (h < 1) throw validation_error("height must be >= 1");
    std::vector<std::vector<int>> p(h, {0});
    return LevelTree(std::move(p));
}

LevelTree LevelTree::from_gaps(const std::vector<int>& gaps, int height) {
    int h = height;
    if (h == 0) for (int g : gaps) h = std::max(h, g);
    if (h == 0) h = 1;                       // single tip
    for (int g : gaps)
        if (g < 1 || g > h) throw validation_error("gap depth out of range");
    int n = static_cast<int>(gaps.size()) + 1;
    // Tips i and i+1 are in distinct level-m blocks iff gaps[i] > h - m.
    std::vector<std::vector<int>> parents(h);
    std::vector<int> prev_block(n, 0);       // block index of each tip at level m-1
    for (int m = 1; m <= h; ++m) {
        std::vector<int> block(n);
        int b = 0;
        block[0] = 0;
        for (int i = 1; i < n; ++i) {
            if (gaps[i - 1] > h - m) ++b;
            block[i] = b;
        }
        parents[m - 1].assign(b + 1, 0);
        for (int i = 0; i < n; ++i) parents[m - 1][block[i]] = prev_block[i];
        prev_block = block;
    }
    return LevelTree(std::move(parents));
}

int LevelTree::edges() const {
    int e = 0;
    for (const auto& pm : parents_) e += static_cast<int>(pm.size());
    return e;
}

int LevelTree::dim() const {
    if (is_terminal()) return 0;
    return edges() - height() - 1;
}

bool LevelTree::is_terminal() const {
    for (const auto& pm : parents_)
        if (pm.size() != 1) return false;
    return true;
}

bool LevelTree::is_pruned() const {
    for (int m = 1; m < height(); ++m) {
        std::vector<char> hit(level_size(m), 0);
        for (int p : parents_[m]) hit[p] = 1;
        for (char c : hit)
            if (!c) return false;
    }
    return true;
}

bool LevelTree::has_trunk() const {
    for (int m = 1; m <= height(); ++m)
        if (level_size(m) == 1) return true;
    return false;
}

int LevelTree::ancestor(int m_from, int i, int m_to) const {
    int v = i;
    for (int m = m_from; m > m_to; --m) v = parents_[m - 1][v];
    return v;
}

std::vector<int> LevelTree::children(int m, int i) const {
    std::vector<int> out;
    if (m >= height()) return out;
    const auto& pm = parents_[m];
    for (int c = 0; c < static_cast<int>(pm.size()); ++c)
        if (pm[c] == i) out.push_back(c);
    return out;
}

int LevelTree::subtree_vertices(int m, int i) const {
    int count = 0;
    std::vector<int> cur{i};
    for (int lvl = m; lvl <= height(); ++lvl) {
        count += static_cast<int>(cur.size());
        if (lvl == height()) break;
        std::vector<int> next;
        std::vector<char> in(level_size(lvl), 0);
        for (int v : cur) in[v] = 1;
        for (int c = 0; c < level_size(lvl + 1); ++c)
            if (in[parents_[lvl][c]]) next.push_back(c);
        cur = std::move(next);
    }
    return count;
}

std::vector<int> LevelTree::gaps() const {
    int h = height(), n = tips();
    std::vector<int> out;
    out.reserve(n > 0 ? n - 1 : 0);
    for (int i = 0; i + 1 < n; ++i) {
        int a = i, b = i + 1, m = h;
        while (a != b) {
            a = parents_[m - 1][a];
            b = parents_[m - 1][b];
            --m;
        }
        out.push_back(h - m);
    }
    return out;
}

LevelTree LevelTree::suspend() const {
    std::vector<std::vector<int>> p;
    p.reserve(parents_.size() + 1);
    p.push_back({0});
    for (const auto& pm : parents_) p.push_back(pm);
    return LevelTree(std::move(p));
}

LevelTree LevelTree::reduced() const {
    if (is_terminal()) return *this;
    std::vector<std::vector<int>> p = parents_;
    for (;;) {
        // prune: drop vertices whose subtree contains no tip
        int h = static_cast<int>(p.size());
        std::vector<std::vector<char>> keep(h + 1);
        keep[h].assign(p[h - 1].size(), 1);
        for (int m = h - 1; m >= 0; --m) {
            keep[m].assign(m == 0 ? 1 : p[m - 1].size(), 0);
            for (size_t c = 0; c < p[m].size(); ++c)
                if (keep[m + 1][c]) keep[m][p[m][c]] = 1;
        }
        bool pruned_all = true;
        for (int m = 1; m < h; ++m)
            for (char k : keep[m])
                if (!k) pruned_all = false;
        if (!pruned_all) {
            std::vector<std::vector<int>> q(h);
            std::vector<int> newidx_prev(1, 0);    // identity on the root level
            for (int m = 1; m <= h; ++m) {
                std::vector<int> newidx(p[m - 1].size(), -1);
                int nxt = 0;
                for (size_t i = 0; i < p[m - 1].size(); ++i)
                    if (keep[m][i]) newidx[i] = nxt++;
                q[m - 1].reserve(nxt);
                for (size_t i = 0; i < p[m - 1].size(); ++i)
                    if (keep[m][i]) q[m - 1].push_back(newidx_prev[p[m - 1][i]]);
                newidx_prev = std::move(newidx);
            }
            p = std::move(q);
            continue;
        }
        // cut the trunk below the highest level of size one
        int cut = 0;
        for (int m = 1; m < h; ++m)
            if (p[m - 1].size() == 1) cut = m;
        if (cut > 0) {
            p.erase(p.begin(), p.begin() + cut);
            continue;
        }
        break;
    }
    return LevelTree(std::move(p));
}

std::string LevelTree::barcode() const {
    return LabeledTree::identity_labeled(*this).barcode();
}

std::string LabeledTree::barcode() const {
    if (!shape_.is_reduced())
        throw validation_error("barcode requires a reduced tree");
    std::ostringstream os;
    os << '[';
    auto g = shape_.gaps();
    int n = shape_.tips();
    for (int i = 0; i < n; ++i) {
        if (i > 0)
            for (int b = 0; b < g[i - 1]; ++b) os << '|';
        os << labels_[i + 1];
    }
    os << ']';
    return os.str();
}

LabeledTree LabeledTree::parse_barcode(const std::string& text) {
    size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw validation_error("barcode parse error at position " +
                               std::to_string(pos) + ": " + why);
    };
    if (text.empty() || text.front() != '[') fail("expected '['");
    pos = 1;
    std::vector<int> labels, gaps;
    bool expect_label = true;
    while (pos < text.size() && text[pos] != ']') {
        if (expect_label) {
            if (!isdigit(static_cast<unsigned char>(text[pos]))) fail("expected label");
            int v = 0;
            while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos])))
                v = v * 10 + (text[pos++] - '0');
            labels.push_back(v);
            expect_label = false;
        } else {
            if (text[pos] != '|') fail("expected '|' or ']'");
            int bars = 0;
            while (pos < text.size() && text[pos] == '|') { ++bars; ++pos; }
            gaps.push_back(bars);
            expect_label = true;
        }
    }
    if (pos >= text.size()) fail("unterminated barcode");
    if (expect_label && !labels.empty()) fail("dangling bars");
    ++pos;
    if (pos != text.size()) fail("trailing input");
    if (labels.empty()) fail("empty barcode");
    return LabeledTree(LevelTree::from_gaps(gaps), Perm(labels));
}

void FlagOfPreorders::validate() const {
    if (levels.empty()) throw validation_error("flag height must be >= 1");
    int n = 0;
    for (const auto& b : levels.front()) n += static_cast<int>(b.size());
    for (size_t s = 0; s < levels.size(); ++s) {
        std::vector<char> seen(n + 1, 0);
        int total = 0;
        for (const auto& block : levels[s]) {
            if (block.empty()) throw validation_error("empty block in flag");
            for (int v : block) {
                if (v < 1 || v > n || seen[v])
                    throw validation_error("flag blocks do not partition {1..n}");
                seen[v] = 1;
                ++total;
            }
        }
        if (total != n) throw validation_error("flag blocks do not cover {1..n}");
    }
    // pi_{s+1} refines pi_s preserving block order
    for (size_t s = 0; s + 1 < levels.size(); ++s) {
        size_t coarse = 0;
        std::vector<char> left(n + 1, 0);
        size_t used = 0;
        for (const auto& block : levels[s + 1]) {
            while (coarse < levels[s].size()) {
                bool subset = true;
                for (int v : block) {
                    bool in = std::binary_search(levels[s][coarse].begin(),
                                                 levels[s][coarse].end(), v);
                    if (!in) { subset = false; break; }
                }
                if (subset) break;
                if (used != levels[s][coarse].size() && used != 0)
                    throw validation_error("flag refinement is not order-preserving");
                ++coarse;
                used = 0;
            }
            if (coarse >= levels[s].size())
                throw validation_error("flag level does not refine the one below");
            used += block.size();
            if (used > levels[s][coarse].size())
                throw validation_error("flag refinement overflow");
            if (used == levels[s][coarse].size()) { ++coarse; used = 0; }
            (void)left;
        }
    }
    for (const auto& block : levels.back())
        if (block.size() != 1) throw validation_error("top pre-order must be a total order");
}

FlagOfPreorders tree_to_flag(const LabeledTree& t) {
    const LevelTree& T = t.shape();
    if (!T.is_pruned()) throw validation_error("flag bijection requires a pruned tree");
    int h = T.height(), n = T.tips();
    FlagOfPreorders f;
    f.levels.resize(h);
    for (int s = 1; s <= h; ++s) {
        std::vector<std::vector<int>> blocks(T.level_size(s));
        for (int i = 0; i < n; ++i)
            blocks[T.ancestor(h, i, s)].push_back(t.labels()[i + 1]);
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        f.levels[s - 1] = std::move(blocks);
    }
    return f;
}

LabeledTree flag_to_tree(const FlagOfPreorders& f) {
    f.validate();
    int h = f.height();
    // pi_h is a total order; its singletons give the tip labels left to right.
    std::vector<int> labels;
    for (const auto& b : f.levels[h - 1]) labels.push_back(b[0]);
    int n = static_cast<int>(labels.size());
    std::vector<std::vector<int>> parents(h);
    // block index of each label at level s
    auto block_of = [&](int s, int label) {
        for (size_t b = 0; b < f.levels[s - 1].size(); ++b)
            if (std::binary_search(f.levels[s - 1][b].begin(), f.levels[s - 1][b].end(), label))
                return static_cast<int>(b);
        throw validation_error("label missing from flag level");
    };
    for (int s = 1; s <= h; ++s) {
        parents[s - 1].assign(f.levels[s - 1].size(), 0);
        for (size_t b = 0; b < f.levels[s - 1].size(); ++b) {
            int rep = f.levels[s - 1][b][0];
            parents[s - 1][b] = (s == 1) ? 0 : block_of(s - 1, rep);
        }
    }
    (void)n;
    return LabeledTree(LevelTree::from_parents(std::move(parents)), Perm(labels));
}

namespace {

/* Compositions of total into exactly parts positive parts, each <= maxpart
   (maxpart = 0: unbounded). */
void compositions(int total, int parts, int maxpart,
                  std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        if (total >= 1 && (maxpart == 0 || total <= maxpart)) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    int hi = (maxpart == 0) ? total - (parts - 1) : std::min(maxpart, total - (parts - 1));
    for (int first = 1; first <= hi; ++first) {
        cur.push_back(first);
        compositions(total - first, parts - 1, maxpart, cur, out);
        cur.pop_back();
    }
}

std::vector<LevelTree> sorted_by_barcode(std::vector<LevelTree> trees) {
    std::vector<std::pair<std::string, LevelTree>> keyed;
    keyed.reserve(trees.size());
    for (auto& t : trees) keyed.emplace_back(t.barcode(), std::move(t));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<LevelTree> out;
    out.reserve(keyed.size());
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
}

} // namespace

std::vector<LevelTree> enumerate_reduced(int d, std::optional<int> arity) {
    if (d < 0) throw validation_error("dimension must be >= 0");
    std::vector<LevelTree> out;
    // A reduced tree with n tips and gap vector g has dim = sum(g) - 1, and
    // the gap vector is an arbitrary composition of d+1 into n-1 parts.
    int nlo = arity ? *arity : 2, nhi = arity ? *arity : d + 2;
    for (int n = nlo; n <= nhi; ++n) {
        if (n < 2 || n - 1 > d + 1) continue;
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(d + 1, n - 1, 0, cur, comps);
        for (const auto& g : comps) out.push_back(LevelTree::from_gaps(g));
    }
    return sorted_by_barcode(std::move(out));
}

std::vector<LevelTree> enumerate_reduced_bounded(int n, int d, int hmax) {
    if (d < 0 || n < 2) throw validation_error("bad enumeration bounds");
    if (n - 1 > d + 1) return {};
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(d + 1, n - 1, hmax, cur, comps);
    std::vector<LevelTree> out;
    out.reserve(comps.size());
    for (const auto& g : comps) out.push_back(LevelTree::from_gaps(g));
    return sorted_by_barcode(std::move(out));
}

} // namespace fnops
