#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "fnops/errors.hpp"
#include "fnops/perm.hpp"

namespace fnops {

/* A tree with levels: a tower of order-preserving maps
   [k_h] -> [k_{h-1}] -> ... -> [k_0] = [1].  Vertices at level m are
   0-based internally; parents(m)[i] is the parent at level m-1 of vertex i
   at level m.  Tips are the level-h vertices.  The terminal tree U_h has
   every k_m = 1. */
class LevelTree {
public:
    LevelTree() : parents_{{0}} {}   // corolla of arity 1 == terminal U_1

    /* parents[m-1] is the map [k_m] -> [k_{m-1}], m = 1..h. */
    static LevelTree from_parents(std::vector<std::vector<int>> parents);

    static LevelTree corolla(int n);
    static LevelTree terminal(int h);

    /* Pruned tree of the given height from tip gap depths (all in 1..h).
       height == 0 means "use max gap", which yields a reduced tree. */
    static LevelTree from_gaps(const std::vector<int>& gaps, int height = 0);

    int height() const { return static_cast<int>(parents_.size()); }
    int level_size(int m) const {
        return m == 0 ? 1 : static_cast<int>(parents_[m - 1].size());
    }
    int tips() const { return level_size(height()); }
    int parent(int m, int i) const { return parents_[m - 1][i]; }
    const std::vector<int>& level_parents(int m) const { return parents_[m - 1]; }

    int edges() const;
    int dim() const;                 // e(T) - h - 1, or 0 for terminal trees
    bool is_terminal() const;
    bool is_pruned() const;
    bool has_trunk() const;
    bool is_reduced() const { return is_pruned() && !has_trunk(); }

    int ancestor(int m_from, int i, int m_to) const;
    std::vector<int> children(int m, int i) const;     // children live at level m+1
    /* Number of vertices in the subtree rooted at vertex i of level m
       (including i itself). */
    int subtree_vertices(int m, int i) const;

    /* Gap depth between adjacent tips i and i+1 (0-based i): h minus the
       level at which their paths to the root merge.  Requires a pruned
       tree of arity >= 1. */
    std::vector<int> gaps() const;

    LevelTree suspend() const;

    /* The maximal reduced subtree r(T): cut the trunk, prune branches that
       do not reach tips, repeat.  r(U_h) = U_h.  Tips are preserved. */
    LevelTree reduced() const;

    /* Barcode with identity labels; requires a reduced tree. */
    std::string barcode() const;

    auto operator<=>(const LevelTree&) const = default;

private:
    explicit LevelTree(std::vector<std::vector<int>> parents)
        : parents_(std::move(parents)) {}

    std::vector<std::vector<int>> parents_;
};

/* A labeled tree (T, l): the labeling assigns label labels()[i] (1-based
   values) to tip i.  The label sequence read left to right is exactly the
   permutation tuple of the free Sigma_n-factorization. */
class LabeledTree {
public:
    LabeledTree() = default;
    LabeledTree(LevelTree shape, Perm labels)
        : shape_(std::move(shape)), labels_(std::move(labels)) {
        if (labels_.size() != shape_.tips())
            throw validation_error("labeling size does not match tip count");
    }

    static LabeledTree identity_labeled(LevelTree shape) {
        int n = shape.tips();
        return LabeledTree(std::move(shape), Perm::identity(n));
    }

    const LevelTree& shape() const { return shape_; }
    const Perm& labels() const { return labels_; }
    int arity() const { return shape_.tips(); }
    int dim() const { return shape_.dim(); }

    LabeledTree act(const Perm& sigma) const {
        return LabeledTree(shape_, labels_.then(sigma));
    }
    LabeledTree suspend() const { return LabeledTree(shape_.suspend(), labels_); }
    LabeledTree reduced() const { return LabeledTree(shape_.reduced(), labels_); }

    std::string barcode() const;
    static LabeledTree parse_barcode(const std::string& text);

    bool operator==(const LabeledTree& o) const = default;
    bool operator<(const LabeledTree& o) const {
        if (shape_ != o.shape_) return shape_ < o.shape_;
        return labels_ < o.labels_;
    }

private:
    LevelTree shape_;
    Perm labels_;
};

/* A flag of pre-orders (pi_1 < ... < pi_h) on {1..n}: each pi_s is an
   ordered partition into blocks (stored as sorted label sets); pi_{s+1}
   refines pi_s keeping block order, and pi_h consists of singletons. */
struct FlagOfPreorders {
    std::vector<std::vector<std::vector<int>>> levels;   // levels[s-1] = blocks of pi_s

    int height() const { return static_cast<int>(levels.size()); }
    bool is_reduced() const { return !levels.empty() && levels.front().size() > 1; }
    void validate() const;
};

/* Tree <-> flag bijection (Tree^h(n) ~ Flag^h(n)); tree must be pruned. */
FlagOfPreorders tree_to_flag(const LabeledTree& t);
LabeledTree flag_to_tree(const FlagOfPreorders& f);

/* All unlabeled reduced trees of dimension d, optionally of fixed arity,
   ordered lexicographically by barcode.  Over all arities there are 2^d. */
std::vector<LevelTree> enumerate_reduced(int d, std::optional<int> arity = std::nullopt);

/* Reduced trees of dimension d with n tips and height <= hmax (hmax = 0
   means unbounded).  These are the suspension-identified pruned h-trees
   spanning the finite-height complexes. */
std::vector<LevelTree> enumerate_reduced_bounded(int n, int d, int hmax);

} // namespace fnops
