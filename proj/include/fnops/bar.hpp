#pragma once

#include "fnops/operad.hpp"

namespace fnops {

/* A factor of an iterated-bar monomial: either a suspended generator
   (label > 0) or a suspension of a word of deeper factors.  A monomial of
   height h nests generators at depth exactly h.

   Sign convention.  Every factor carries one suspension symbol per bar
   iteration it sits inside; listing all symbols of a monomial level by
   level (and left to right within a level) reproduces the coordinate
   order of the underlying cell: first the level-1 blocks in increasing
   order, then the level-2 blocks, and so on.  Symbols are odd within
   their own level and commute across levels.  A merge of two adjacent
   factors at level m removes one level-m symbol and interleaves the
   deeper symbols of the two factors; its sign is

       (-1)^(position of the removed symbol + inversions of the symbol
             reordering + 1),

   positions counted level-major.  This is the orientation bookkeeping of
   the cells themselves and is the unique consistent convention matching
   the published boundary formulas for the low generators. */
struct BarNode {
    int label = 0;                 // > 0: the generator x_label
    std::vector<BarNode> word;     // inner word when label == 0

    bool is_gen() const { return label > 0; }
    bool operator==(const BarNode&) const = default;
};

struct BarMonomial {
    int height = 1;
    std::vector<BarNode> word;
    bool operator==(const BarMonomial&) const = default;
};

/* The isomorphism omega from generators to bar monomials (inductive
   cases (a)/(b): subtrees become suspended words, bamboo branches become
   iterated suspensions of a generator).  Requires a reduced tree. */
BarMonomial omega(const LabeledTree& t);

/* Structural inverse; accepts any basis monomial and returns the pruned
   labeled tree it encodes (with a trunk when the top word has a single
   factor). */
LabeledTree omega_inv(const BarMonomial& m);

/* The bar differential on a monomial: all merges of adjacent factors,
   with signs per the symbol calculus above. */
std::vector<std::pair<int, BarMonomial>> bar_boundary(const BarMonomial& m);

/* A quasibijection face datum: merge the adjacent vertices u, u+1
   (0-based) at level m (1 <= m < h), interleaving their child branches
   according to pattern (0 = branch of u, 1 = branch of u+1, in order). */
struct MergeDatum {
    int level = 1;
    int vertex = 0;
    std::vector<int> pattern;
};

std::vector<MergeDatum> all_merges(const LevelTree& shape);

/* Closed-form sign of a merge:
   (-1)^( sum_{s<m} k_s + u + sum_{s>m} sum_{transposed pairs} r_s r_s' )
   where r_s counts the level-s vertices of a branch. */
int merge_sign(const LevelTree& shape, const MergeDatum& d);

/* The merged pruned tree (not reduced) together with its tip labels. */
LabeledTree apply_merge(const LabeledTree& t, const MergeDatum& d);

/* The linear differential computed through the bar monomial structure
   (the defining route). */
std::vector<std::pair<int, LabeledTree>> d_lin_terms_bar(const LabeledTree& t);

/* The same differential computed directly on the tree by the
   merge-and-unshuffle description with closed-form signs (the oracle
   route; no symbol lists are built). */
std::vector<std::pair<int, LabeledTree>> d_lin_terms_merge(const LabeledTree& t);

/* d_lin as a formal sum of single-generator terms. */
FormalSum d_lin(const LabeledTree& t, Ring ring = Ring::Z);

} // namespace fnops
