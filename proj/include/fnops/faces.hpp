#pragma once

#include <functional>

#include "fnops/bar.hpp"
#include "fnops/operad.hpp"

namespace fnops {

/* A morphism of h-trees sigma : T -> S: level-wise maps commuting with
   the parent maps, order-preserving on every parent fiber.  Faces are the
   morphisms with S pruned (possibly trunked) and sigma epi on tips. */
struct TreeMorphism {
    LevelTree source;
    LevelTree target;
    std::vector<std::vector<int>> maps;   // maps[m-1]: level-m vertices, m = 1..h

    int map(int m, int i) const { return m == 0 ? 0 : maps[m - 1][i]; }
    bool is_quasibijection() const { return source.tips() == target.tips(); }
    void validate() const;

    /* The j-th fiber (0-based target tip j): the subtree of the source
       over the path from tip j to the root, with its tip positions. */
    std::pair<LevelTree, std::vector<int>> fiber(int j) const;
};

struct Face {
    TreeMorphism morphism;
    Term c_sigma;            // the reduced fiber diagram composition
    int deg = 0;             // = c_sigma.degree()
    int serial = 0;          // position in the deterministic enumeration
};

struct FaceLimits {
    long long max_steps = 20'000'000;
};

/* All faces of t, deterministically ordered.  Throws capacity_error when
   the backtracking exceeds limits.max_steps. */
std::vector<Face> enumerate_faces(const LabeledTree& t, const FaceLimits& limits = {});

/* Streaming variant: visit(face) is called in enumeration order. */
void for_each_face(const LabeledTree& t, const std::function<void(Face&&)>& visit,
                   const FaceLimits& limits = {});

/* The element C_sigma of a face of the (labeled) source. */
Term reduced_fiber_element(const TreeMorphism& sigma, const Perm& labels);

/* Codimension-one part of the boundary with F2 coefficients: the multiset
   of C_sigma over faces with deg = dim - 1.  On a bad cell this is the
   regular part only. */
FormalSum d_reg_mod2(const LabeledTree& t, const FaceLimits& limits = {});

/* Same multiset before ring reduction; multiplicities > 1 are preserved. */
std::vector<std::pair<Term, int>> d_reg_multiset(const LabeledTree& t,
                                                 const FaceLimits& limits = {});

/* Recover the merge datum of a codimension-one quasibijection face; used
   to anchor face signs to the linear differential. */
MergeDatum merge_datum_of(const TreeMorphism& sigma);

} // namespace fnops
