#pragma once

#include "fnops/faces.hpp"

namespace fnops {

/* Substitute the items of a vertex into the leaves of a face element of
   its decoration: the leaf of c labeled j receives items[j-1]. */
Term graft_face(const Term& c, const std::vector<Term>& items);

/* Mod-2 boundary of an operad element: the derivation extending the
   codimension-one face multiset of every vertex.  Needs no signs. */
FormalSum boundary_f2(const Term& t, const FaceLimits& limits = {});

/* Signs for the full differential d = d_lin + d_prt on the regular range.

   For every unlabeled regular generator (dim < d_crit of its arity) within
   the solved bounds, eps assigns +-1 to each codimension-one face so that
   (i) quasibijection faces carry the linear-differential signs, (ii) the
   derivation extension squares to zero, and (iii) residual gauge freedom
   is fixed first by the published low-generator formulas, then by the
   lexicographically minimal exponent vector.  Solved bottom-up in the
   dimension as a linear system over F2 in the sign exponents. */
class SignTable {
public:
    /* Solve for all regular generators with arity <= n_max, dim <= d_max.
       Throws capacity_error for bounds beyond desk scale and
       internal_error if the parity system is unsolvable. */
    static SignTable solve(int n_max, int d_max);

    int n_max() const { return n_max_; }
    int d_max() const { return d_max_; }
    bool covers(int arity, int dim) const;

    /* The signed codimension-one boundary of a generator. */
    FormalSum d_reg_signed(const LabeledTree& t) const;

    /* The derivation extension of d_reg_signed to decomposables, with
       Koszul signs over the preorder of vertices. */
    FormalSum boundary(const Term& t) const;

    /* eps of one face (faces indexed by enumeration serial). */
    int eps(const std::string& source_barcode, int serial) const;
    const std::vector<Face>& faces_of(const std::string& source_barcode) const;

    /* JSON array keyed by (source barcode, face serial, target code). */
    std::string to_json() const;

private:
    struct PerTree {
        std::vector<Face> faces;       // codimension-one faces only
        std::vector<int> eps;
    };
    std::map<std::string, PerTree> table_;
    int n_max_ = 0, d_max_ = 0;

    FormalSum vertex_boundary(const LevelTree& deco) const;   // identity labels
};

} // namespace fnops
