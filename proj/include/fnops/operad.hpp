#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fnops/level_tree.hpp"

namespace fnops {

/* An element of the free operad F(Tree): a planar rooted tree whose
   vertices are decorated by unlabeled reduced level trees and whose leaves
   carry the labels 1..n.  A bare leaf is the operad identity.  Every term
   factors as (unlabeled normal form) . (leaf permutation); the label
   sequence in planar order is the permutation tuple. */
class Term {
public:
    Term() : leaf_label_(1) {}

    static Term leaf(int label);
    /* items.size() must equal deco.tips(); deco must be reduced and
       non-terminal. */
    static Term vertex(LevelTree deco, std::vector<Term> items);
    /* Single generator E_T for a labeled tree. */
    static Term generator(const LabeledTree& t);

    bool is_leaf() const { return leaf_label_ != 0; }
    int leaf_label() const { return leaf_label_; }
    const LevelTree& deco() const { return *deco_; }
    const std::vector<Term>& items() const { return subs_; }

    int arity() const;
    int degree() const;              // sum of decoration dimensions
    int vertex_count() const;
    /* Labels of the leaves in planar order; a permutation of 1..arity(). */
    std::vector<int> leaf_labels() const;
    Perm leaf_perm() const { return Perm(leaf_labels()); }
    /* Same shape with leaves relabeled 1..n in planar order. */
    Term unlabeled_normal_form() const;

    /* Relabel leaves through sigma (right action). */
    Term act(const Perm& sigma) const;
    /* Operadic composition: graft b into the leaf of *this labeled i. */
    Term compose_at(int i, const Term& b) const;

    /* If the term is a single generator (one vertex, all items leaves),
       return it as a labeled tree. */
    bool is_single_generator() const;
    LabeledTree as_labeled_tree() const;

    std::string extended_barcode() const;
    static Term parse_extended_barcode(const std::string& text);

    bool operator==(const Term& o) const;
    bool operator<(const Term& o) const;    // lexicographic by extended barcode

private:
    int leaf_label_ = 0;                    // > 0 for leaves
    std::shared_ptr<const LevelTree> deco_; // set for internal vertices
    std::vector<Term> subs_;
};

/* The ring tag of a formal sum. */
enum class Ring { Z, F2 };

/* Finite Z- or F2-linear combinations of operad terms, keyed and ordered
   by extended barcode. */
class FormalSum {
public:
    explicit FormalSum(Ring ring = Ring::Z) : ring_(ring) {}

    Ring ring() const { return ring_; }
    void add(const Term& t, long long c);
    void add(const FormalSum& other, long long scale = 1);
    long long coeff(const Term& t) const;
    long long coeff(const std::string& code) const;
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    FormalSum to_f2() const;
    FormalSum act(const Perm& sigma) const;

    const std::map<std::string, std::pair<Term, long long>>& entries() const {
        return terms_;
    }

    std::string to_string() const;
    bool operator==(const FormalSum& o) const;

private:
    Ring ring_;
    std::map<std::string, std::pair<Term, long long>> terms_;
};

} // namespace fnops
