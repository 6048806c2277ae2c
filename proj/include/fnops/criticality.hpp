#pragma once

#include <optional>

#include "fnops/signs.hpp"

namespace fnops {

/* Heights are finite or infinite (the colimit). */
struct Height {
    int value = 0;                 // >= 1 when finite
    bool infinite = false;

    static Height inf() { return {0, true}; }
    static Height of(int h) { return {h, false}; }
};

/* The critical dimension d_crit^h(n); nullopt means infinity. */
std::optional<int> d_crit(int arity, Height h);

struct Classification {
    int arity = 0;
    Height height;
    std::optional<int> critical_dim;   // nullopt = infinity
    bool regular = true;
    /* For non-regular (n, h): a bad cell of dimension d_crit^h(n), given as
       the reduced base barcode plus the height it lives at (suspend the
       base to witness_height to obtain the pruned witness tree). */
    std::string witness_barcode;
    int witness_base_height = 0;
};

Classification classify(int arity, Height h);

/* The witness as a pruned labeled tree at height h (suspended as needed);
   for infinite h the base height is used. */
LabeledTree witness_tree(const Classification& c);

/* A source-target datum of a pruned tree: a face nu together with
   interleaved tip lists a_1<b_1<...<a_s<b_s mapped to two target tips u <
   v, sharing level-m ancestors pairwise, with the amputated tree R of
   height m carrying at least one cell dimension. */
struct SourceTargetDatum {
    int face_serial = 0;
    int level = 0;        // m
    int s = 0;
    std::vector<int> a;   // 1-based tip positions
    std::vector<int> b;
    int u = 0, v = 0;     // 0-based target tips
    LevelTree amputated;  // R
};

std::vector<SourceTargetDatum> source_target_witnesses(const LabeledTree& t,
                                                       const FaceLimits& limits = {});

/* Counterterm machinery at the critical dimension (over F2). */
struct CountertermReport {
    FormalSum d_reg;            // F2
    FormalSum rhs;              // boundary of d_reg, to be cancelled
    std::vector<Term> pool;     // candidate cells
    std::vector<Term> chosen;   // lexicographically minimal solution
    bool solved = false;
};

/* Candidate pool: replace one vertex decoration of an equal-dimension face
   element by one of its own codimension-one faces. */
std::vector<Term> counterterm_pool(const LabeledTree& t, const FaceLimits& limits = {});

/* Solve d(x) = d(d_reg g_t) over F2 within the pool; throws internal_error
   when the pool admits no solution. */
CountertermReport find_counterterm(const LabeledTree& t, const FaceLimits& limits = {});

/* Check d(d_reg g_t + sum U) = 0 over F2. */
bool verify_counterterm(const LabeledTree& t, const std::vector<Term>& U,
                        const FaceLimits& limits = {});

} // namespace fnops
