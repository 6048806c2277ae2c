#pragma once

#include "fnops/criticality.hpp"
#include "fnops/snf.hpp"

namespace fnops {

enum class ExecMode { Serial, Parallel };

/* The chain complex (G^h_*(n), d_lin) in degrees 0..d_max: bases are the
   labeled reduced trees of height <= h (the suspension-identified pruned
   h-trees), ordered lexicographically by barcode; boundary matrices come
   from the linear differential and are validated to square to zero. */
struct ChainComplex {
    int n = 2;
    Height h;
    int d_max = 0;
    std::vector<std::vector<LabeledTree>> basis;     // [degree]
    std::vector<SparseIntMatrix> boundary;           // [degree]: C_d -> C_{d-1}
};

ChainComplex build_G_complex(int n, Height h, int d_max,
                             ExecMode mode = ExecMode::Parallel);

struct HomologyGroup {
    long long rank = 0;
    std::vector<Int> torsion;
};

/* Homology at the given degree; requires degree + 1 <= d_max so that the
   incoming boundary is available. */
HomologyGroup homology(const ChainComplex& c, int degree);

} // namespace fnops
