#pragma once

#include "fnops/homology.hpp"

namespace fnops {

/* Batch kernels over generator lists.  Each has a serial reference
   implementation and an OpenMP-parallel one producing identical results
   (outputs are written to indexed slots; no ordering races). */

/* All labeled reduced trees with the given tip count and dimension,
   height-bounded when hmax > 0, sorted by barcode. */
std::vector<LabeledTree> labeled_basis(int n, int dim, int hmax);

/* d_lin of every generator, as (basis-index, coefficient) columns against
   an index map of the lower basis. */
SparseIntMatrix boundary_matrix(const std::vector<LabeledTree>& basis_d,
                                const std::map<std::string, int>& index_dm1,
                                int rows, ExecMode mode);

/* d_lin(d_lin(g)) == 0 for every generator in the list. */
bool d2_zero_sweep(const std::vector<LabeledTree>& gens, ExecMode mode);

/* Bar-transport and merge-unshuffle agree on every generator. */
bool route_agreement_sweep(const std::vector<LabeledTree>& gens, ExecMode mode);

/* d_lin(t.act(s)) == d_lin(t).act(s) for every generator and a spread of
   permutations. */
bool equivariance_sweep(const std::vector<LabeledTree>& gens, ExecMode mode);

} // namespace fnops
