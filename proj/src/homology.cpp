#include "fnops/homology.hpp"

#include "fnops/kernels.hpp"

namespace fnops {

ChainComplex build_G_complex(int n, Height h, int d_max, ExecMode mode) {
    if (n < 2) throw validation_error("arity must be >= 2");
    if (d_max < 0) throw validation_error("d_max must be >= 0");
    bool big = h.infinite ? (n > 6 || d_max > 9) : (n > 5 || d_max > 12);
    if (big) throw capacity_error("complex bounds exceed desk scale");

    ChainComplex c;
    c.n = n;
    c.h = h;
    c.d_max = d_max;
    c.basis.resize(d_max + 1);
    c.boundary.resize(d_max + 1);
    int hmax = h.infinite ? 0 : h.value;
    for (int d = 0; d <= d_max; ++d) c.basis[d] = labeled_basis(n, d, hmax);

    for (int d = 0; d <= d_max; ++d) {
        int rows = d == 0 ? 0 : static_cast<int>(c.basis[d - 1].size());
        if (d == 0 || c.basis[d].empty()) {
            c.boundary[d] = SparseIntMatrix(rows, static_cast<int>(c.basis[d].size()));
            continue;
        }
        std::map<std::string, int> index;
        for (int i = 0; i < rows; ++i) index.emplace(c.basis[d - 1][i].barcode(), i);
        c.boundary[d] = boundary_matrix(c.basis[d], index, rows, mode);
    }

    // validate d o d = 0 as a matrix identity
    for (int d = 1; d + 1 <= d_max; ++d) {
        const auto& a = c.boundary[d];
        const auto& b = c.boundary[d + 1];
        for (int j = 0; j < b.cols(); ++j) {
            std::map<int, long long> acc;
            for (const auto& [k, v] : b.column(j))
                for (const auto& [r, w] : a.column(k)) {
                    acc[r] += v * w;
                }
            for (const auto& [r, v] : acc)
                if (v != 0)
                    throw internal_error("boundary does not square to zero at degree " +
                                         std::to_string(d + 1));
        }
    }
    return c;
}

HomologyGroup homology(const ChainComplex& c, int degree) {
    if (degree < 0 || degree + 1 > c.d_max)
        throw validation_error(
            "homology at d requires boundaries up to d+1; build with a larger d_max");
    long long dim_d = static_cast<long long>(c.basis[degree].size());
    SmithForm below = smith_normal_form(c.boundary[degree]);       // C_d -> C_{d-1}
    SmithForm above = smith_normal_form(c.boundary[degree + 1]);   // C_{d+1} -> C_d
    HomologyGroup out;
    out.rank = dim_d - below.rank() - above.rank();
    out.torsion = above.torsion();
    return out;
}

} // namespace fnops
