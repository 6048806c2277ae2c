#include "fnops/snf.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace fnops {

void SparseIntMatrix::add(int r, int c, long long v) {
    if (v == 0) return;
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw validation_error("sparse entry out of range");
    auto& col = col_[c];
    auto it = col.find(r);
    if (it == col.end()) col.emplace(r, v);
    else {
        it->second += v;
        if (it->second == 0) col.erase(it);
    }
}

long long SparseIntMatrix::nonzeros() const {
    long long n = 0;
    for (const auto& c : col_) n += static_cast<long long>(c.size());
    return n;
}

IntegerMatrix SparseIntMatrix::to_dense() const {
    IntegerMatrix m(rows_, cols_);
    for (int c = 0; c < cols_; ++c)
        for (const auto& [r, v] : col_[c]) m.at(r, c) = v;
    return m;
}

std::string SparseIntMatrix::to_matrix_market() const {
    std::ostringstream os;
    os << "%%MatrixMarket matrix coordinate integer general\n";
    os << rows_ << " " << cols_ << " " << nonzeros() << "\n";
    for (int c = 0; c < cols_; ++c)
        for (const auto& [r, v] : col_[c]) os << (r + 1) << " " << (c + 1) << " " << v << "\n";
    return os.str();
}

std::vector<Int> SmithForm::torsion() const {
    std::vector<Int> t;
    for (const auto& d : divisors)
        if (d > 1) t.push_back(d);
    return t;
}

namespace {

Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

/* Textbook Smith reduction on a dense matrix: bring the smallest pivot to
   the corner, reduce its row and column by division steps, eliminate, and
   recurse; finally enforce the divisibility chain. */
SmithForm dense_snf(IntegerMatrix m) {
    int R = m.rows(), C = m.cols();
    std::vector<Int> diag;
    int t = 0;
    while (t < R && t < C) {
        // find the smallest nonzero entry in the remaining block
        int pr = -1, pc = -1;
        Int best;
        for (int r = t; r < R; ++r)
            for (int c = t; c < C; ++c) {
                const Int& v = m.at(r, c);
                if (v == 0) continue;
                Int a = int_abs(v);
                if (pr < 0 || a < best) {
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0) break;
        // move to the corner
        if (pr != t)
            for (int c = 0; c < C; ++c) std::swap(m.at(pr, c), m.at(t, c));
        if (pc != t)
            for (int r = 0; r < R; ++r) std::swap(m.at(r, pc), m.at(r, t));
        // reduce until the pivot divides its row and column
        bool clean = false;
        while (!clean) {
            clean = true;
            Int p = m.at(t, t);
            for (int r = t + 1; r < R; ++r) {
                if (m.at(r, t) == 0) continue;
                Int q = m.at(r, t) / p;
                if (q != 0)
                    for (int c = t; c < C; ++c) m.at(r, c) -= q * m.at(t, c);
                if (m.at(r, t) != 0) {
                    // remainder is smaller; swap rows and restart
                    for (int c = 0; c < C; ++c) std::swap(m.at(r, c), m.at(t, c));
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            for (int c = t + 1; c < C; ++c) {
                if (m.at(t, c) == 0) continue;
                Int q = m.at(t, c) / p;
                if (q != 0)
                    for (int r = t; r < R; ++r) m.at(r, c) -= q * m.at(r, t);
                if (m.at(t, c) != 0) {
                    for (int r = 0; r < R; ++r) std::swap(m.at(r, c), m.at(r, t));
                    clean = false;
                    break;
                }
            }
        }
        diag.push_back(int_abs(m.at(t, t)));
        ++t;
    }
    // divisibility chain
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[i] == 0) std::swap(diag[i], diag[j]);
            if (diag[j] % diag[i] != 0) {
                Int g = gcd(diag[i], diag[j]);
                Int l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    SmithForm out;
    for (auto& d : diag)
        if (d != 0) out.divisors.push_back(d);
    std::sort(out.divisors.begin(), out.divisors.end());
    return out;
}

} // namespace

SmithForm smith_normal_form(IntegerMatrix m) { return dense_snf(std::move(m)); }

SmithForm smith_normal_form(const SparseIntMatrix& sm) {
    // Phase 1: eliminate unit pivots on the sparse structure.  Every unit
    // pivot contributes divisor 1; fill-in stays small with a Markowitz
    // pivot choice.
    int R = sm.rows(), C = sm.cols();
    std::vector<std::unordered_map<int, Int>> rows(R), cols(C);
    for (int c = 0; c < C; ++c)
        for (const auto& [r, v] : sm.column(c)) {
            rows[r].emplace(c, v);
            cols[c].emplace(r, v);
        }
    std::vector<char> row_done(R, 0), col_done(C, 0);
    long long units = 0;

    auto set_entry = [&](int r, int c, const Int& v) {
        if (v == 0) {
            rows[r].erase(c);
            cols[c].erase(r);
        } else {
            rows[r][c] = v;
            cols[c][r] = v;
        }
    };

    for (;;) {
        // deterministic Markowitz among unit entries
        int pr = -1, pc = -1;
        long long best_cost = -1;
        for (int r = 0; r < R; ++r) {
            if (row_done[r] || rows[r].empty()) continue;
            for (const auto& [c, v] : rows[r]) {
                if (col_done[c]) continue;
                if (v != 1 && v != -1) continue;
                long long cost = (long long)(rows[r].size() - 1) *
                                 (long long)(cols[c].size() - 1);
                if (best_cost < 0 || cost < best_cost ||
                    (cost == best_cost && (r < pr || (r == pr && c < pc)))) {
                    best_cost = cost;
                    pr = r;
                    pc = c;
                }
                if (best_cost == 0) break;
            }
            if (best_cost == 0) break;
        }
        if (pr < 0) break;
        Int pivot = rows[pr][pc];
        // eliminate the column below/above the pivot
        std::vector<std::pair<int, Int>> col_entries(cols[pc].begin(), cols[pc].end());
        for (const auto& [r, v] : col_entries) {
            if (r == pr) continue;
            Int factor = v * pivot;   // pivot^2 = 1, so v/pivot = v*pivot
            std::vector<std::pair<int, Int>> row_entries(rows[pr].begin(), rows[pr].end());
            for (const auto& [c, w] : row_entries) {
                if (c == pc) continue;
                Int cur = 0;
                auto it = rows[r].find(c);
                if (it != rows[r].end()) cur = it->second;
                set_entry(r, c, cur - factor * w);
            }
            set_entry(r, pc, 0);
        }
        // clear the pivot row
        std::vector<int> prow_cols;
        for (const auto& [c, w] : rows[pr]) prow_cols.push_back(c);
        for (int c : prow_cols) set_entry(pr, c, 0);
        row_done[pr] = 1;
        col_done[pc] = 1;
        ++units;
    }

    // Phase 2: dense Smith form on what remains.
    std::vector<int> live_rows, live_cols;
    for (int r = 0; r < R; ++r)
        if (!rows[r].empty()) live_rows.push_back(r);
    for (int c = 0; c < C; ++c)
        if (!cols[c].empty()) live_cols.push_back(c);
    SmithForm rest;
    if (!live_rows.empty()) {
        IntegerMatrix dense(static_cast<int>(live_rows.size()),
                            static_cast<int>(live_cols.size()));
        std::unordered_map<int, int> rowidx;
        for (size_t i = 0; i < live_rows.size(); ++i) rowidx[live_rows[i]] = (int)i;
        for (size_t j = 0; j < live_cols.size(); ++j)
            for (const auto& [r, v] : cols[live_cols[j]])
                dense.at(rowidx[r], static_cast<int>(j)) = v;
        rest = dense_snf(std::move(dense));
    }
    SmithForm out;
    out.divisors.assign(static_cast<size_t>(units), Int(1));
    for (const auto& d : rest.divisors) out.divisors.push_back(d);
    std::sort(out.divisors.begin(), out.divisors.end());
    return out;
}

} // namespace fnops
