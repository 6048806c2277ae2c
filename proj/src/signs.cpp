#include "fnops/signs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace fnops {

Term graft_face(const Term& c, const std::vector<Term>& items) {
    if (c.is_leaf()) return items[c.leaf_label() - 1];
    std::vector<Term> subs;
    subs.reserve(c.items().size());
    for (const auto& s : c.items()) subs.push_back(graft_face(s, items));
    return Term::vertex(c.deco(), std::move(subs));
}

FormalSum boundary_f2(const Term& t, const FaceLimits& limits) {
    FormalSum out(Ring::F2);
    if (t.is_leaf()) return out;
    auto base = LabeledTree::identity_labeled(t.deco());
    for (const auto& [c, mult] : d_reg_multiset(base, limits))
        out.add(graft_face(c, t.items()), mult);
    for (size_t j = 0; j < t.items().size(); ++j) {
        FormalSum inner = boundary_f2(t.items()[j], limits);
        for (const auto& [k, tc] : inner.entries()) {
            std::vector<Term> items2 = t.items();
            items2[j] = tc.first;
            out.add(Term::vertex(t.deco(), std::move(items2)), tc.second);
        }
    }
    return out;
}

namespace {

int d_crit_colimit(int arity) { return arity <= 3 ? -1 : arity; }   // -1 = infinity

bool is_regular_generator(const LevelTree& shape) {
    int dc = d_crit_colimit(shape.tips());
    return dc < 0 || shape.dim() < dc;
}

/* The published boundary formulas of the eight low generators, used to
   fix gauge freedom the linear part does not see (e.g. the pentagon). */
const std::vector<std::pair<const char*, std::vector<std::pair<int, const char*>>>>
    kAnchorFormulas = {
        {"[1|2|3]", {{1, "[[1|2]|3]"}, {-1, "[1|[2|3]]"}}},
        {"[1||2]", {{1, "[1|2]"}, {-1, "[2|1]"}}},
        {"[1|2|3|4]",
         {{1, "[[1|2]|3|4]"},
          {-1, "[1|[2|3]|4]"},
          {1, "[1|2|[3|4]]"},
          {-1, "[[1|2|3]|4]"},
          {-1, "[1|[2|3|4]]"}}},
        {"[1|2||3]",
         {{1, "[1|2|3]"},
          {-1, "[1|3|2]"},
          {1, "[3|1|2]"},
          {-1, "[[1|2]||3]"},
          {1, "[1|[2||3]]"},
          {1, "[[1||3]|2]"}}},
        {"[1||2|3]",
         {{1, "[1|2|3]"},
          {-1, "[2|1|3]"},
          {1, "[2|3|1]"},
          {1, "[1||[2|3]]"},
          {-1, "[2|[1||3]]"},
          {-1, "[[1||2]|3]"}}},
        {"[1|||2]", {{1, "[1||2]"}, {1, "[2||1]"}}},
        {"[1||2||3]",
         {{1, "[1|2||3]"},
          {-1, "[2|1||3]"},
          {-1, "[1||2|3]"},
          {1, "[1||3|2]"},
          {-1, "[[1||2]||3]"},
          {-1, "[1||[2||3]]"}}},
        {"[1|2|||3]",
         {{1, "[1|2||3]"},
          {-1, "[3||1|2]"},
          {1, "[[1|2]|||3]"},
          {-1, "[1|[2|||3]]"},
          {-1, "[[1|||3]|2]"}}},
};

/* Union-find over sign exponents with parity relations. */
struct ParityDSU {
    std::vector<int> parent, rel;        // rel: parity of node vs parent
    std::vector<int> fixed;              // -1 unknown, else 0/1 at the root

    explicit ParityDSU(int n) : parent(n), rel(n, 0), fixed(n, -1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<int, int> find(int x) {
        if (parent[x] == x) return {x, 0};
        auto [r, p] = find(parent[x]);
        parent[x] = r;
        rel[x] ^= p;
        return {r, rel[x]};
    }
    /* impose x xor y == d */
    bool relate(int x, int y, int d) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) return (px ^ py) == d;
        int carried = fixed[rx];
        parent[rx] = ry;
        rel[rx] = px ^ py ^ d;
        if (carried >= 0) {
            int v = carried ^ rel[rx];
            if (fixed[ry] >= 0 && fixed[ry] != v) return false;
            fixed[ry] = v;
        }
        return true;
    }
    bool pin(int x, int v) {
        auto [r, p] = find(x);
        int want = v ^ p;
        if (fixed[r] >= 0) return fixed[r] == want;
        fixed[r] = want;
        return true;
    }
    int value(int x) {
        auto [r, p] = find(x);
        return fixed[r] < 0 ? -1 : (fixed[r] ^ p);
    }
};

} // namespace

bool SignTable::covers(int arity, int dim) const {
    return arity <= n_max_ && dim <= d_max_;
}

FormalSum SignTable::vertex_boundary(const LevelTree& deco) const {
    std::string key = deco.barcode();
    auto it = table_.find(key);
    if (it == table_.end())
        throw capacity_error("sign table does not cover generator " + key);
    FormalSum out(Ring::Z);
    for (size_t i = 0; i < it->second.faces.size(); ++i)
        out.add(it->second.faces[i].c_sigma, it->second.eps[i]);
    return out;
}

namespace {

/* Collect the grafted preorder of (face element c with the items plugged
   into its leaves) as ids: vertex v of c -> its preorder index, the item
   at leaf j -> nv + j - 1. */
void grafted_order(const Term& c, int& vertex_counter, int nv,
                   std::vector<int>& order) {
    if (c.is_leaf()) {
        order.push_back(nv + c.leaf_label() - 1);
        return;
    }
    order.push_back(vertex_counter++);
    for (const auto& s : c.items()) grafted_order(s, vertex_counter, nv, order);
}

/* Koszul sign comparing the product orientation (face-element vertices,
   then the items in slot order) against the grafted composite's preorder:
   (-1)^(sum of deg*deg over inverted pairs). */
int graft_orientation_sign(const Term& c, const std::vector<Term>& items) {
    int nv = c.vertex_count();
    std::vector<int> degs(nv + items.size());
    {
        int vc = 0;
        std::function<void(const Term&)> collect = [&](const Term& x) {
            if (x.is_leaf()) return;
            degs[vc++] = x.deco().dim();
            for (const auto& s : x.items()) collect(s);
        };
        collect(c);
    }
    for (size_t j = 0; j < items.size(); ++j) degs[nv + j] = items[j].degree();
    std::vector<int> order;
    int vc = 0;
    grafted_order(c, vc, nv, order);
    // the product order is 0..nv-1 then the items in slot order, i.e. the
    // identity on ids; count weighted inversions of the grafted order
    long long expo = 0;
    for (size_t p = 0; p < order.size(); ++p)
        for (size_t q = p + 1; q < order.size(); ++q)
            if (order[p] > order[q]) expo += static_cast<long long>(degs[order[p]]) *
                                             degs[order[q]];
    return (expo & 1) ? -1 : 1;
}

} // namespace

FormalSum SignTable::boundary(const Term& t) const {
    FormalSum out(Ring::Z);
    if (t.is_leaf()) return out;
    // root vertex; the grafted facet carries the orientation-comparison
    // sign of moving the argument factors into place
    FormalSum root_part = vertex_boundary(t.deco());
    for (const auto& [k, tc] : root_part.entries())
        out.add(graft_face(tc.first, t.items()),
                tc.second * graft_orientation_sign(tc.first, t.items()));
    // deeper vertices, with the Koszul prefix over the vertex preorder
    long long prefix = t.deco().dim();
    for (size_t j = 0; j < t.items().size(); ++j) {
        FormalSum inner = boundary(t.items()[j]);
        long long s = (prefix & 1) ? -1 : 1;
        for (const auto& [k, tc] : inner.entries()) {
            std::vector<Term> items2 = t.items();
            items2[j] = tc.first;
            out.add(Term::vertex(t.deco(), std::move(items2)), s * tc.second);
        }
        prefix += t.items()[j].degree();
    }
    return out;
}

FormalSum SignTable::d_reg_signed(const LabeledTree& t) const {
    if (!t.shape().is_reduced())
        throw validation_error("d_reg_signed requires a reduced tree");
    if (!is_regular_generator(t.shape()))
        throw validation_error("generator is at or above the critical dimension");
    std::string key = t.shape().barcode();
    auto it = table_.find(key);
    if (it == table_.end())
        throw capacity_error("sign table does not cover generator " + key);
    FormalSum out(Ring::Z);
    for (size_t i = 0; i < it->second.faces.size(); ++i)
        out.add(it->second.faces[i].c_sigma.act(t.labels()), it->second.eps[i]);
    return out;
}

int SignTable::eps(const std::string& source_barcode, int serial) const {
    auto it = table_.find(source_barcode);
    if (it == table_.end())
        throw capacity_error("sign table does not cover " + source_barcode);
    for (size_t i = 0; i < it->second.faces.size(); ++i)
        if (it->second.faces[i].serial == serial) return it->second.eps[i];
    throw validation_error("face serial not in codimension one");
}

const std::vector<Face>& SignTable::faces_of(const std::string& source_barcode) const {
    auto it = table_.find(source_barcode);
    if (it == table_.end())
        throw capacity_error("sign table does not cover " + source_barcode);
    return it->second.faces;
}

SignTable SignTable::solve(int n_max, int d_max) {
    if (n_max > 6 || d_max > 6)
        throw capacity_error("sign solve bounds exceed desk scale");
    SignTable st;
    st.n_max_ = n_max;
    st.d_max_ = d_max;

    std::map<std::string, std::vector<std::pair<int, std::string>>> anchors;
    for (const auto& [gen, formula] : kAnchorFormulas) {
        auto& v = anchors[gen];
        for (const auto& [c, code] : formula) v.emplace_back(c, code);
    }

    for (int d = 0; d <= d_max; ++d) {
        for (const auto& shape : enumerate_reduced(d)) {
            if (shape.tips() > n_max || !is_regular_generator(shape)) continue;
            auto t = LabeledTree::identity_labeled(shape);
            PerTree pt;
            for (auto& f : enumerate_faces(t))
                if (f.deg == d - 1) pt.faces.push_back(std::move(f));
            int nf = static_cast<int>(pt.faces.size());
            pt.eps.assign(nf, 1);
            if (nf == 0) {
                st.table_.emplace(shape.barcode(), std::move(pt));
                continue;
            }

            ParityDSU dsu(nf);
            // (i) quasibijection anchors from the linear differential
            for (int i = 0; i < nf; ++i) {
                if (!pt.faces[i].morphism.is_quasibijection()) continue;
                int s = merge_sign(shape, merge_datum_of(pt.faces[i].morphism));
                if (!dsu.pin(i, s == 1 ? 0 : 1))
                    throw internal_error("conflicting linear anchors on " + shape.barcode());
            }
            // (ii) the d^2 = 0 pairing equations
            if (d >= 2) {
                std::map<std::string, std::vector<std::pair<int, long long>>> groups;
                for (int i = 0; i < nf; ++i) {
                    FormalSum e = st.boundary(pt.faces[i].c_sigma);
                    for (const auto& [key, tc] : e.entries())
                        groups[key].emplace_back(i, tc.second);
                }
                for (auto& [key, contribs] : groups) {
                    if (contribs.size() == 1)
                        throw internal_error("unpaired d^2 term " + key + " of " +
                                             shape.barcode());
                    if (contribs.size() != 2)
                        throw internal_error("d^2 term " + key + " of " + shape.barcode() +
                                             " has " + std::to_string(contribs.size()) +
                                             " contributions");
                    auto [i1, c1] = contribs[0];
                    auto [i2, c2] = contribs[1];
                    if (i1 == i2) {
                        if (c1 + c2 != 0)
                            throw internal_error("self-paired d^2 term " + key + " of " +
                                                 shape.barcode());
                        continue;
                    }
                    if (std::abs(c1) != std::abs(c2))
                        throw internal_error("unbalanced d^2 term " + key + " of " +
                                             shape.barcode());
                    // eps_1 c_1 + eps_2 c_2 = 0
                    int rel = (c1 * c2 > 0) ? 1 : 0;
                    if (!dsu.relate(i1, i2, rel))
                        throw internal_error("inconsistent sign system at " + key + " of " +
                                             shape.barcode());
                }
            }
            // (iii) gauge fixing: published formulas first, then the
            // lexicographically minimal exponent vector
            auto anchor_it = anchors.find(shape.barcode());
            for (int i = 0; i < nf; ++i) {
                if (dsu.value(i) >= 0) continue;
                bool pinned = false;
                if (anchor_it != anchors.end()) {
                    auto code = pt.faces[i].c_sigma.extended_barcode();
                    for (const auto& [c, term] : anchor_it->second)
                        if (term == code) {
                            if (!dsu.pin(i, c > 0 ? 0 : 1))
                                throw internal_error("fixture anchor conflict on " +
                                                     shape.barcode());
                            pinned = true;
                            break;
                        }
                }
                if (!pinned && dsu.value(i) < 0) dsu.pin(i, 0);
            }
            for (int i = 0; i < nf; ++i) pt.eps[i] = dsu.value(i) == 0 ? 1 : -1;
            st.table_.emplace(shape.barcode(), std::move(pt));
        }
    }
    return st;
}

std::string SignTable::to_json() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [src, pt] : table_) {
        for (size_t i = 0; i < pt.faces.size(); ++i) {
            if (!first) os << ",";
            first = false;
            os << "\n  {\"source\":\"" << src << "\",\"serial\":" << pt.faces[i].serial
               << ",\"target\":\"" << pt.faces[i].c_sigma.extended_barcode()
               << "\",\"sign\":" << pt.eps[i] << "}";
        }
    }
    os << "\n]\n";
    return os.str();
}

} // namespace fnops
