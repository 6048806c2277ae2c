#include "fnops/acceptance.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "fnops/bar.hpp"
#include "fnops/free_lie.hpp"
#include "fnops/json_io.hpp"
#include "fnops/kernels.hpp"
#include "fnops/signs.hpp"

namespace fnops {

namespace {

void note(std::ostream* p, const std::string& s) {
    if (p) *p << "  .. " << s << "\n" << std::flush;
}

/* ------------------------------------------------------------------ */
/* 1. enumeration counts and the complete dimension <= 3 lists        */

CriterionResult criterion_enumeration() {
    CriterionResult r{1, "enumeration: 2^d counts and the published d<=3 lists", true, "", {}};
    nlohmann::json counts = nlohmann::json::array();
    for (int d = 0; d <= 8; ++d) {
        auto list = enumerate_reduced(d);
        counts.push_back(static_cast<long long>(list.size()));
        if (list.size() != (1ull << d)) {
            r.passed = false;
            r.detail += "count(" + std::to_string(d) + ") != 2^d; ";
        }
    }
    const std::vector<std::vector<std::string>> fig3 = {
        {"[1|2]"},
        {"[1|2|3]", "[1||2]"},
        {"[1|2|3|4]", "[1|2||3]", "[1||2|3]", "[1|||2]"},
        {"[1|2|3|4|5]", "[1|2||3|4]", "[1|2|3||4]", "[1||2|3|4]", "[1||2||3]",
         "[1|2|||3]", "[1|||2|3]", "[1||||2]"},
    };
    nlohmann::json lists = nlohmann::json::array();
    for (int d = 0; d <= 3; ++d) {
        std::set<std::string> got, expect(fig3[d].begin(), fig3[d].end());
        nlohmann::json row = nlohmann::json::array();
        for (const auto& t : enumerate_reduced(d)) {
            got.insert(t.barcode());
            row.push_back(t.barcode());
        }
        lists.push_back(row);
        if (got != expect) {
            r.passed = false;
            r.detail += "dimension-" + std::to_string(d) + " list differs; ";
        }
    }
    r.payload["counts"] = counts;
    r.payload["lists"] = lists;
    return r;
}

/* ------------------------------------------------------------------ */
/* 2. the linear differential                                          */

CriterionResult criterion_linear(ExecMode mode, std::ostream* progress) {
    CriterionResult r{2, "linear differential: quoted formulas, d^2 = 0, route agreement",
                      true, "", {}};
    auto bc = [](const char* s) { return LabeledTree::parse_barcode(s); };
    auto expect_terms = [&](const char* gen,
                            std::vector<std::pair<long long, const char*>> terms) {
        FormalSum want(Ring::Z);
        for (auto& [c, s] : terms) want.add(Term::generator(bc(s)), c);
        bool ok = d_lin(bc(gen)) == want;
        if (!ok) r.detail += std::string("formula for ") + gen + " differs; ";
        return ok;
    };
    bool formulas = true;
    formulas &= d_lin(bc("[1|2]")).is_zero();
    formulas &= expect_terms("[1||2]", {{1, "[1|2]"}, {-1, "[2|1]"}});
    formulas &= expect_terms("[1|2||3]", {{1, "[1|2|3]"}, {-1, "[1|3|2]"}, {1, "[3|1|2]"}});
    formulas &= expect_terms("[1|2|||3]", {{1, "[1|2||3]"}, {-1, "[3||1|2]"}});
    r.passed &= formulas;
    r.payload["formulas_ok"] = formulas;

    long long gens_checked = 0;
    bool d2_ok = true;
    for (int n = 2; n <= 6 && d2_ok; ++n)
        for (int d = 1; d <= 8; ++d) {
            auto basis = labeled_basis(n, d, 0);
            gens_checked += static_cast<long long>(basis.size());
            if (!basis.empty() && !d2_zero_sweep(basis, mode)) {
                d2_ok = false;
                r.detail += "d_lin^2 != 0 at n=" + std::to_string(n) +
                            " d=" + std::to_string(d) + "; ";
                break;
            }
        }
    note(progress, "d^2 sweep over " + std::to_string(gens_checked) + " generators");
    r.passed &= d2_ok;
    r.payload["d2_generators"] = gens_checked;
    r.payload["d2_ok"] = d2_ok;

    long long agree_checked = 0;
    bool agree_ok = true;
    for (int n = 2; n <= 5 && agree_ok; ++n)
        for (int d = 1; d <= 6; ++d) {
            auto basis = labeled_basis(n, d, 0);
            agree_checked += static_cast<long long>(basis.size());
            if (!basis.empty() && !route_agreement_sweep(basis, mode)) {
                agree_ok = false;
                r.detail += "bar and merge routes disagree at n=" + std::to_string(n) +
                            " d=" + std::to_string(d) + "; ";
                break;
            }
        }
    note(progress, "route agreement over " + std::to_string(agree_checked) + " generators");
    r.passed &= agree_ok;
    r.payload["route_generators"] = agree_checked;
    r.payload["route_ok"] = agree_ok;
    return r;
}

/* ------------------------------------------------------------------ */
/* 3. the full differential on the regular range                       */

const std::vector<std::pair<const char*, std::vector<std::pair<long long, const char*>>>>
    kPublished = {
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

CriterionResult criterion_signed(std::ostream* progress) {
    CriterionResult r{3, "full differential: published formulas and d^2 = 0 with signs",
                      true, "", {}};
    SignTable st = SignTable::solve(5, 4);
    note(progress, "sign table solved for n <= 5, dim <= 4");
    bool formulas = true;
    for (const auto& [gen, terms] : kPublished) {
        FormalSum want(Ring::Z);
        for (auto& [c, code] : terms) want.add(Term::parse_extended_barcode(code), c);
        auto got = st.d_reg_signed(LabeledTree::parse_barcode(gen));
        if (!(got == want)) {
            formulas = false;
            r.detail += std::string("signed formula for ") + gen + " differs; ";
        }
    }
    r.passed &= formulas;
    r.payload["published_formulas_ok"] = formulas;

    long long checked = 0;
    bool d2_ok = true;
    auto check_tree = [&](const LevelTree& shape) {
        auto base = LabeledTree::identity_labeled(shape);
        for (const auto& s : all_perms(shape.tips())) {
            auto t = base.act(s);
            FormalSum dd(Ring::Z);
            FormalSum dt = st.d_reg_signed(t);
            for (const auto& [k, tc] : dt.entries())
                dd.add(st.boundary(tc.first), tc.second);
            ++checked;
            if (!dd.is_zero()) {
                d2_ok = false;
                r.detail += "d^2 != 0 on " + t.barcode() + "; ";
                return;
            }
        }
    };
    for (int d = 1; d <= 3 && d2_ok; ++d)
        for (const auto& shape : enumerate_reduced(d)) {
            if (shape.tips() > 4) continue;
            check_tree(shape);
            if (!d2_ok) break;
        }
    for (int d = 1; d <= 4 && d2_ok; ++d)
        for (const auto& shape : enumerate_reduced(d, 5)) {
            check_tree(shape);
            if (!d2_ok) break;
        }
    note(progress, "signed d^2 over " + std::to_string(checked) + " labeled generators");
    r.passed &= d2_ok;
    r.payload["d2_generators"] = checked;
    r.payload["d2_ok"] = d2_ok;
    return r;
}

/* ------------------------------------------------------------------ */
/* 4. the criticality table and bad-cell witnesses                     */

CriterionResult criterion_criticality(std::ostream* progress) {
    CriterionResult r{4, "criticality: classification, plotted patterns, witnesses",
                      true, "", {}};
    // Proposition items (i)-(iii)
    bool prop_ok = true;
    for (int n = 2; n <= 10; ++n)
        for (int h = 1; h <= 5; ++h) {
            bool expect = (n <= 3) || (n <= 5 && h <= 2) || (h == 1);
            auto c = classify(n, Height::of(h));
            if (c.regular != expect) prop_ok = false;
            bool dcrit_inf = !d_crit(n, Height::of(h)).has_value();
            if (c.regular != dcrit_inf) prop_ok = false;
        }
    for (int n = 2; n <= 10; ++n) {
        auto c = classify(n, Height::inf());
        if (c.regular != (n <= 3)) prop_ok = false;
    }
    r.passed &= prop_ok;
    r.payload["proposition_items_ok"] = prop_ok;

    // plotted pattern fixtures from the two figures
    auto bad_at = [](int n, int d, Height h) {
        auto dc = d_crit(n, h);
        return dc.has_value() && d >= *dc;
    };
    bool plots_ok = true;
    {
        // colimit figure: crosses and bullets
        std::vector<std::pair<int, int>> crosses, bullets;
        for (int n = 4; n <= 8; ++n)
            for (int d = n; d <= 10; ++d) crosses.push_back({n, d});
        crosses.push_back({9, 9});
        crosses.push_back({9, 10});
        crosses.push_back({10, 10});
        for (int d = 0; d <= 10; ++d) bullets.push_back({2, d});
        for (int d = 1; d <= 10; ++d) bullets.push_back({3, d});
        for (int n = 4; n <= 10; ++n) {
            bullets.push_back({n, n - 2});
            bullets.push_back({n, n - 1});
        }
        for (auto [n, d] : crosses)
            if (!bad_at(n, d, Height::inf())) plots_ok = false;
        for (auto [n, d] : bullets)
            if (bad_at(n, d, Height::inf())) plots_ok = false;
    }
    {
        // height-2 figure
        std::vector<std::pair<int, int>> crosses = {
            {6, 6}, {6, 7}, {6, 8}, {6, 9},  {7, 7},  {7, 8}, {7, 9}, {7, 10},
            {7, 11}, {8, 8}, {8, 9}, {8, 10}, {9, 9}, {9, 10}, {10, 10}};
        std::vector<std::pair<int, int>> bullets = {
            {2, 0}, {2, 1}, {3, 1}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {4, 4}, {4, 5},
            {5, 3}, {5, 4}, {5, 5}, {5, 6}, {5, 7}, {6, 4}, {6, 5}, {7, 5}, {7, 6},
            {8, 6}, {8, 7}, {9, 7}, {9, 8}, {10, 8}, {10, 9}};
        for (auto [n, d] : crosses)
            if (!bad_at(n, d, Height::of(2))) plots_ok = false;
        for (auto [n, d] : bullets)
            if (bad_at(n, d, Height::of(2))) plots_ok = false;
    }
    r.passed &= plots_ok;
    r.payload["plots_ok"] = plots_ok;

    // witnesses: dimension equals the critical one; a source-target
    // certificate exists
    bool witness_ok = true;
    nlohmann::json witnesses = nlohmann::json::array();
    for (int n = 2; n <= 10; ++n)
        for (int h = 1; h <= 5; ++h) {
            auto c = classify(n, Height::of(h));
            if (c.regular) continue;
            auto w = witness_tree(c);
            bool dim_ok = w.dim() == *c.critical_dim;
            bool cert_ok = false;
            FaceLimits lim;
            lim.max_steps = 2'000'000;
            try {
                cert_ok = !source_target_witnesses(w, lim).empty();
            } catch (const capacity_error&) {
                cert_ok = false;
            }
            if (!(dim_ok && cert_ok)) {
                witness_ok = false;
                r.detail += "witness check failed at n=" + std::to_string(n) +
                            " h=" + std::to_string(h) + "; ";
            }
            nlohmann::json wj;
            wj["arity"] = n;
            wj["height"] = h;
            wj["witness"] = c.witness_barcode;
            wj["dim"] = w.dim();
            wj["certified"] = cert_ok;
            witnesses.push_back(std::move(wj));
        }
    note(progress, "bad-cell witnesses certified");
    r.passed &= witness_ok;
    r.payload["witnesses"] = witnesses;
    return r;
}

/* ------------------------------------------------------------------ */
/* 5. the two bad-cell case studies                                    */

CriterionResult criterion_bad_cells(std::ostream* progress) {
    CriterionResult r{5, "bad cells: boundary supports and counterterms", true, "", {}};
    auto mar = LabeledTree::parse_barcode("[1|2|||3|4]");
    auto multiset = d_reg_multiset(mar);
    int linear = 0, decomposable = 0;
    for (const auto& [term, mult] : multiset)
        (term.is_single_generator() ? linear : decomposable) += mult;
    // As published: 2 linear + 8 decomposable.  The systematic enumeration
    // finds 2 + 12; see the decisions ledger for why the four extra faces
    // are required for the counterterm mechanics to close.
    bool support_as_published = (linear == 2 && decomposable == 8);
    if (!support_as_published)
        r.detail += "Mar d_reg support is 2+" + std::to_string(decomposable) +
                    ", published count is 2+8 (see ledger); ";
    r.payload["mar_linear_terms"] = linear;
    r.payload["mar_decomposable_terms"] = decomposable;
    r.payload["mar_support_as_published"] = support_as_published;
    r.passed &= support_as_published;

    // boundary of the regular part: exactly the published intersection cells
    FormalSum rhs(Ring::F2);
    for (const auto& [term, mult] : multiset) rhs.add(boundary_f2(term), mult);
    std::set<std::string> got;
    for (const auto& [k, tc] : rhs.entries()) got.insert(k);
    std::set<std::string> expect = {"[[1|3]|[2|||4]]",  "[[3|1]|[2|||4]]",
                                    "[[1|||3]|[2|4]]",  "[[1|||3]|[4|2]]",
                                    "[[1||3]|[2||4]]",  "[[3||1]|[4||2]]"};
    bool inter_ok = got == expect;
    if (!inter_ok) r.detail += "Mar boundary-of-boundary support differs; ";
    r.passed &= inter_ok;
    r.payload["mar_intersection_ok"] = inter_ok;

    auto parse_terms = [](std::vector<const char*> codes) {
        std::vector<Term> out;
        for (auto* c : codes) out.push_back(Term::parse_extended_barcode(c));
        return out;
    };
    bool u1 = verify_counterterm(mar, parse_terms({"[[1|||3]|[4||2]]", "[[1||3]|[2|||4]]"}));
    bool u2 = verify_counterterm(mar, parse_terms({"[[1|||3]|[2||4]]", "[[3||1]|[2|||4]]"}));
    if (!u1) r.detail += "Mar U' fails; ";
    if (!u2) r.detail += "Mar U'' fails; ";
    r.passed &= u1 && u2;
    r.payload["mar_u_primary"] = u1;
    r.payload["mar_u_diagonal"] = u2;
    note(progress, "Mar counterterms verified");

    // the solver finds some counterterm as well
    bool solver_ok = false;
    try {
        auto rep = find_counterterm(mar);
        solver_ok = rep.solved && verify_counterterm(mar, rep.chosen);
        nlohmann::json chosen = nlohmann::json::array();
        for (const auto& t : rep.chosen) chosen.push_back(t.extended_barcode());
        r.payload["mar_solver_counterterm"] = chosen;
    } catch (const std::exception& e) {
        r.detail += std::string("Mar counterterm solver failed: ") + e.what() + "; ";
    }
    r.passed &= solver_ok;
    r.payload["mar_solver_ok"] = solver_ok;

    // Tamarkin
    auto tam = LabeledTree::parse_barcode("[1|2||3|4||5|6]");
    FaceLimits lim;
    lim.max_steps = 50'000'000;
    bool cnu = false;
    for (const auto& f : enumerate_faces(tam, lim))
        if (f.c_sigma.extended_barcode() == "[[1||3||5]|[2||4||6]]" && f.deg == 6) cnu = true;
    if (!cnu) r.detail += "Tamarkin equal-dimension face not found; ";
    r.passed &= cnu;
    r.payload["tamarkin_c_nu_found"] = cnu;
    note(progress, "Tamarkin face found");

    bool tam_u = verify_counterterm(
        tam,
        parse_terms({"[[1||[3||5]]|[2||4||6]]", "[[1||3|5]|[2||4||6]]",
                     "[[1||5|3]|[2||4||6]]", "[[1||3||5]|[[2||4]||6]]",
                     "[[1||3||5]|[2|4||6]]", "[[1||3||5]|[4|2||6]]"}),
        lim);
    if (!tam_u) r.detail += "Tamarkin U' fails; ";
    r.passed &= tam_u;
    r.payload["tamarkin_u_primary"] = tam_u;
    note(progress, "Tamarkin counterterm verified");
    return r;
}

/* ------------------------------------------------------------------ */
/* 6. homology                                                        */

long long elementary_symmetric(int n_minus_1, int j) {
    // e_j(1, 2, ..., n-1)
    std::vector<long long> e(j + 1, 0);
    e[0] = 1;
    for (int k = 1; k <= n_minus_1; ++k)
        for (int i = std::min<int>(j, k); i >= 1; --i) e[i] += e[i - 1] * k;
    return e[j];
}

CriterionResult criterion_homology(ExecMode mode, std::ostream* progress) {
    CriterionResult r{6, "homology: concentration, torsion-freeness, ranks", true, "", {}};
    nlohmann::json reports = nlohmann::json::array();

    // colimit complexes: concentrated in degree n-2, torsion-free, (n-1)!
    const std::vector<std::pair<int, int>> windows = {{2, 7}, {3, 6}, {4, 5}, {5, 4}};
    long long fact[7] = {1, 1, 2, 6, 24, 120, 720};
    for (auto [n, window] : windows) {
        auto c = build_G_complex(n, Height::inf(), window + 1, mode);
        for (int d = 0; d <= window; ++d) {
            auto h = homology(c, d);
            bool ok = d == n - 2 ? (h.rank == fact[n - 1] && h.torsion.empty())
                                 : (h.rank == 0 && h.torsion.empty());
            if (!ok) {
                r.passed = false;
                r.detail += "H_" + std::to_string(d) + "(G(" + std::to_string(n) +
                            ")) unexpected; ";
            }
            nlohmann::json rep;
            rep["n"] = n;
            rep["h"] = "inf";
            rep["degree"] = d;
            rep["rank"] = h.rank;
            rep["torsion"] = nlohmann::json::array();
            for (const auto& t : h.torsion) rep["torsion"].push_back(t.str());
            reports.push_back(std::move(rep));
        }
        note(progress, "colimit homology done for n=" + std::to_string(n));
    }

    // finite heights: torsion-free with the configuration-space ranks
    for (int n = 2; n <= 5; ++n)
        for (int hh = 1; hh <= 3; ++hh) {
            int dmax = hh * (n - 1) - 1;
            auto c = build_G_complex(n, Height::of(hh), dmax + 1, mode);
            for (int d = 0; d <= dmax; ++d) {
                auto h = homology(c, d);
                long long expect_rank = 0;
                if (hh == 1) {
                    if (d == n - 2) {
                        expect_rank = 0;
                        for (int j = 0; j <= n - 1; ++j)
                            expect_rank += elementary_symmetric(n - 1, j);
                    }
                } else if (d >= n - 2 && (d - (n - 2)) % (hh - 1) == 0) {
                    int j = (d - (n - 2)) / (hh - 1);
                    if (j <= n - 1) expect_rank = elementary_symmetric(n - 1, n - 1 - j);
                }
                bool ok = h.rank == expect_rank && h.torsion.empty();
                if (!ok) {
                    r.passed = false;
                    r.detail += "H_" + std::to_string(d) + "(G^" + std::to_string(hh) +
                                "(" + std::to_string(n) + ")) unexpected (rank " +
                                std::to_string(h.rank) + ", want " +
                                std::to_string(expect_rank) + "); ";
                }
                nlohmann::json rep;
                rep["n"] = n;
                rep["h"] = hh;
                rep["degree"] = d;
                rep["rank"] = h.rank;
                rep["torsion"] = nlohmann::json::array();
                for (const auto& t : h.torsion) rep["torsion"].push_back(t.str());
                reports.push_back(std::move(rep));
            }
            note(progress, "finite homology done for n=" + std::to_string(n) +
                               " h=" + std::to_string(hh));
        }
    r.payload["reports"] = reports;
    return r;
}

/* ------------------------------------------------------------------ */
/* 7. free Lie algebras over the integers                              */

CriterionResult criterion_free_lie(std::ostream* progress) {
    CriterionResult r{7, "free Lie: Ree criterion, unshuffle quotients, duality", true, "", {}};

    // exhaustive agreement for n = 3 over all words with coefficients in
    // {-1, 0, 1}
    bool exhaustive_ok = true;
    {
        auto words = all_perms(3);
        int total = 1;
        for (int i = 0; i < 6; ++i) total *= 3;
        for (int mask = 0; mask < total; ++mask) {
            TensorElement f(3);
            int m = mask;
            for (const auto& w : words) {
                int c = m % 3 - 1;
                m /= 3;
                if (c != 0) f.add(TensorWord(w.tuple().begin(), w.tuple().end()), c);
            }
            bool ree = ree_test(f);
            bool member = lie_coordinates(f).has_value();
            if (ree != member) {
                exhaustive_ok = false;
                break;
            }
        }
    }
    r.passed &= exhaustive_ok;
    r.payload["exhaustive_n3_ok"] = exhaustive_ok;
    note(progress, "exhaustive n=3 Ree/membership agreement");

    // randomized agreement for n <= 5
    std::mt19937 rng(20240811);
    bool random_ok = true;
    int trials = 0;
    for (int n = 3; n <= 5; ++n) {
        auto perms = all_perms(n);
        std::uniform_int_distribution<int> coef(-4, 4);
        std::uniform_int_distribution<int> density(0, 3);
        for (int trial = 0; trial < 80; ++trial, ++trials) {
            TensorElement f(n);
            // half the trials perturb a genuine Lie element
            if (trial % 2 == 0) {
                auto lambdas = all_perms(n - 1);
                std::uniform_int_distribution<size_t> pick(0, lambdas.size() - 1);
                f = f + expand_left_normed(lambdas[pick(rng)]) * (1 + trial % 3);
                if (trial % 4 == 2) {
                    const auto& p = perms[pick(rng) % perms.size()];
                    f.add(TensorWord(p.tuple().begin(), p.tuple().end()), 1);
                }
            } else {
                for (const auto& p : perms)
                    if (density(rng) == 0)
                        f.add(TensorWord(p.tuple().begin(), p.tuple().end()), coef(rng));
            }
            if (ree_test(f) != lie_coordinates(f).has_value()) {
                random_ok = false;
                break;
            }
        }
    }
    r.passed &= random_ok;
    r.payload["random_trials"] = trials;
    r.payload["random_ok"] = random_ok;
    note(progress, "randomized Ree/membership agreement (" + std::to_string(trials) +
                       " trials)");

    // quotient reports
    long long fact[7] = {1, 1, 2, 6, 24, 120, 720};
    nlohmann::json quotients = nlohmann::json::array();
    bool quotient_ok = true;
    for (int n = 2; n <= 6; ++n) {
        for (bool use_sign : {false, true}) {
            auto rep = ush_quotient_report(n, use_sign);
            bool unit_divisors = rep.divisors.end() ==
                                 std::find_if(rep.divisors.begin(), rep.divisors.end(),
                                              [](const Int& d) { return d != 1; });
            bool ok = unit_divisors && rep.quotient_rank == fact[n - 1] &&
                      rep.basis_certified && (n > 5 || rep.pairing_unimodular);
            quotient_ok &= ok;
            nlohmann::json q;
            q["n"] = n;
            q["signed"] = use_sign;
            q["ush_rank"] = rep.ush_rank;
            q["quotient_rank"] = rep.quotient_rank;
            q["unit_divisors"] = unit_divisors;
            q["pairing_unimodular"] = rep.pairing_unimodular;
            q["basis_certified"] = rep.basis_certified;
            quotients.push_back(std::move(q));
        }
        note(progress, "unshuffle quotient done for n=" + std::to_string(n));
    }
    r.passed &= quotient_ok;
    r.payload["quotients"] = quotients;

    bool psi_ok = true;
    for (int n = 2; n <= 5; ++n) psi_ok &= psi_exchanges_ush(n);
    r.passed &= psi_ok;
    r.payload["psi_exchange_ok"] = psi_ok;

    // resolution check: H_{n-2}(G(n)) is free of rank (n-1)! = rank of
    // sgn (x) Lie(n)'; both sides torsion-free
    bool resolution_ok = true;
    for (int n = 2; n <= 5; ++n) {
        auto c = build_G_complex(n, Height::inf(), n - 1, ExecMode::Parallel);
        auto h = homology(c, n - 2);
        long long lie_rank = fact[n - 1];
        if (h.rank != lie_rank || !h.torsion.empty()) resolution_ok = false;
    }
    r.passed &= resolution_ok;
    r.payload["resolution_ok"] = resolution_ok;
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(ExecMode mode, std::ostream* progress) {
    std::vector<CriterionResult> out;
    note(progress, "criterion 1: enumeration");
    out.push_back(criterion_enumeration());
    note(progress, "criterion 2: linear differential");
    out.push_back(criterion_linear(mode, progress));
    note(progress, "criterion 3: signed differential");
    out.push_back(criterion_signed(progress));
    note(progress, "criterion 4: criticality");
    out.push_back(criterion_criticality(progress));
    note(progress, "criterion 5: bad cells");
    out.push_back(criterion_bad_cells(progress));
    note(progress, "criterion 6: homology");
    out.push_back(criterion_homology(mode, progress));
    note(progress, "criterion 7: free Lie");
    out.push_back(criterion_free_lie(progress));
    return out;
}

std::string acceptance_report(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        nlohmann::json j;
        j["criterion"] = r.number;
        j["name"] = r.name;
        j["passed"] = r.passed;
        if (!r.detail.empty()) j["detail"] = r.detail;
        j["data"] = r.payload;
        os << j.dump() << "\n";
    }
    return os.str();
}

int run_selftest(std::ostream& json_out, std::ostream& human_out, ExecMode mode) {
    auto first = run_acceptance(mode, &human_out);
    std::string report1 = acceptance_report(first);
    human_out << "  .. rerunning for the determinism criterion\n" << std::flush;
    auto second = run_acceptance(mode, nullptr);
    std::string report2 = acceptance_report(second);

    CriterionResult det{8, "determinism: byte-identical reports on a rerun",
                        report1 == report2, "", {}};
    if (!det.passed) det.detail = "reports differ between runs";
    det.payload["bytes"] = static_cast<long long>(report1.size());

    std::vector<CriterionResult> all = first;
    all.push_back(det);
    int failures = 0;
    for (const auto& r : all) {
        human_out << (r.passed ? "ok   " : "FAIL ") << r.number << " - " << r.name;
        if (!r.detail.empty()) human_out << " [" << r.detail << "]";
        human_out << "\n";
        if (!r.passed) ++failures;
    }
    json_out << acceptance_report(all);
    return failures;
}

} // namespace fnops
