#include "fnops/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "fnops/acceptance.hpp"
#include "fnops/bar.hpp"
#include "fnops/free_lie.hpp"
#include "fnops/json_io.hpp"
#include "fnops/kernels.hpp"
#include "fnops/signs.hpp"

namespace fnops {

namespace {

constexpr int kSchema = 1;

FaceLimits env_limits() {
    FaceLimits lim;
    if (const char* env = std::getenv("FNOPS_MAX_STEPS")) {
        long long v = std::atoll(env);
        if (v > 0) lim.max_steps = v;
    }
    return lim;
}

Height parse_height(const std::string& s) {
    if (s == "inf" || s == "INF" || s == "infinity") return Height::inf();
    int v = std::atoi(s.c_str());
    if (v < 1) throw validation_error("height must be a positive integer or 'inf'");
    return Height::of(v);
}

nlohmann::json report_header(const std::string& command, nlohmann::json params) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["params"] = std::move(params);
    return j;
}

TensorElement element_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("terms"))
        throw validation_error("input must carry fields n and terms");
    TensorElement f(j["n"].get<int>());
    for (const auto& t : j["terms"])
        f.add(t.at("word").get<std::vector<int>>(), t.at("coef").get<long long>());
    return f;
}

int cmd_trees_enum(int dim, int arity, std::ostream& out, std::ostream& err) {
    std::optional<int> n;
    if (arity > 0) n = arity;
    auto list = enumerate_reduced(dim, n);
    for (const auto& t : list) {
        nlohmann::json j;
        j["schema"] = kSchema;
        j["barcode"] = t.barcode();
        j["dim"] = t.dim();
        j["arity"] = t.tips();
        j["height"] = t.height();
        out << j.dump() << "\n";
    }
    err << "enumerated " << list.size() << " reduced trees of dimension " << dim;
    if (n) err << " with " << *n << " tips";
    err << "\n";
    return 0;
}

int cmd_diff(const std::string& barcode, const std::string& ring, bool linear_only,
             std::ostream& out, std::ostream& err) {
    auto t = LabeledTree::parse_barcode(barcode);
    Ring rg = ring == "f2" ? Ring::F2 : Ring::Z;
    FormalSum result(rg);
    std::string kind;
    if (linear_only) {
        result = d_lin(t, rg);
        kind = "linear";
    } else if (rg == Ring::F2) {
        result = d_reg_mod2(t, env_limits());
        kind = "regular-mod-2";
    } else {
        if (t.arity() > 6 || t.dim() > 5)
            throw capacity_error("signed boundaries cover arity <= 6, dim <= 5");
        SignTable st = SignTable::solve(std::max(2, t.arity()), std::max(1, t.dim()));
        result = st.d_reg_signed(t);
        kind = "regular-signed";
    }
    auto j = report_header("diff", {{"barcode", barcode},
                                    {"ring", ring},
                                    {"linear_only", linear_only}});
    j["kind"] = kind;
    j["boundary"] = formal_sum_to_json(result);
    out << j.dump(2) << "\n";
    err << "d(" << barcode << ") = " << result.to_string() << "\n";
    return 0;
}

int cmd_faces(const std::string& barcode, std::ostream& out, std::ostream& err) {
    auto t = LabeledTree::parse_barcode(barcode);
    int count = 0;
    for_each_face(
        t,
        [&](Face&& f) {
            nlohmann::json j;
            j["schema"] = kSchema;
            j["serial"] = f.serial;
            j["c_sigma"] = f.c_sigma.extended_barcode();
            j["deg"] = f.deg;
            j["quasibijection"] = f.morphism.is_quasibijection();
            j["codim_one"] = (f.deg == t.dim() - 1);
            j["target"] = tree_to_json(f.morphism.target);
            out << j.dump() << "\n";
            ++count;
        },
        env_limits());
    err << count << " faces of " << barcode << "\n";
    return 0;
}

int cmd_classify(int arity, const std::string& height, std::ostream& out,
                 std::ostream& err) {
    auto h = parse_height(height);
    auto c = classify(arity, h);
    auto j = report_header("classify", {{"arity", arity}, {"height", height}});
    j["d_crit"] = c.critical_dim ? nlohmann::json(*c.critical_dim) : nlohmann::json("inf");
    j["regular"] = c.regular;
    if (!c.regular) {
        j["witness"] = c.witness_barcode;
        j["witness_base_height"] = c.witness_base_height;
        j["witness_dim"] = witness_tree(c).dim();
    }
    out << j.dump(2) << "\n";
    err << "(" << arity << ", " << height << "): "
        << (c.regular ? "regular" : "non-regular") << "\n";
    return 0;
}

int cmd_bad_cell(int arity, const std::string& height, std::ostream& out,
                 std::ostream& err) {
    auto h = parse_height(height);
    auto c = classify(arity, h);
    auto j = report_header("bad-cell", {{"arity", arity}, {"height", height}});
    j["regular"] = c.regular;
    if (c.regular) {
        out << j.dump(2) << "\n";
        err << "no bad cells at (" << arity << ", " << height << ")\n";
        return 0;
    }
    auto w = witness_tree(c);
    j["witness"] = c.witness_barcode;
    j["dim"] = w.dim();
    j["d_crit"] = *c.critical_dim;
    j["tree"] = tree_to_json(w);
    auto data = source_target_witnesses(w, env_limits());
    j["source_target_count"] = static_cast<long long>(data.size());
    nlohmann::json certs = nlohmann::json::array();
    size_t cap = std::min<size_t>(data.size(), 25);
    for (size_t i = 0; i < cap; ++i) {
        const auto& d = data[i];
        nlohmann::json cj;
        cj["face_serial"] = d.face_serial;
        cj["m"] = d.level;
        cj["s"] = d.s;
        cj["a"] = d.a;
        cj["b"] = d.b;
        cj["u"] = d.u + 1;
        cj["v"] = d.v + 1;
        cj["amputated"] = d.amputated.reduced().barcode();
        certs.push_back(std::move(cj));
    }
    j["source_target"] = certs;
    out << j.dump(2) << "\n";
    err << "bad cell " << c.witness_barcode << " with " << data.size()
        << " source-target certificates\n";
    return 0;
}

int cmd_counterterm(const std::string& barcode, const std::string& verify_file,
                    std::ostream& out, std::ostream& err) {
    auto t = LabeledTree::parse_barcode(barcode);
    auto j = report_header("counterterm", {{"barcode", barcode}});
    auto lim = env_limits();
    if (!verify_file.empty()) {
        std::ifstream in(verify_file);
        if (!in.good()) throw validation_error("cannot open " + verify_file);
        nlohmann::json spec;
        in >> spec;
        std::vector<Term> terms;
        for (const auto& s : spec) terms.push_back(Term::parse_extended_barcode(s));
        bool ok = verify_counterterm(t, terms, lim);
        j["verified"] = ok;
        out << j.dump(2) << "\n";
        err << "counterterm " << (ok ? "verifies" : "does not verify") << "\n";
        return 0;
    }
    auto rep = find_counterterm(t, lim);
    nlohmann::json chosen = nlohmann::json::array();
    for (const auto& term : rep.chosen) chosen.push_back(term.extended_barcode());
    j["counterterm"] = chosen;
    j["pool_size"] = static_cast<long long>(rep.pool.size());
    j["d_reg_support"] = static_cast<long long>(rep.d_reg.size());
    j["rhs_support"] = static_cast<long long>(rep.rhs.size());
    j["verified"] = verify_counterterm(t, rep.chosen, lim);
    out << j.dump(2) << "\n";
    err << "counterterm with " << rep.chosen.size() << " cells found\n";
    return 0;
}

int cmd_homology(int arity, const std::string& height, int dmax, std::ostream& out,
                 std::ostream& err) {
    auto h = parse_height(height);
    auto c = build_G_complex(arity, h, dmax, ExecMode::Parallel);
    for (int d = 0; d + 1 <= dmax; ++d) {
        auto hg = homology(c, d);
        nlohmann::json j;
        j["schema"] = kSchema;
        j["n"] = arity;
        j["h"] = h.infinite ? nlohmann::json("inf") : nlohmann::json(h.value);
        j["degree"] = d;
        j["rank"] = hg.rank;
        nlohmann::json tor = nlohmann::json::array();
        for (const auto& t : hg.torsion) tor.push_back(t.str());
        j["torsion"] = tor;
        out << j.dump() << "\n";
    }
    err << "homology of G^" << height << "(" << arity << ") through degree "
        << (dmax - 1) << "\n";
    return 0;
}

int cmd_lie(const std::string& sub, int n, const std::string& input, std::ostream& out,
            std::ostream& err) {
    if (sub == "quotient") {
        for (bool use_sign : {false, true}) {
            auto rep = ush_quotient_report(n, use_sign);
            nlohmann::json j;
            j["schema"] = kSchema;
            j["n"] = n;
            j["signed"] = use_sign;
            j["ush_rank"] = rep.ush_rank;
            nlohmann::json div = nlohmann::json::array();
            for (const auto& d : rep.divisors) div.push_back(d.str());
            j["divisors"] = div;
            j["quotient_rank"] = rep.quotient_rank;
            j["pairing_det"] = rep.pairing_det.str();
            j["basis_certified"] = rep.basis_certified;
            out << j.dump() << "\n";
        }
        err << "unshuffle quotient reports for n = " << n << "\n";
        return 0;
    }
    if (input.empty()) throw validation_error("lie " + sub + " requires --input");
    std::ifstream in(input);
    if (!in.good()) throw validation_error("cannot open " + input);
    nlohmann::json spec;
    in >> spec;
    auto f = element_from_json(spec);
    if (f.degree() != n) throw validation_error("input degree differs from --n");
    auto j = report_header("lie " + sub, {{"n", n}, {"input", input}});
    if (sub == "ree") {
        bool ok = ree_test(f);
        j["lie_element"] = ok;
        out << j.dump(2) << "\n";
        err << (ok ? "passes" : "fails") << " the unshuffle criterion\n";
        return 0;
    }
    if (sub == "coords") {
        auto coords = lie_coordinates(f);
        j["member"] = coords.has_value();
        if (coords) {
            nlohmann::json cj = nlohmann::json::array();
            for (const auto& [lambda, c] : *coords) {
                nlohmann::json e;
                e["lambda"] = lambda;
                e["coef"] = c;
                cj.push_back(std::move(e));
            }
            j["coordinates"] = cj;
        }
        out << j.dump(2) << "\n";
        err << (coords ? "left-normed coordinates computed" : "not a Lie element") << "\n";
        return 0;
    }
    throw validation_error("unknown lie subcommand " + sub);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fox-Neuwirth tree calculus"};
    app.require_subcommand(1);

    auto* trees = app.add_subcommand("trees", "tree enumeration");
    trees->require_subcommand(1);
    auto* tenum = trees->add_subcommand("enum", "list reduced trees of a dimension");
    int dim = 0, arity = 0;
    tenum->add_option("--dim", dim, "dimension")->required();
    tenum->add_option("--arity", arity, "restrict to this arity");

    auto* diff = app.add_subcommand("diff", "boundary of a generator");
    std::string barcode, ring = "z";
    bool linear_only = false;
    diff->add_option("--barcode", barcode, "barcode")->required();
    diff->add_option("--ring", ring, "z or f2")->check(CLI::IsMember({"z", "f2"}));
    diff->add_flag("--linear-only", linear_only, "linear part only");

    auto* faces = app.add_subcommand("faces", "all faces of a generator");
    std::string faces_barcode;
    faces->add_option("--barcode", faces_barcode, "barcode")->required();

    auto* cls = app.add_subcommand("classify", "regularity of (arity, height)");
    int cls_arity = 0;
    std::string cls_height;
    cls->add_option("--arity", cls_arity, "arity")->required();
    cls->add_option("--height", cls_height, "height or inf")->required();

    auto* bad = app.add_subcommand("bad-cell", "bad-cell witness and certificates");
    int bad_arity = 0;
    std::string bad_height;
    bad->add_option("--arity", bad_arity, "arity")->required();
    bad->add_option("--height", bad_height, "height or inf")->required();

    auto* ct = app.add_subcommand("counterterm", "critical-dimension counterterm");
    std::string ct_barcode, ct_verify;
    ct->add_option("--barcode", ct_barcode, "barcode")->required();
    ct->add_option("--verify", ct_verify, "JSON file with counterterm cells");

    auto* hom = app.add_subcommand("homology", "integer homology of the tree complex");
    int hom_arity = 0, hom_dmax = 0;
    std::string hom_height;
    hom->add_option("--arity", hom_arity, "arity")->required();
    hom->add_option("--height", hom_height, "height or inf")->required();
    hom->add_option("--dmax", hom_dmax, "top boundary degree to build")->required();

    auto* lie = app.add_subcommand("lie", "free Lie algebra over the integers");
    lie->require_subcommand(1);
    int lie_n = 0;
    std::string lie_input;
    auto* lre = lie->add_subcommand("ree", "unshuffle criterion");
    auto* lco = lie->add_subcommand("coords", "left-normed coordinates");
    auto* lqu = lie->add_subcommand("quotient", "unshuffle quotient report");
    for (auto* s : {lre, lco, lqu}) {
        s->add_option("--n", lie_n, "multilinear degree")->required();
        s->add_option("--input", lie_input, "JSON tensor element");
    }

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (tenum->parsed()) return cmd_trees_enum(dim, arity, out, err);
        if (diff->parsed()) return cmd_diff(barcode, ring, linear_only, out, err);
        if (faces->parsed()) return cmd_faces(faces_barcode, out, err);
        if (cls->parsed()) return cmd_classify(cls_arity, cls_height, out, err);
        if (bad->parsed()) return cmd_bad_cell(bad_arity, bad_height, out, err);
        if (ct->parsed()) return cmd_counterterm(ct_barcode, ct_verify, out, err);
        if (hom->parsed()) return cmd_homology(hom_arity, hom_height, hom_dmax, out, err);
        if (lre->parsed()) return cmd_lie("ree", lie_n, lie_input, out, err);
        if (lco->parsed()) return cmd_lie("coords", lie_n, lie_input, out, err);
        if (lqu->parsed()) return cmd_lie("quotient", lie_n, lie_input, out, err);
        if (self->parsed()) {
            int failures = run_selftest(out, err, ExecMode::Parallel);
            return failures == 0 ? 0 : 3;
        }
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const capacity_error& e) {
        err << "capacity guard: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    }
    err << "no subcommand\n";
    return 1;
}

} // namespace fnops
