#include "fnops/json_io.hpp"

namespace fnops {

nlohmann::json tree_to_json(const LevelTree& t) {
    nlohmann::json j;
    j["height"] = t.height();
    std::vector<int> sizes;
    for (int m = 0; m <= t.height(); ++m) sizes.push_back(t.level_size(m));
    j["level_sizes"] = sizes;
    std::vector<std::vector<int>> parents;
    for (int m = 1; m <= t.height(); ++m) {
        std::vector<int> row;
        for (int i = 0; i < t.level_size(m); ++i) row.push_back(t.parent(m, i) + 1);
        parents.push_back(std::move(row));
    }
    j["parent_maps"] = parents;
    return j;
}

nlohmann::json tree_to_json(const LabeledTree& t) {
    nlohmann::json j = tree_to_json(t.shape());
    j["labeling"] = t.labels().tuple();
    return j;
}

LabeledTree tree_from_json(const nlohmann::json& j) {
    std::vector<std::vector<int>> parents;
    for (const auto& row : j.at("parent_maps")) {
        std::vector<int> r;
        for (const auto& v : row) r.push_back(v.get<int>() - 1);
        parents.push_back(std::move(r));
    }
    auto shape = LevelTree::from_parents(std::move(parents));
    if (j.contains("labeling")) {
        std::vector<int> lab = j.at("labeling").get<std::vector<int>>();
        return LabeledTree(std::move(shape), Perm(std::move(lab)));
    }
    return LabeledTree::identity_labeled(std::move(shape));
}

nlohmann::json formal_sum_to_json(const FormalSum& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, tc] : f.entries()) {
        nlohmann::json t;
        t["coef"] = tc.second;
        t["term"] = key;
        terms.push_back(std::move(t));
    }
    nlohmann::json j;
    j["ring"] = f.ring() == Ring::Z ? "z" : "f2";
    j["terms"] = std::move(terms);
    return j;
}

} // namespace fnops
