#pragma once

#include <json.hpp>

#include "fnops/homology.hpp"

namespace fnops {

/* {height, level_sizes, parent_maps, labeling?} with 1-based parents. */
nlohmann::json tree_to_json(const LevelTree& t);
nlohmann::json tree_to_json(const LabeledTree& t);
LabeledTree tree_from_json(const nlohmann::json& j);

nlohmann::json formal_sum_to_json(const FormalSum& f);

} // namespace fnops
