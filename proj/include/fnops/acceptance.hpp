#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fnops/homology.hpp"

namespace fnops {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;            // failure notes / summary
    nlohmann::json payload;        // deterministic report data
};

/* Run acceptance criteria 1..7 (criterion 8, determinism, is a byte
   comparison of two runs of these and is handled by the caller). */
std::vector<CriterionResult> run_acceptance(ExecMode mode, std::ostream* progress);

/* Serialize results as JSON lines (one object per criterion). */
std::string acceptance_report(const std::vector<CriterionResult>& results);

/* Full run including the determinism criterion; prints one line per
   criterion to human_out and the JSON report to json_out.  Returns the
   number of failed criteria. */
int run_selftest(std::ostream& json_out, std::ostream& human_out, ExecMode mode);

} // namespace fnops
