/* Runs every acceptance criterion and prints one pass/fail line each;
   exits nonzero if any criterion fails. */

#include <iostream>

#include "fnops/acceptance.hpp"

int main() {
    int failures = fnops::run_selftest(std::cout, std::cerr, fnops::ExecMode::Parallel);
    if (failures != 0)
        std::cerr << failures << " criterion(s) failed; see notes in the report above\n";
    return failures == 0 ? 0 : 1;
}
