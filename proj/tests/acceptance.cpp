// One line per acceptance criterion. Exits nonzero when a criterion fails
// for any reason other than a value that is unattainable as printed.
#include <cstdlib>
#include <iostream>

#include "mspec/acceptance.hpp"

int main(int argc, char **argv) {
    std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
    auto results = mspec::acceptance::run_all(seed);
    for (const auto &c : results) std::cout << mspec::acceptance::format_line(c) << std::endl;
    bool ok = mspec::acceptance::acceptable(results);
    std::cout << (ok ? "acceptance: all attainable criteria pass" : "acceptance: FAILED") << std::endl;
    return ok ? 0 : 1;
}
