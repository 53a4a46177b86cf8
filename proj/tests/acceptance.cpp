// Runs every acceptance criterion at full scale with a fixed seed and prints
// one line per criterion. Exit status is non-zero if any criterion fails.
#include <cstdlib>
#include <iostream>

#include "sric/simulate.hpp"
#include "sric/verify.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20240601;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    const auto results = sric::run_verification(sric::VerifyLevel::Full, seed, sric::default_workers());
    int failed = 0;
    for (const auto& r : results) {
        std::cout << sric::format_check(r) << '\n';
        failed += r.passed ? 0 : 1;
    }
    std::cout << (failed == 0 ? "ALL PASS" : "FAILURES: " + std::to_string(failed)) << " (" << results.size()
              << " criteria, seed " << seed << ")\n";
    return failed == 0 ? 0 : 1;
}
