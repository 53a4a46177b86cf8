#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sric {

enum class VerifyLevel { Quick, Full };

/// One acceptance criterion: pass flag plus measured values and the bound they
/// were held to, in human-readable form.
struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string measured;
    std::string tolerance;
    double seconds = 0.0;
};

/// Runs every acceptance criterion. Each criterion draws from its own
/// sub-seed of `seed`. Progress lines go to `progress` when non-null.
std::vector<CheckResult> run_verification(VerifyLevel level, std::uint64_t seed, unsigned workers,
                                          std::ostream* progress = nullptr);

/// "PASS  2 theorem1-unbiasedness  measured: ...  tolerance: ...".
std::string format_check(const CheckResult& r);

}  // namespace sric
