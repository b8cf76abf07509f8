#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slrep {

enum class SuiteStatus { Pass, Fail, Skipped };

inline const char* status_name(SuiteStatus s) {
    switch (s) {
    case SuiteStatus::Pass: return "pass";
    case SuiteStatus::Fail: return "fail";
    case SuiteStatus::Skipped: return "skipped";
    }
    return "?";
}

// Self-contained record of one verification suite: re-runnable from the
// recorded seed and configuration.
struct VerificationReport {
    std::string suite_name;
    SuiteStatus status = SuiteStatus::Skipped;
    double measured_max_error = 0.0;
    double tolerance = 0.0;
    long trials_run = 0;
    long resamples = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> details;
    double wall_time_s = 0.0;

    void finish() { status = (measured_max_error <= tolerance) ? SuiteStatus::Pass : SuiteStatus::Fail; }
};

} // namespace slrep
