#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mtlab {

using count_t = std::uint64_t;

/// Input failed a precondition or structural invariant.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An enumeration was refused because it would exceed a configured cap.
/// `predicted` carries the closed-form size of the refused search space.
struct cap_error : std::runtime_error {
    count_t predicted;
    cap_error(const std::string& msg, count_t predicted_count)
        : std::runtime_error(msg), predicted(predicted_count) {}
};

/// Conditioning on evidence that has probability zero under the model.
struct zero_evidence_error : std::runtime_error {
    explicit zero_evidence_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A closed-form count does not fit in count_t.
struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Enumeration caps can be raised (never lowered) through MTL_CAP_OVERRIDE.
inline count_t cap_with_override(count_t default_cap) {
    if (const char* env = std::getenv("MTL_CAP_OVERRIDE")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > default_cap) return static_cast<count_t>(v);
    }
    return default_cap;
}

}  // namespace mtlab
