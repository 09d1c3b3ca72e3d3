#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace dhmono {

enum class CertStatus { Pass, Fail, Inconclusive };

inline const char* to_string(CertStatus s) {
    switch (s) {
        case CertStatus::Pass: return "PASS";
        case CertStatus::Fail: return "FAIL";
        default: return "INCONCLUSIVE";
    }
}

// Machine-checkable verdict for one verified statement, with enough witness
// data to reproduce the run from the recorded seed.
struct Certificate {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    CertStatus status = CertStatus::Fail;
    nlohmann::json witness = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::int64_t runtime_ms = 0;

    bool passed() const { return status == CertStatus::Pass; }

    nlohmann::json to_json() const {
        return nlohmann::json{{"check", check},     {"params", params},
                              {"status", to_string(status)}, {"witness", witness},
                              {"seed", seed},       {"runtime_ms", runtime_ms}};
    }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace dhmono
