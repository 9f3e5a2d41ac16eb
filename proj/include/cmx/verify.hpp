// Acceptance criteria as runnable checks, grouped into suites.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cmx {

struct VerifyOptions {
    std::uint64_t seed = 20240611;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// contact, dec, fiber, dynamics, infogeo, io, all
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
std::vector<int> suite_criteria(const std::string& name);

constexpr int kCriterionCount = 11;
std::string criterion_name(int id);
CriterionResult run_criterion(int id, const VerifyOptions& opts = {});

std::vector<CriterionResult> run_suite(const std::string& name, const VerifyOptions& opts = {},
                                       const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  5  constraint conservation  (detail)  [1.23 s]"
std::string format_result(const CriterionResult& r);

}  // namespace cmx
