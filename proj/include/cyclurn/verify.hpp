#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclurn/ensemble.hpp"

namespace cyclurn {

struct VerifyOptions {
    std::uint64_t seed = 1;
    // Multiplies replicate counts; 1.0 runs the full published parameters.
    double scale = 1.0;
    ExecutionPolicy policy = ExecutionPolicy::Parallel;
    // Empty: every configured m per criterion. Otherwise criteria keep only
    // the listed m values and are skipped when none remain.
    std::vector<int> m_filter;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool skipped = false;
    nlohmann::json detail;
};

// Shared ensembles across criteria within one run (the covariance and
// normality checks read the same samples).
class VerifyContext {
  public:
    explicit VerifyContext(VerifyOptions opts) : opts_(std::move(opts)) {}

    const VerifyOptions& options() const { return opts_; }

    const ResidualEnsemble& residual_ensemble(int m, long long n, int reps, double horizon_mult);
    const CouplingEnsemble& coupling_ensemble(int m, int k, const std::vector<long long>& grid,
                                              long long horizon, int reps);
    const std::vector<cd>& xi_pool(int m, int k, int depth, int pool_size);

  private:
    VerifyOptions opts_;
    std::map<std::string, ResidualEnsemble> residual_cache_;
    std::map<std::string, CouplingEnsemble> coupling_cache_;
    std::map<std::string, std::vector<cd>> pool_cache_;
};

inline constexpr int kNumCriteria = 11;

CriterionResult run_criterion(VerifyContext& ctx, int id);

// Suites: moments {1,2,3,4,11}, clt {5,7,8}, rates {6,9}, bn {10}, all.
std::vector<int> suite_criteria(const std::string& suite);

struct SuiteReport {
    bool pass = true;
    std::vector<CriterionResult> results;
    nlohmann::json to_json() const;
};

SuiteReport run_suite(VerifyContext& ctx, const std::string& suite);

} // namespace cyclurn
