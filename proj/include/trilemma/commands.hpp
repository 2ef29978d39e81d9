#pragma once

// Command implementations behind the CLI. Each returns a process exit code:
// 0 success, 1 data or validation failure, 2 usage or I/O failure.

#include "trilemma/decentralization.hpp"
#include "trilemma/scalability.hpp"
#include "trilemma/security.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace trilemma {

enum ExitCode : int { kExitOk = 0, kExitData = 1, kExitUsage = 2 };

struct ValidateOptions {
    std::filesystem::path data_dir;
    std::string chain;
    std::optional<std::filesystem::path> out;  // stdout when absent
};

struct DecentralizationOptions {
    std::filesystem::path algorand_dir;
    std::filesystem::path ethereum_dir;
    std::size_t window = kDefaultRollingWindow;
    double threshold = kDefaultNakamotoThreshold;
    std::vector<IndexKind> rolling_indices{IndexKind::Shannon};
    bool compare_published = false;
    std::filesystem::path out = "trilemma_out";
};

struct ScalabilityCmdOptions {
    std::filesystem::path algorand_dir;
    std::filesystem::path ethereum_dir;
    double algorand_block_time = kDefaultAlgorandBlockTime;
    std::filesystem::path out = "trilemma_out";
};

struct SimulateOptions {
    std::string scheme = "seed-chain";
    double alpha = 0.3;
    unsigned grinding_bits = 0;
    std::int64_t rounds = 1000;
    std::int64_t trials = 100;
    std::int64_t honest_validators = 1000;
    std::uint64_t seed = 42;
    std::vector<double> sweep;                 // overrides alpha when non-empty
    std::optional<std::filesystem::path> out;  // JSON to stdout when absent
};

struct ReportOptions {
    std::filesystem::path algorand_dir;
    std::filesystem::path ethereum_dir;
    std::filesystem::path out = "trilemma_report";
    std::size_t window = kDefaultRollingWindow;
    double threshold = kDefaultNakamotoThreshold;
    double algorand_block_time = kDefaultAlgorandBlockTime;
    std::vector<double> alphas{0.1, 0.3, 0.51};
    unsigned grinding_bits = 1;
    std::int64_t rounds = 1000;
    std::int64_t trials = 100;
    std::int64_t honest_validators = 1000;
    std::uint64_t seed = 42;
    bool timestamp = true;
};

int cmd_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err);
int cmd_decentralization(const DecentralizationOptions& options, std::ostream& out, std::ostream& err);
int cmd_scalability(const ScalabilityCmdOptions& options, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err);

}  // namespace trilemma
