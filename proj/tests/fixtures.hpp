#pragma once

// Scratch directories and synthetic frame files for tests.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace fixtures {

namespace fs = std::filesystem;

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(std::string_view tag = "trilemma")
    {
        static std::uint64_t counter = 0;
        std::random_device rd;
        path_ = fs::temp_directory_path() /
                (std::string(tag) + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(std::string_view name) const { return path_ / name; }

private:
    fs::path path_;
};

inline void write_file(const fs::path& path, std::string_view text)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// "2023-01-01" + offset days, for offsets below 365.
inline std::string day(int offset)
{
    static constexpr int kMonthDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int month = 0;
    int d = offset;
    while (d >= kMonthDays[month]) d -= kMonthDays[month++];
    char buf[32];
    std::snprintf(buf, sizeof buf, "2023-%02d-%02d", month + 1, d + 1);
    return buf;
}

/// CSV text with a date column and the given value columns, one row per day.
inline std::string frame_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& values)
{
    std::string out = "date";
    for (const auto& c : columns) out += "," + c;
    out += "\n";
    for (std::size_t row = 0; row < values.front().size(); ++row) {
        out += day(static_cast<int>(row));
        for (const auto& col : values) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", col[row]);
            out += std::string(",") + buf;
        }
        out += "\n";
    }
    return out;
}

struct FixtureDirs {
    fs::path algorand;
    fs::path ethereum;
};

/// Algorand and Ethereum 2.0 directories with every recognized frame except
/// al_block_data_reward.csv. With `varied` false every numeric frame is
/// constant over `days` days; with `varied` true transaction counts and fees
/// move together (nonzero variance) while staying inside the published ranges.
inline FixtureDirs write_fixture(const fs::path& root, std::size_t days, bool varied, bool with_contracts = true)
{
    FixtureDirs f{root / "algorand", root / "ethereum2"};
    auto col = [&](double v) { return std::vector<double>(days, v); };
    auto wave = [&](double base, double step, int period) {
        std::vector<double> out;
        for (std::size_t d = 0; d < days; ++d) out.push_back(base + step * static_cast<double>(d % period));
        return out;
    };
    write_file(f.algorand / "al_block_data_proposercount_reward.csv",
               frame_csv({"proposer_count", "block_reward"}, {varied ? wave(100, 3, 4) : col(100), col(1000)}));
    write_file(f.algorand / "al_transac_data_count_fee.csv",
               frame_csv({"transaction_count", "burned_fees"},
                         {varied ? wave(86400, 86400, 5) : col(86400), varied ? wave(50, 10, 5) : col(50)}));
    if (with_contracts) {
        write_file(f.algorand / "al_contracts_calls_unique_calls.csv",
                   frame_csv({"contract_calls", "unique_calls"}, {col(500), col(20)}));
    }
    std::string blocks = "date,timestamp,address,height\n";
    for (std::size_t d = 0; d < days; ++d) {
        for (int b = 0; b < 3; ++b) {
            blocks += day(static_cast<int>(d)) + ",\"" + day(static_cast<int>(d)) + "T00:00:0" + std::to_string(b) +
                      "Z\",ADDR" + std::to_string(b) + "," + std::to_string(d * 3 + b) + "\n";
        }
    }
    write_file(f.algorand / "al_block_data.csv", blocks);

    write_file(f.ethereum / "validator_data.csv",
               frame_csv({"validator_count"}, {varied ? wave(500000, 1000, 3) : col(500000)}));
    write_file(f.ethereum / "daily_transactions.csv",
               frame_csv({"transaction_count"}, {varied ? wave(1000000, 20000, 6) : col(1000000)}));
    write_file(f.ethereum / "avg_blk_time.csv", frame_csv({"avg_block_time"}, {varied ? wave(12, 1, 3) : col(12)}));
    write_file(f.ethereum / "burned_fees.csv",
               frame_csv({"burned_fees"}, {varied ? wave(4000, 100, 6) : col(4000)}));
    write_file(f.ethereum / "daily_block_count.csv", frame_csv({"daily_block_count"}, {col(7000)}));
    write_file(f.ethereum / "participation_rate.csv", frame_csv({"participation_rate"}, {col(0.99)}));
    write_file(f.ethereum / "network_Liveness.csv", frame_csv({"network_liveness"}, {col(2)}));
    return f;
}

}  // namespace fixtures
