#pragma once

#include "trilemma/ingest.hpp"

#include <optional>
#include <string>

namespace trilemma {

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kDefaultAlgorandBlockTime = 3.5;

struct ThroughputStats {
    double mean_daily_tx;
    double peak_daily_tx;
    Date peak_date;
    double mean_tps;
    double peak_tps;
};

struct LatencyStats {
    double mean_block_time;
    double std_block_time;  // population standard deviation
    double min_block_time;
    double max_block_time;
};

/// Mean over present days; the peak is the maximum, earliest date on ties.
/// Throws EmptySeries.
ThroughputStats throughput_stats(const ObservationSeries& tx);

/// Throws EmptySeries or NonPositiveBlockTime.
LatencyStats latency_stats(const ObservationSeries& block_time);

/// Verdict of a strict comparison between the two chains of a comparison.
enum class Verdict { A, B, Tie };

struct ChainScalability {
    Chain chain;
    ThroughputStats throughput;
    LatencyStats latency;
    /// True when the block-time series was injected from a configured constant.
    bool block_time_injected;
    /// mean block time x mean network_liveness, when that frame is present.
    /// Informational only; it feeds no verdict.
    std::optional<double> confirmation_latency;
};

struct ScalabilityComparison {
    ChainScalability a;
    ChainScalability b;
    Verdict higher_peak;    // larger peak_daily_tx
    Verdict lower_latency;  // smaller mean_block_time

    /// Chain name for a verdict, or "tie".
    std::string name_of(Verdict v) const;
};

struct ScalabilityOptions {
    /// Constant block time used for Algorand, which publishes no per-day block-time frame.
    double algorand_block_time = kDefaultAlgorandBlockTime;
};

/// Block-time series the comparison uses for `dataset`: the avg_block_time
/// frame, or for Algorand a constant series on the transaction_count dates.
ObservationSeries block_time_series(const ChainDataset& dataset, const ScalabilityOptions& options = {});

/// Throws FrameMissing.
ScalabilityComparison compare_scalability(const ChainDataset& a, const ChainDataset& b,
                                          const ScalabilityOptions& options = {});

}  // namespace trilemma
