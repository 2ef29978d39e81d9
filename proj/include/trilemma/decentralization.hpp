#pragma once

#include "trilemma/ingest.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace trilemma {

enum class Layer { Consensus, Transaction };
enum class IndexKind { Shannon, Gini, Nakamoto, Hhi };

std::string_view to_string(Layer layer) noexcept;
std::string_view to_string(IndexKind kind) noexcept;
std::optional<Layer> parse_layer(std::string_view text) noexcept;
std::optional<IndexKind> parse_index_kind(std::string_view text) noexcept;

inline constexpr double kDefaultNakamotoThreshold = 0.51;
inline constexpr std::size_t kDefaultRollingWindow = 7;

/// Shares P_i = v_i / sum(v) of a nonnegative vector, in input order.
class WeightVector {
public:
    std::span<const double> weights() const noexcept { return weights_; }
    /// The raw values v_i the shares were taken from.
    std::span<const double> values() const noexcept { return values_; }
    /// values() sorted descending; index sums run over this order so results
    /// are bit-identical under permutation of the input.
    std::span<const double> sorted_values() const noexcept { return sorted_values_; }
    double source_total() const noexcept { return total_; }
    std::size_t size() const noexcept { return weights_.size(); }
    std::size_t nonzero_count() const noexcept;

private:
    friend WeightVector normalize(std::span<const double> values);

    std::vector<double> values_;
    std::vector<double> weights_;
    std::vector<double> sorted_values_;
    double total_ = 0;
};

/// Throws NegativeValue, NonNumericValue or AllZero.
WeightVector normalize(std::span<const double> values);

/// exp(-sum P_i ln P_i): the product of P_i^-P_i, evaluated in log space.
/// Ranges from 1 (one unit holds everything) to N (uniform over N units).
double shannon_entropy_index(const WeightVector& w);

/// 1 - sum P_i^2 (the Gini-Simpson form); always equals 1 - hhi(w).
double gini_coefficient(const WeightVector& w);

/// Smallest k such that the k largest shares sum to strictly more than
/// `threshold`. The comparison runs on raw values against threshold * total.
std::int64_t nakamoto_coefficient(const WeightVector& w, double threshold = kDefaultNakamotoThreshold);

/// sum P_i^2.
double hhi(const WeightVector& w);

struct LayerSelector {
    Layer layer;
    Chain chain;

    /// consensus -> proposer_count (Algorand) / validator_count (Ethereum 2.0);
    /// transaction -> transaction_count.
    std::string_view frame_name() const noexcept;
};

/// Throws FrameMissing.
const ObservationSeries& layer_series(const ChainDataset& dataset, LayerSelector selector);

struct IndexRow {
    Chain chain;
    Layer layer;
    double shannon_entropy;
    double gini;
    std::int64_t nakamoto;
    double hhi;
    std::size_t unit_count;

    friend bool operator==(const IndexRow&, const IndexRow&) = default;
};

struct DecentralizationReport {
    std::vector<IndexRow> rows;
};

/// All four indices over the positive entries of `values`. Throws AllZero.
IndexRow compute_indices(std::span<const double> values, double threshold = kDefaultNakamotoThreshold);

/// Each day is one unit; zero-valued days carry no share and are dropped.
IndexRow aggregate_indices(const ChainDataset& dataset, LayerSelector selector,
                           double threshold = kDefaultNakamotoThreshold);

/// One point per date whose trailing `window` observations (present days, not
/// calendar days) contain a positive value. Throws WindowTooLarge.
ObservationSeries rolling_index_series(const ObservationSeries& series, std::size_t window, IndexKind index,
                                       double threshold = kDefaultNakamotoThreshold);

double index_value(const IndexRow& row, IndexKind index) noexcept;

/// Index values published for the 2019-2023 Algorand / Ethereum 2.0 collection,
/// kept for deviation diagnostics. unit_count is unknown and set to 0.
std::span<const IndexRow> published_reference_indices() noexcept;

}  // namespace trilemma
