#include "trilemma/decentralization.hpp"

#include "trilemma/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

namespace trilemma {

namespace {

// Neumaier-compensated accumulator in extended precision.
class CompensatedSum {
public:
    void add(long double x)
    {
        const long double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    long double value() const { return sum_ + carry_; }

private:
    long double sum_ = 0;
    long double carry_ = 0;
};

const std::array<IndexRow, 4> kPublished{{
    {Chain::Algorand, Layer::Consensus, 1364.34, 0.155, 821, 0.0005, 0},
    {Chain::Algorand, Layer::Transaction, 920.192, 0.155, 931, 0.00015, 0},
    {Chain::Ethereum2, Layer::Consensus, 866.759, 0.301, 705, 0.0021, 0},
    {Chain::Ethereum2, Layer::Transaction, 2252.60, 0.301, 2067, 0.0004, 0},
}};

std::vector<double> positive_only(std::span<const double> values)
{
    std::vector<double> out;
    out.reserve(values.size());
    for (const double v : values) {
        if (v > 0) out.push_back(v);
    }
    return out;
}

}  // namespace

std::string_view to_string(Layer layer) noexcept
{
    return layer == Layer::Consensus ? "consensus" : "transaction";
}

std::string_view to_string(IndexKind kind) noexcept
{
    switch (kind) {
    case IndexKind::Shannon: return "shannon";
    case IndexKind::Gini: return "gini";
    case IndexKind::Nakamoto: return "nakamoto";
    case IndexKind::Hhi: return "hhi";
    }
    return "unknown";
}

std::optional<Layer> parse_layer(std::string_view text) noexcept
{
    if (text == "consensus") return Layer::Consensus;
    if (text == "transaction") return Layer::Transaction;
    return std::nullopt;
}

std::optional<IndexKind> parse_index_kind(std::string_view text) noexcept
{
    if (text == "shannon") return IndexKind::Shannon;
    if (text == "gini") return IndexKind::Gini;
    if (text == "nakamoto") return IndexKind::Nakamoto;
    if (text == "hhi") return IndexKind::Hhi;
    return std::nullopt;
}

std::size_t WeightVector::nonzero_count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](double v) { return v > 0; }));
}

WeightVector normalize(std::span<const double> values)
{
    WeightVector w;
    w.values_.assign(values.begin(), values.end());
    for (const double v : values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonNumericValue, "weight input is not finite");
        if (v < 0) throw Error(ErrorCode::NegativeValue, "weight input " + std::to_string(v));
    }
    w.sorted_values_ = w.values_;
    std::sort(w.sorted_values_.begin(), w.sorted_values_.end(), std::greater<>());

    CompensatedSum total;
    for (auto it = w.sorted_values_.rbegin(); it != w.sorted_values_.rend(); ++it) total.add(*it);
    w.total_ = static_cast<double>(total.value());
    if (!(w.total_ > 0)) throw Error(ErrorCode::AllZero, "all values are zero");

    w.weights_.reserve(values.size());
    for (const double v : values) w.weights_.push_back(v / w.total_);
    return w;
}

double shannon_entropy_index(const WeightVector& w)
{
    CompensatedSum nats;
    const auto sorted = w.sorted_values();
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        if (*it <= 0) continue;  // 0^0 = 1
        const double p = *it / w.source_total();
        nats.add(-static_cast<long double>(p) * std::log(static_cast<long double>(p)));
    }
    return static_cast<double>(std::exp(nats.value()));
}

double hhi(const WeightVector& w)
{
    CompensatedSum sum;
    const auto sorted = w.sorted_values();
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        const long double p = static_cast<long double>(*it) / w.source_total();
        sum.add(p * p);
    }
    return static_cast<double>(sum.value());
}

double gini_coefficient(const WeightVector& w) { return 1.0 - hhi(w); }

std::int64_t nakamoto_coefficient(const WeightVector& w, double threshold)
{
    if (!(threshold > 0 && threshold < 1)) {
        throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0, 1)");
    }
    const auto sorted = w.sorted_values();
    CompensatedSum total;
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) total.add(*it);
    const long double target = static_cast<long double>(threshold) * total.value();
    CompensatedSum prefix;
    std::int64_t k = 0;
    for (const double v : sorted) {
        ++k;
        prefix.add(v);
        if (prefix.value() > target) return k;
    }
    return static_cast<std::int64_t>(w.nonzero_count());
}

std::string_view LayerSelector::frame_name() const noexcept
{
    if (layer == Layer::Transaction) return "transaction_count";
    return chain == Chain::Algorand ? "proposer_count" : "validator_count";
}

const ObservationSeries& layer_series(const ChainDataset& dataset, LayerSelector selector)
{
    if (dataset.chain() != selector.chain) {
        throw Error(ErrorCode::InvalidArgument, "selector chain does not match dataset");
    }
    return dataset.at(selector.frame_name());
}

IndexRow compute_indices(std::span<const double> values, double threshold)
{
    const auto units = positive_only(values);
    if (units.empty()) throw Error(ErrorCode::AllZero, "no positive units");
    const WeightVector w = normalize(units);
    const double h = hhi(w);
    return IndexRow{Chain::Algorand,        Layer::Consensus,
                    shannon_entropy_index(w), 1.0 - h,
                    nakamoto_coefficient(w, threshold), h,
                    w.size()};
}

IndexRow aggregate_indices(const ChainDataset& dataset, LayerSelector selector, double threshold)
{
    const auto& series = layer_series(dataset, selector);
    IndexRow row;
    try {
        row = compute_indices(series.values(), threshold);
    } catch (const Error& e) {
        throw Error(e.code(), std::string(to_string(selector.chain)) + " " + std::string(to_string(selector.layer)) +
                                  ": " + e.what());
    }
    row.chain = selector.chain;
    row.layer = selector.layer;
    return row;
}

double index_value(const IndexRow& row, IndexKind index) noexcept
{
    switch (index) {
    case IndexKind::Shannon: return row.shannon_entropy;
    case IndexKind::Gini: return row.gini;
    case IndexKind::Nakamoto: return static_cast<double>(row.nakamoto);
    case IndexKind::Hhi: return row.hhi;
    }
    return 0;
}

ObservationSeries rolling_index_series(const ObservationSeries& series, std::size_t window, IndexKind index,
                                       double threshold)
{
    if (window < 2) throw Error(ErrorCode::InvalidArgument, "window must be at least 2");
    if (series.size() < window) {
        throw Error(ErrorCode::WindowTooLarge, "window " + std::to_string(window) + " exceeds " +
                                                   std::to_string(series.size()) + " observations of " +
                                                   series.frame_name());
    }
    const auto values = series.values();
    const auto points = series.points();
    std::vector<Point> out;
    out.reserve(points.size() - window + 1);
    for (std::size_t end = window; end <= points.size(); ++end) {
        const std::span<const double> slice(values.data() + (end - window), window);
        if (std::none_of(slice.begin(), slice.end(), [](double v) { return v > 0; })) continue;
        out.push_back({points[end - 1].date, index_value(compute_indices(slice, threshold), index)});
    }
    return ObservationSeries(series.chain(),
                             series.frame_name() + "_" + std::string(to_string(index)) + "_w" + std::to_string(window),
                             Unit::None, std::move(out));
}

std::span<const IndexRow> published_reference_indices() noexcept { return kPublished; }

}  // namespace trilemma
