#include "trilemma/scalability.hpp"

#include "trilemma/error.hpp"

#include <algorithm>
#include <cmath>

namespace trilemma {

namespace {

double mean_of(std::span<const Point> points)
{
    long double sum = 0;
    for (const auto& p : points) sum += p.value;
    return static_cast<double>(sum / static_cast<long double>(points.size()));
}

void require_points(const ObservationSeries& s)
{
    if (s.empty()) throw Error(ErrorCode::EmptySeries, s.frame_name() + " has no observations");
}

Verdict strict(double a, double b, bool larger_wins)
{
    if (a == b) return Verdict::Tie;
    return ((a > b) == larger_wins) ? Verdict::A : Verdict::B;
}

ChainScalability chain_stats(const ChainDataset& ds, const ScalabilityOptions& options)
{
    const auto& tx = ds.at("transaction_count");
    const auto bt = block_time_series(ds, options);
    ChainScalability out{ds.chain(), throughput_stats(tx), latency_stats(bt), !ds.has("avg_block_time"),
                         std::nullopt};
    if (ds.has("network_liveness") && !ds.at("network_liveness").empty()) {
        out.confirmation_latency = out.latency.mean_block_time * mean_of(ds.at("network_liveness").points());
    }
    return out;
}

}  // namespace

ThroughputStats throughput_stats(const ObservationSeries& tx)
{
    require_points(tx);
    const auto points = tx.points();
    // max_element returns the first maximum, and points are in date order.
    const auto peak = std::max_element(points.begin(), points.end(),
                                       [](const Point& a, const Point& b) { return a.value < b.value; });
    const double mean = mean_of(points);
    return ThroughputStats{mean, peak->value, peak->date, mean / kSecondsPerDay, peak->value / kSecondsPerDay};
}

LatencyStats latency_stats(const ObservationSeries& block_time)
{
    require_points(block_time);
    const auto points = block_time.points();
    for (const auto& p : points) {
        if (!(p.value > 0)) {
            throw Error(ErrorCode::NonPositiveBlockTime, block_time.frame_name() + " on " + format_date(p.date));
        }
    }
    const double mean = mean_of(points);
    long double ss = 0;
    for (const auto& p : points) {
        const long double d = p.value - static_cast<long double>(mean);
        ss += d * d;
    }
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                              [](const Point& a, const Point& b) { return a.value < b.value; });
    return LatencyStats{mean, static_cast<double>(std::sqrt(ss / static_cast<long double>(points.size()))),
                        lo->value, hi->value};
}

std::string ScalabilityComparison::name_of(Verdict v) const
{
    switch (v) {
    case Verdict::A: return std::string(to_string(a.chain));
    case Verdict::B: return std::string(to_string(b.chain));
    case Verdict::Tie: break;
    }
    return "tie";
}

ObservationSeries block_time_series(const ChainDataset& dataset, const ScalabilityOptions& options)
{
    if (dataset.has("avg_block_time")) return dataset.at("avg_block_time");
    if (dataset.chain() != Chain::Algorand) return dataset.at("avg_block_time");  // FrameMissing
    if (!(options.algorand_block_time > 0) || !std::isfinite(options.algorand_block_time)) {
        throw Error(ErrorCode::NonPositiveBlockTime, "configured Algorand block time must be positive");
    }
    std::vector<Point> points;
    for (const auto& p : dataset.at("transaction_count").points()) {
        points.push_back({p.date, options.algorand_block_time});
    }
    return ObservationSeries(Chain::Algorand, "avg_block_time", Unit::Seconds, std::move(points));
}

ScalabilityComparison compare_scalability(const ChainDataset& a, const ChainDataset& b,
                                          const ScalabilityOptions& options)
{
    ScalabilityComparison out{chain_stats(a, options), chain_stats(b, options), Verdict::Tie, Verdict::Tie};
    out.higher_peak = strict(out.a.throughput.peak_daily_tx, out.b.throughput.peak_daily_tx, true);
    out.lower_latency = strict(out.a.latency.mean_block_time, out.b.latency.mean_block_time, false);
    return out;
}

}  // namespace trilemma
