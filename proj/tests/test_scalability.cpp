#include "trilemma/error.hpp"
#include "trilemma/scalability.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace trilemma;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

Date day(int n) { return Date{std::chrono::year{2023} / 1 / 1} + std::chrono::days{n}; }

ObservationSeries series_of(const std::vector<double>& values, std::string frame, Chain chain,
                            Unit unit = Unit::Count)
{
    std::vector<Point> pts;
    for (std::size_t i = 0; i < values.size(); ++i) pts.push_back({day(static_cast<int>(i)), values[i]});
    return ObservationSeries(chain, std::move(frame), unit, pts);
}

ChainDataset algorand(const std::vector<double>& tx)
{
    ChainDataset ds(Chain::Algorand);
    ds.add(series_of(tx, "transaction_count", Chain::Algorand));
    return ds;
}

ChainDataset ethereum(const std::vector<double>& tx, const std::vector<double>& block_time)
{
    ChainDataset ds(Chain::Ethereum2);
    ds.add(series_of(tx, "transaction_count", Chain::Ethereum2));
    ds.add(series_of(block_time, "avg_block_time", Chain::Ethereum2, Unit::Seconds));
    return ds;
}

}  // namespace

TEST_CASE("throughput_stats")
{
    const auto constant = throughput_stats(series_of(std::vector<double>(30, 86400), "transaction_count",
                                                     Chain::Algorand));
    CHECK(constant.mean_tps == 1.0);
    CHECK(constant.peak_tps == 1.0);
    CHECK(constant.peak_date == day(0));  // ties go to the earliest day

    const auto three = throughput_stats(series_of({100, 300, 200}, "transaction_count", Chain::Algorand));
    CHECK(three.mean_daily_tx == 200);
    CHECK(three.peak_daily_tx == 300);
    CHECK(three.peak_date == day(1));

    const auto peak = throughput_stats(series_of({1932226, 9271981, 10}, "transaction_count", Chain::Algorand));
    CHECK(peak.peak_tps == 9271981.0 / 86400.0);
    CHECK(peak.peak_tps == doctest::Approx(107.31459490740741).epsilon(1e-15));
    CHECK(1932226.0 / 86400.0 == doctest::Approx(22.36372685185185).epsilon(1e-15));

    CHECK(code_of([] { throughput_stats(series_of({}, "transaction_count", Chain::Algorand)); }) ==
          ErrorCode::EmptySeries);
}

TEST_CASE("throughput properties")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1e7);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<double> v(1 + rng() % 100);
        for (auto& x : v) x = std::floor(u(rng));
        const auto s = throughput_stats(series_of(v, "transaction_count", Chain::Ethereum2));
        // TPS is the daily count over 86400; the reverse product is exact to an ulp.
        CHECK(s.mean_tps * 86400.0 == doctest::Approx(s.mean_daily_tx).epsilon(1e-15));
        CHECK(s.peak_tps * 86400.0 == doctest::Approx(s.peak_daily_tx).epsilon(1e-15));
        CHECK(s.peak_daily_tx == *std::max_element(v.begin(), v.end()));
        CHECK(s.mean_daily_tx <= s.peak_daily_tx);

        // Reordering values across days leaves mean and peak unchanged.
        auto shuffled = v;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto t = throughput_stats(series_of(shuffled, "transaction_count", Chain::Ethereum2));
        CHECK(t.peak_daily_tx == s.peak_daily_tx);
        CHECK(t.mean_daily_tx == doctest::Approx(s.mean_daily_tx).epsilon(1e-14));
    }
}

TEST_CASE("latency_stats")
{
    const auto two = latency_stats(series_of({10, 20}, "avg_block_time", Chain::Ethereum2, Unit::Seconds));
    CHECK(two.mean_block_time == 15);
    CHECK(two.std_block_time == 5);
    CHECK(two.min_block_time == 10);
    CHECK(two.max_block_time == 20);

    const auto flat = latency_stats(series_of(std::vector<double>(9, 3.5), "avg_block_time", Chain::Algorand,
                                              Unit::Seconds));
    CHECK(flat.mean_block_time == 3.5);
    CHECK(flat.std_block_time == 0);

    CHECK(code_of([] {
              latency_stats(series_of({12, 0, 12}, "avg_block_time", Chain::Ethereum2, Unit::Seconds));
          }) == ErrorCode::NonPositiveBlockTime);
    CHECK(code_of([] { latency_stats(series_of({}, "avg_block_time", Chain::Ethereum2, Unit::Seconds)); }) ==
          ErrorCode::EmptySeries);
}

TEST_CASE("block_time_series injects the Algorand constant")
{
    const auto ds = algorand({10, 20, 30});
    const auto bt = block_time_series(ds);
    REQUIRE(bt.size() == 3);
    for (const auto& p : bt.points()) CHECK(p.value == 3.5);
    CHECK(bt.points()[2].date == day(2));

    const auto custom = block_time_series(ds, {4.4});
    CHECK(custom.points()[0].value == 4.4);
    CHECK(code_of([&] { block_time_series(ds, {0.0}); }) == ErrorCode::NonPositiveBlockTime);

    const auto eth = ethereum({1, 2}, {12, 13});
    CHECK(block_time_series(eth).points()[1].value == 13);
    CHECK(code_of([] { block_time_series(ChainDataset(Chain::Ethereum2)); }) == ErrorCode::FrameMissing);
}

TEST_CASE("compare_scalability")
{
    SUBCASE("Algorand with higher peak and the injected 3.5 s wins both")
    {
        const auto c = compare_scalability(algorand({1932226, 9271981}), ethereum({1000000, 1200000}, {12, 12.1}));
        CHECK(c.higher_peak == Verdict::A);
        CHECK(c.lower_latency == Verdict::A);
        CHECK(c.a.block_time_injected);
        CHECK_FALSE(c.b.block_time_injected);
        CHECK(c.a.latency.mean_block_time == 3.5);
        CHECK(c.b.latency.mean_block_time == doctest::Approx(12.05).epsilon(1e-15));
        CHECK(c.name_of(c.higher_peak) == "algorand");
    }
    SUBCASE("verdicts follow the data, including ties")
    {
        const auto c = compare_scalability(algorand({500}), ethereum({900}, {3.5}));
        CHECK(c.higher_peak == Verdict::B);
        CHECK(c.lower_latency == Verdict::Tie);
        CHECK(c.name_of(Verdict::Tie) == "tie");

        const auto slow = compare_scalability(algorand({900}), ethereum({900}, {2.0}), {5.0});
        CHECK(slow.higher_peak == Verdict::Tie);
        CHECK(slow.lower_latency == Verdict::B);
    }
    SUBCASE("confirmation latency needs network liveness")
    {
        auto eth = ethereum({1, 2}, {12, 12});
        CHECK_FALSE(compare_scalability(algorand({1}), eth).b.confirmation_latency.has_value());
        eth.add(series_of({2, 2}, "network_liveness", Chain::Ethereum2, Unit::None));
        const auto c = compare_scalability(algorand({1}), eth);
        REQUIRE(c.b.confirmation_latency.has_value());
        CHECK(*c.b.confirmation_latency == 24);
    }
    SUBCASE("missing transaction frame")
    {
        ChainDataset eth(Chain::Ethereum2);
        eth.add(series_of({12}, "avg_block_time", Chain::Ethereum2, Unit::Seconds));
        CHECK(code_of([&] { compare_scalability(algorand({1}), eth); }) == ErrorCode::FrameMissing);
    }
}
