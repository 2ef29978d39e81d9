#include "oracle.hpp"

#include "trilemma/decentralization.hpp"
#include "trilemma/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
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

ObservationSeries series_of(const std::vector<double>& values, std::string frame = "proposer_count",
                            Chain chain = Chain::Algorand)
{
    std::vector<Point> pts;
    for (std::size_t i = 0; i < values.size(); ++i) pts.push_back({day(static_cast<int>(i)), values[i]});
    return ObservationSeries(chain, std::move(frame), Unit::Count, pts);
}

// 50-digit value of exp(-(0.5 ln 0.5 + 0.3 ln 0.3 + 0.2 ln 0.2)), computed offline with mpmath.
constexpr double kEntropy532 = 2.8000940728538313076;

}  // namespace

TEST_CASE("normalize")
{
    const std::vector<double> ones{1, 1, 1, 1};
    const auto w = normalize(ones);
    for (const double p : w.weights()) CHECK(p == 0.25);
    CHECK(w.source_total() == 4);

    const std::vector<double> v{5, 3, 2};
    const auto w2 = normalize(v);
    CHECK(w2.weights()[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w2.weights()[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(w2.weights()[2] == doctest::Approx(0.2).epsilon(1e-15));

    const std::vector<double> zeros{0, 0};
    CHECK(code_of([&] { normalize(zeros); }) == ErrorCode::AllZero);
    const std::vector<double> negative{1, -1};
    CHECK(code_of([&] { normalize(negative); }) == ErrorCode::NegativeValue);
    CHECK(code_of([&] { normalize(std::vector<double>{}); }) == ErrorCode::AllZero);
}

TEST_CASE("the four indices on reference vectors")
{
    const auto uniform = normalize(std::vector<double>{1, 1, 1, 1});
    CHECK(shannon_entropy_index(uniform) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(gini_coefficient(uniform) == 0.75);
    CHECK(nakamoto_coefficient(uniform) == 3);
    CHECK(hhi(uniform) == 0.25);

    const auto single = normalize(std::vector<double>{1.0});
    CHECK(shannon_entropy_index(single) == 1.0);
    CHECK(gini_coefficient(single) == 0.0);
    CHECK(nakamoto_coefficient(single) == 1);
    CHECK(hhi(single) == 1.0);

    const std::vector<double> v{0.5, 0.3, 0.2};
    const auto w = normalize(v);
    CHECK(shannon_entropy_index(w) == doctest::Approx(kEntropy532).epsilon(1e-14));
    CHECK(gini_coefficient(w) == doctest::Approx(31.0 / 50).epsilon(1e-15));
    CHECK(hhi(w) == doctest::Approx(19.0 / 50).epsilon(1e-15));
    CHECK(nakamoto_coefficient(w) == 2);

    // Independent routes agree on the same vector.
    CHECK(oracle::entropy_index(v) == doctest::Approx(kEntropy532).epsilon(1e-15));
    CHECK(oracle::entropy_index_product(v) == doctest::Approx(kEntropy532).epsilon(1e-15));
    CHECK(oracle::to_double(oracle::gini(v)) == doctest::Approx(0.62).epsilon(1e-15));
    CHECK(oracle::to_double(oracle::hhi(v)) == doctest::Approx(0.38).epsilon(1e-15));
    const std::vector<double> integers{5, 3, 2};  // exactly representable: the rationals are exact
    CHECK(oracle::gini(integers) == oracle::Rational(31, 50));
    CHECK(oracle::hhi(integers) == oracle::Rational(19, 50));
    CHECK(oracle::nakamoto(v, 0.51) == 2);
}

TEST_CASE("zero-weight units contribute nothing")
{
    const auto with_zeros = normalize(std::vector<double>{5, 0, 3, 0, 2});
    const auto without = normalize(std::vector<double>{5, 3, 2});
    CHECK(shannon_entropy_index(with_zeros) == shannon_entropy_index(without));
    CHECK(hhi(with_zeros) == hhi(without));
    CHECK(nakamoto_coefficient(with_zeros) == nakamoto_coefficient(without));
    CHECK(with_zeros.nonzero_count() == 3);
}

TEST_CASE("nakamoto threshold handling")
{
    const auto w = normalize(std::vector<double>(10, 7.0));
    CHECK(nakamoto_coefficient(w, 0.9) == 10);
    CHECK(nakamoto_coefficient(w, 0.5) == 6);
    CHECK(nakamoto_coefficient(w, 0.05) == 1);
    CHECK(code_of([&] { nakamoto_coefficient(w, 1.0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { nakamoto_coefficient(w, 0.0); }) == ErrorCode::InvalidArgument);
    for (const int n : {2, 3, 7, 50, 100, 333, 1000, 4096}) {
        const auto u = normalize(std::vector<double>(static_cast<std::size_t>(n), 0.1));
        for (const double tau : {0.1, 0.25, 0.5, 0.51, 0.66, 0.9}) {
            INFO("n=" << n << " tau=" << tau);
            CHECK(nakamoto_coefficient(u, tau) == oracle::nakamoto_scan(std::vector<double>(n, 0.1), tau));
        }
        CHECK(nakamoto_coefficient(u) == static_cast<std::int64_t>(std::floor(0.51 * n)) + 1);
    }
}

TEST_CASE("small vectors match the literal product form")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<double> v(1 + rng() % 64);
        for (auto& x : v) x = (rng() % 5 == 0) ? 0.0 : u(rng);
        if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0; })) v[0] = 1;
        const auto w = normalize(v);
        CHECK(shannon_entropy_index(w) == doctest::Approx(oracle::entropy_index_product(v)).epsilon(1e-12));
        CHECK(nakamoto_coefficient(w) == oracle::nakamoto(v, 0.51));
    }
}

TEST_CASE("index properties")
{
    std::mt19937_64 rng(5);
    std::lognormal_distribution<double> heavy(0.0, 2.0);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<double> v(1 + rng() % 200);
        for (auto& x : v) x = heavy(rng);
        const auto w = normalize(v);
        const double h = shannon_entropy_index(w);
        const auto n = static_cast<double>(v.size());

        // Entropy bounds and complementarity.
        CHECK(h >= 1.0 - 1e-12);
        CHECK(h <= n * (1 + 1e-12));
        CHECK(std::fabs(gini_coefficient(w) + hhi(w) - 1.0) <= 1e-12);
        CHECK(hhi(w) >= 1.0 / n * (1 - 1e-12));
        const auto k = nakamoto_coefficient(w);
        CHECK(k >= 1);
        CHECK(k <= static_cast<std::int64_t>(v.size()));

        // Merge monotonicity: folding two units into one.
        if (v.size() >= 2) {
            std::vector<double> merged(v.begin() + 2, v.end());
            merged.push_back(v[0] + v[1]);
            const auto wm = normalize(merged);
            CHECK(hhi(wm) >= hhi(w) * (1 - 1e-12));
            CHECK(shannon_entropy_index(wm) <= h * (1 + 1e-12));
        }
    }
}

TEST_CASE("layer_series maps layers to frames")
{
    ChainDataset algo(Chain::Algorand);
    algo.add(series_of({40, 50}, "proposer_count"));
    ChainDataset eth(Chain::Ethereum2);
    eth.add(series_of({30000, 31000}, "validator_count", Chain::Ethereum2));

    CHECK(&layer_series(algo, {Layer::Consensus, Chain::Algorand}) == &algo.at("proposer_count"));
    CHECK(&layer_series(eth, {Layer::Consensus, Chain::Ethereum2}) == &eth.at("validator_count"));
    CHECK(code_of([&] { layer_series(algo, {Layer::Transaction, Chain::Algorand}); }) == ErrorCode::FrameMissing);
    CHECK(LayerSelector{Layer::Transaction, Chain::Ethereum2}.frame_name() == "transaction_count");
}

TEST_CASE("aggregate_indices")
{
    SUBCASE("uniform days have closed forms")
    {
        for (const int n : {1, 2, 10, 37}) {
            ChainDataset ds(Chain::Algorand);
            ds.add(series_of(std::vector<double>(static_cast<std::size_t>(n), 77), "proposer_count"));
            const auto row = aggregate_indices(ds, {Layer::Consensus, Chain::Algorand});
            CHECK(row.shannon_entropy == doctest::Approx(n).epsilon(1e-12));
            CHECK(row.gini == doctest::Approx(1.0 - 1.0 / n).epsilon(1e-12));
            CHECK(row.hhi == doctest::Approx(1.0 / n).epsilon(1e-12));
            CHECK(row.nakamoto == static_cast<std::int64_t>(std::floor(0.51 * n)) + 1);
            CHECK(row.unit_count == static_cast<std::size_t>(n));
            CHECK(row.chain == Chain::Algorand);
            CHECK(row.layer == Layer::Consensus);
        }
    }
    SUBCASE("three days reuse the reference values and drop zero days")
    {
        ChainDataset ds(Chain::Algorand);
        ds.add(series_of({5, 0, 3, 2}, "transaction_count"));
        const auto row = aggregate_indices(ds, {Layer::Transaction, Chain::Algorand});
        CHECK(row.shannon_entropy == doctest::Approx(kEntropy532).epsilon(1e-14));
        CHECK(row.gini == doctest::Approx(0.62).epsilon(1e-14));
        CHECK(row.hhi == doctest::Approx(0.38).epsilon(1e-14));
        CHECK(row.nakamoto == 2);
        CHECK(row.unit_count == 3);
    }
    SUBCASE("all-zero series")
    {
        ChainDataset ds(Chain::Algorand);
        ds.add(series_of({0, 0, 0}, "proposer_count"));
        CHECK(code_of([&] { aggregate_indices(ds, {Layer::Consensus, Chain::Algorand}); }) == ErrorCode::AllZero);
    }
}

TEST_CASE("rolling_index_series")
{
    const auto constant = series_of(std::vector<double>(20, 9));
    const auto shannon = rolling_index_series(constant, 7, IndexKind::Shannon);
    REQUIRE(shannon.size() == 14);
    CHECK(shannon.points().front().date == day(6));
    for (const auto& p : shannon.points()) CHECK(p.value == doctest::Approx(7.0).epsilon(1e-13));
    const auto concentration = rolling_index_series(constant, 7, IndexKind::Hhi);
    for (const auto& p : concentration.points()) {
        CHECK(p.value == doctest::Approx(1.0 / 7).epsilon(1e-13));
    }

    const auto varied = series_of({5, 3, 2, 8, 1});
    const auto gini = rolling_index_series(varied, 3, IndexKind::Gini);
    REQUIRE(gini.size() == 3);
    CHECK(gini.points()[0].date == day(2));
    CHECK(gini.points()[0].value == doctest::Approx(0.62).epsilon(1e-14));
    const std::vector<double> slice{3, 2, 8};
    CHECK(gini.points()[1].value == doctest::Approx(oracle::to_double(oracle::gini(slice))).epsilon(1e-14));

    // Windows of only zero days are skipped.
    const auto gappy = series_of({0, 0, 0, 4, 4});
    const auto nk = rolling_index_series(gappy, 3, IndexKind::Nakamoto);
    REQUIRE(nk.size() == 2);
    CHECK(nk.points()[0].date == day(3));
    CHECK(nk.points()[0].value == 1);
    CHECK(nk.points()[1].value == 2);

    CHECK(code_of([&] { rolling_index_series(varied, 6, IndexKind::Gini); }) == ErrorCode::WindowTooLarge);
    CHECK(code_of([&] { rolling_index_series(varied, 1, IndexKind::Gini); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("published reference rows cover both chains and layers")
{
    const auto rows = published_reference_indices();
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].nakamoto == 821);
    CHECK(rows[2].nakamoto == 705);
    CHECK(rows[0].shannon_entropy == 1364.34);
}
