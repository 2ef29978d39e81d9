#include "trilemma/security.hpp"

#include "trilemma/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

namespace trilemma {

namespace {

struct TrialTally {
    std::int64_t adversary_rounds = 0;
    std::int64_t max_run = 0;
    std::int64_t ground_rounds = 0;
    std::int64_t ground_adversary_rounds = 0;
};

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

class ProposerLottery {
public:
    explicit ProposerLottery(double alpha) : alpha_(alpha) {}

    bool adversary_wins(std::uint64_t randomness) const { return unit_interval(randomness) < alpha_; }

private:
    double alpha_;
};

TrialTally run_trial(const AttackSimConfig& cfg, std::uint64_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed), static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    const ProposerLottery lottery(cfg.adversary_stake);
    const std::uint64_t candidates = std::uint64_t{1} << cfg.grinding_bits;

    TrialTally tally;
    std::int64_t run = 0;
    bool previous_adversary = false;
    std::uint64_t mix = rng();  // xor_accumulator state
    for (std::int64_t round = 0; round < cfg.rounds; ++round) {
        const std::uint64_t randomness = cfg.scheme == Scheme::SeedChain ? rng() : mix;
        const bool adversary = lottery.adversary_wins(randomness);

        if (previous_adversary) {
            ++tally.ground_rounds;
            if (adversary) ++tally.ground_adversary_rounds;
        }
        if (adversary) {
            ++tally.adversary_rounds;
            tally.max_run = std::max(tally.max_run, ++run);
        } else {
            run = 0;
        }
        previous_adversary = adversary;

        if (cfg.scheme == Scheme::XorAccumulator) {
            // The proposer reveals last for the next round. An adversary tries
            // up to 2^g reveals and keeps the first that elects itself again.
            std::uint64_t reveal = rng();
            if (adversary) {
                for (std::uint64_t c = 1; c < candidates && !lottery.adversary_wins(mix ^ reveal); ++c) {
                    const std::uint64_t alternative = rng();
                    if (lottery.adversary_wins(mix ^ alternative)) reveal = alternative;
                }
            }
            mix ^= reveal;
        }
    }
    return tally;
}

double binomial_stderr(double p, std::int64_t n)
{
    if (n <= 0) return 0.0;
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

FeeStats burned_fee_stats(const ObservationSeries& fees)
{
    if (fees.empty()) throw Error(ErrorCode::EmptySeries, fees.frame_name() + " has no observations");
    long double total = 0;
    for (const auto& p : fees.points()) total += p.value;
    const auto n = static_cast<long double>(fees.size());
    const long double mean = total / n;
    long double ss = 0;
    for (const auto& p : fees.points()) ss += (p.value - mean) * (p.value - mean);
    return FeeStats{static_cast<double>(mean), static_cast<double>(total), static_cast<double>(std::sqrt(ss / n)),
                    fees.size()};
}

double pearson_correlation(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "samples differ in length");
    if (x.size() < 3) {
        throw Error(ErrorCode::InsufficientData, "correlation needs at least 3 pairs, got " + std::to_string(x.size()));
    }
    const auto n = static_cast<long double>(x.size());
    long double mx = 0;
    long double my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    long double sxx = 0;
    long double syy = 0;
    long double sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double dx = x[i] - mx;
        const long double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0 || syy == 0) throw Error(ErrorCode::ZeroVariance, "a sample is constant");
    const long double r = sxy / std::sqrt(sxx * syy);
    return static_cast<double>(std::clamp(r, -1.0L, 1.0L));
}

double fee_security_correlation(const ObservationSeries& fees, const ObservationSeries& tx)
{
    const auto pairs = align_series(fees, tx);
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(pairs.size());
    y.reserve(pairs.size());
    for (const auto& p : pairs) {
        x.push_back(p.a);
        y.push_back(p.b);
    }
    return pearson_correlation(x, y);
}

std::string_view to_string(Scheme scheme) noexcept
{
    return scheme == Scheme::SeedChain ? "seed_chain" : "xor_accumulator";
}

std::optional<Scheme> parse_scheme(std::string_view text) noexcept
{
    if (text == "seed-chain" || text == "seed_chain") return Scheme::SeedChain;
    if (text == "xor" || text == "xor-accumulator" || text == "xor_accumulator") return Scheme::XorAccumulator;
    return std::nullopt;
}

void validate(const AttackSimConfig& c)
{
    auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
    if (!(c.adversary_stake >= 0.0 && c.adversary_stake < 1.0)) fail("adversary stake must lie in [0, 1)");
    if (c.honest_validators < 1) fail("honest_validators must be at least 1");
    if (c.rounds < 1) fail("rounds must be at least 1");
    if (c.trials < 1) fail("trials must be at least 1");
    if (c.rounds > (std::int64_t{1} << 62) / c.trials) fail("rounds x trials overflows");
    if (c.scheme == Scheme::SeedChain && c.grinding_bits != 0) fail("grinding_bits applies only to xor_accumulator");
    if (c.grinding_bits > kMaxGrindingBits) fail("grinding_bits above " + std::to_string(kMaxGrindingBits));
}

unsigned default_thread_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TRILEMMA_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

AttackSimResult simulate_attack(const AttackSimConfig& config, unsigned threads)
{
    validate(config);
    const auto trials = static_cast<std::size_t>(config.trials);
    std::vector<TrialTally> tallies(trials);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(threads == 0 ? default_thread_count() : threads, trials));
    if (workers <= 1) {
        for (std::size_t t = 0; t < trials; ++t) tallies[t] = run_trial(config, t);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < trials; t += workers) tallies[t] = run_trial(config, t);
            });
        }
    }

    AttackSimResult r{};
    r.config = config;
    r.total_rounds = config.rounds * config.trials;
    for (const auto& t : tallies) {
        r.adversary_rounds += t.adversary_rounds;
        r.max_consecutive_adversary = std::max(r.max_consecutive_adversary, t.max_run);
        r.ground_rounds += t.ground_rounds;
        r.ground_adversary_rounds += t.ground_adversary_rounds;
    }
    r.adversary_share = static_cast<double>(r.adversary_rounds) / static_cast<double>(r.total_rounds);
    r.bias = r.adversary_share - config.adversary_stake;
    r.standard_error = binomial_stderr(r.adversary_share, r.total_rounds);
    if (r.ground_rounds > 0) {
        r.conditional_share = static_cast<double>(r.ground_adversary_rounds) / static_cast<double>(r.ground_rounds);
        r.conditional_standard_error = binomial_stderr(r.conditional_share, r.ground_rounds);
    }
    return r;
}

std::vector<AttackSimResult> sweep_attack(const AttackSimConfig& base, std::span<const double> alphas,
                                          unsigned threads)
{
    std::vector<AttackSimConfig> configs;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        AttackSimConfig c = base;
        c.adversary_stake = alphas[i];
        c.rng_seed = base.rng_seed ^ static_cast<std::uint64_t>(i);
        validate(c);
        configs.push_back(c);
    }
    std::vector<AttackSimResult> out;
    out.reserve(configs.size());
    for (const auto& c : configs) out.push_back(simulate_attack(c, threads));
    return out;
}

}  // namespace trilemma
