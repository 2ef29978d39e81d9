#pragma once

#include "trilemma/ingest.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace trilemma {

struct FeeStats {
    double daily_mean;
    double total;
    double std;  // population standard deviation
    std::size_t days;
};

/// Throws EmptySeries.
FeeStats burned_fee_stats(const ObservationSeries& fees);

/// Pearson correlation of two equally long samples. Throws InsufficientData
/// (fewer than 3 pairs) or ZeroVariance.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

/// Pearson correlation over the dates both series share.
/// Throws EmptyIntersection, InsufficientData or ZeroVariance.
double fee_security_correlation(const ObservationSeries& fees, const ObservationSeries& tx);

/// Source of per-round proposer randomness.
enum class Scheme {
    /// A fresh seed every round, independent of participants' choices.
    SeedChain,
    /// Running XOR of per-round reveals; the last revealer can grind.
    XorAccumulator,
};

std::string_view to_string(Scheme scheme) noexcept;
/// Accepts "seed-chain"/"seed_chain" and "xor"/"xor-accumulator"/"xor_accumulator".
std::optional<Scheme> parse_scheme(std::string_view text) noexcept;

inline constexpr unsigned kMaxGrindingBits = 20;

struct AttackSimConfig {
    Scheme scheme = Scheme::SeedChain;
    double adversary_stake = 0.0;  // alpha in [0, 1)
    std::int64_t honest_validators = 1000;
    std::int64_t rounds = 1000;
    std::int64_t trials = 100;
    unsigned grinding_bits = 0;  // xor_accumulator only
    std::uint64_t rng_seed = 0;

    friend bool operator==(const AttackSimConfig&, const AttackSimConfig&) = default;
};

/// Throws InvalidConfig.
void validate(const AttackSimConfig& config);

struct AttackSimResult {
    AttackSimConfig config;
    std::int64_t total_rounds;
    std::int64_t adversary_rounds;
    double adversary_share;
    std::int64_t max_consecutive_adversary;  // longest run inside one trial
    double bias;                             // adversary_share - alpha
    double standard_error;                   // binomial, over rounds x trials
    /// Rounds whose randomness was last revealed by an adversarial proposer
    /// (the round after an adversarial round, within a trial).
    std::int64_t ground_rounds;
    std::int64_t ground_adversary_rounds;
    double conditional_share;
    double conditional_standard_error;

    friend bool operator==(const AttackSimResult&, const AttackSimResult&) = default;
};

/// Runs `trials` independent chains of `rounds` stake-weighted proposer
/// lotteries. Trial i draws from its own generator seeded by (rng_seed, i),
/// so the result depends only on the config, never on `threads`.
/// threads == 0 uses TRILEMMA_THREADS or the hardware concurrency.
AttackSimResult simulate_attack(const AttackSimConfig& config, unsigned threads = 0);

/// One run per alpha; run i is seeded with rng_seed ^ i.
std::vector<AttackSimResult> sweep_attack(const AttackSimConfig& base, std::span<const double> alphas,
                                          unsigned threads = 0);

/// Worker count from TRILEMMA_THREADS (if set and positive) capped by hardware.
unsigned default_thread_count();

}  // namespace trilemma
