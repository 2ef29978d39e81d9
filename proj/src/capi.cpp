#include "trilemma/trilemma.h"

#include "trilemma/commands.hpp"
#include "trilemma/error.hpp"
#include "trilemma/report.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <map>
#include <memory>
#include <new>
#include <string>

struct trilemma_dataset {
    trilemma::ChainDataset dataset;
    std::vector<std::string> names;
    std::map<std::string, std::vector<double>, std::less<>> values;
};

namespace {

static_assert(TRILEMMA_ERR_INVALID_CONFIG == static_cast<int>(trilemma::ErrorCode::InvalidConfig) + 1);
static_assert(TRILEMMA_ERR_FRAME_MISSING == static_cast<int>(trilemma::ErrorCode::FrameMissing) + 1);

thread_local std::string g_last_error;

trilemma_status status_of(trilemma::ErrorCode code)
{
    return static_cast<trilemma_status>(static_cast<int>(code) + 1);
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
trilemma_status guarded(Fn&& fn)
{
    try {
        fn();
        g_last_error.clear();
        return TRILEMMA_OK;
    } catch (const trilemma::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    } catch (...) {
        g_last_error = "unknown failure";
    }
    return TRILEMMA_ERR_INTERNAL;
}

trilemma_status null_argument(const char* what)
{
    g_last_error = std::string("null argument: ") + what;
    return TRILEMMA_ERR_INVALID_ARGUMENT;
}

trilemma::Chain to_chain(trilemma_chain chain)
{
    switch (chain) {
    case TRILEMMA_CHAIN_ALGORAND: return trilemma::Chain::Algorand;
    case TRILEMMA_CHAIN_ETHEREUM2: return trilemma::Chain::Ethereum2;
    }
    throw trilemma::Error(trilemma::ErrorCode::InvalidArgument, "unknown chain");
}

void fill(const trilemma::IndexRow& row, trilemma_indices* out)
{
    out->shannon_entropy = row.shannon_entropy;
    out->gini = row.gini;
    out->hhi = row.hhi;
    out->nakamoto = row.nakamoto;
    out->unit_count = row.unit_count;
}

char* copy_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string str_or_empty(const char* s) { return s == nullptr ? std::string() : std::string(s); }

template <typename Fn>
int command(Fn&& fn)
{
    try {
        return fn();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return trilemma::kExitUsage;
    }
}

}  // namespace

extern "C" {

const char* trilemma_version(void) { return trilemma::tool_version().data(); }

const char* trilemma_status_name(trilemma_status status)
{
    if (status == TRILEMMA_OK) return "Ok";
    if (status == TRILEMMA_ERR_INTERNAL) return "Internal";
    const int code = static_cast<int>(status) - 1;
    if (code < 0 || code > static_cast<int>(trilemma::ErrorCode::InvalidConfig)) return "Unknown";
    return trilemma::to_string(static_cast<trilemma::ErrorCode>(code)).data();
}

const char* trilemma_last_error(void) { return g_last_error.c_str(); }

void trilemma_string_free(char* s) { std::free(s); }

trilemma_status trilemma_compute_indices(const double* values, size_t n, double threshold, trilemma_indices* out)
{
    if (out == nullptr || (values == nullptr && n > 0)) return null_argument("values/out");
    return guarded([&] { fill(trilemma::compute_indices(std::span<const double>(values, n), threshold), out); });
}

trilemma_status trilemma_dataset_load(const char* directory, trilemma_chain chain, trilemma_dataset** out)
{
    if (directory == nullptr || out == nullptr) return null_argument("directory/out");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<trilemma_dataset>(
            trilemma_dataset{trilemma::load_chain_dataset(directory, to_chain(chain)), {}, {}});
        for (const auto& [name, series] : handle->dataset.frames()) {
            handle->names.push_back(name);
            handle->values.emplace(name, series.values());
        }
        *out = handle.release();
    });
}

void trilemma_dataset_free(trilemma_dataset* dataset) { delete dataset; }

size_t trilemma_dataset_frame_count(const trilemma_dataset* dataset)
{
    return dataset == nullptr ? 0 : dataset->names.size();
}

const char* trilemma_dataset_frame_name(const trilemma_dataset* dataset, size_t index)
{
    if (dataset == nullptr || index >= dataset->names.size()) return nullptr;
    return dataset->names[index].c_str();
}

trilemma_status trilemma_dataset_frame_values(const trilemma_dataset* dataset, const char* frame,
                                              const double** values, size_t* count)
{
    if (dataset == nullptr || frame == nullptr || values == nullptr || count == nullptr) {
        return null_argument("dataset/frame/values/count");
    }
    return guarded([&] {
        const auto it = dataset->values.find(std::string_view(frame));
        if (it == dataset->values.end()) {
            throw trilemma::Error(trilemma::ErrorCode::FrameMissing, frame);
        }
        *values = it->second.data();
        *count = it->second.size();
    });
}

trilemma_status trilemma_dataset_validate(const trilemma_dataset* dataset, char** json_out, int* pass)
{
    if (dataset == nullptr || json_out == nullptr) return null_argument("dataset/json_out");
    *json_out = nullptr;
    return guarded([&] {
        const auto report = trilemma::validate_dataset(dataset->dataset);
        if (pass != nullptr) *pass = report.pass() ? 1 : 0;
        *json_out = copy_string(trilemma::to_json(report).dump());
    });
}

trilemma_status trilemma_dataset_layer_indices(const trilemma_dataset* dataset, trilemma_layer layer,
                                               double threshold, trilemma_indices* out)
{
    if (dataset == nullptr || out == nullptr) return null_argument("dataset/out");
    return guarded([&] {
        const auto l = layer == TRILEMMA_LAYER_CONSENSUS ? trilemma::Layer::Consensus : trilemma::Layer::Transaction;
        fill(trilemma::aggregate_indices(dataset->dataset, {l, dataset->dataset.chain()}, threshold), out);
    });
}

void trilemma_sim_config_init(trilemma_sim_config* config)
{
    if (config == nullptr) return;
    const trilemma::AttackSimConfig defaults;
    config->scheme = TRILEMMA_SCHEME_SEED_CHAIN;
    config->adversary_stake = defaults.adversary_stake;
    config->honest_validators = defaults.honest_validators;
    config->rounds = defaults.rounds;
    config->trials = defaults.trials;
    config->grinding_bits = defaults.grinding_bits;
    config->rng_seed = defaults.rng_seed;
}

trilemma_status trilemma_simulate(const trilemma_sim_config* config, trilemma_sim_result* out)
{
    if (config == nullptr || out == nullptr) return null_argument("config/out");
    return guarded([&] {
        trilemma::AttackSimConfig c;
        c.scheme = config->scheme == TRILEMMA_SCHEME_XOR_ACCUMULATOR ? trilemma::Scheme::XorAccumulator
                                                                      : trilemma::Scheme::SeedChain;
        c.adversary_stake = config->adversary_stake;
        c.honest_validators = config->honest_validators;
        c.rounds = config->rounds;
        c.trials = config->trials;
        c.grinding_bits = config->grinding_bits;
        c.rng_seed = config->rng_seed;
        const auto r = trilemma::simulate_attack(c);
        out->adversary_share = r.adversary_share;
        out->bias = r.bias;
        out->standard_error = r.standard_error;
        out->max_consecutive_adversary = r.max_consecutive_adversary;
        out->adversary_rounds = r.adversary_rounds;
        out->total_rounds = r.total_rounds;
        out->ground_rounds = r.ground_rounds;
        out->ground_adversary_rounds = r.ground_adversary_rounds;
        out->conditional_share = r.conditional_share;
        out->conditional_standard_error = r.conditional_standard_error;
    });
}

void trilemma_decentralization_args_init(trilemma_decentralization_args* args)
{
    if (args == nullptr) return;
    *args = trilemma_decentralization_args{};
    args->out_dir = "trilemma_out";
    args->window = trilemma::kDefaultRollingWindow;
    args->threshold = trilemma::kDefaultNakamotoThreshold;
}

void trilemma_scalability_args_init(trilemma_scalability_args* args)
{
    if (args == nullptr) return;
    *args = trilemma_scalability_args{};
    args->out_dir = "trilemma_out";
    args->algorand_block_time = trilemma::kDefaultAlgorandBlockTime;
}

void trilemma_simulate_args_init(trilemma_simulate_args* args)
{
    if (args == nullptr) return;
    const trilemma::SimulateOptions defaults;
    *args = trilemma_simulate_args{};
    args->scheme = "seed-chain";
    args->alpha = defaults.alpha;
    args->grinding_bits = defaults.grinding_bits;
    args->rounds = defaults.rounds;
    args->trials = defaults.trials;
    args->honest_validators = defaults.honest_validators;
    args->seed = defaults.seed;
}

void trilemma_report_args_init(trilemma_report_args* args)
{
    if (args == nullptr) return;
    static const double kAlphas[] = {0.1, 0.3, 0.51};
    const trilemma::ReportOptions defaults;
    *args = trilemma_report_args{};
    args->out_dir = "trilemma_report";
    args->window = defaults.window;
    args->threshold = defaults.threshold;
    args->algorand_block_time = defaults.algorand_block_time;
    args->alphas = kAlphas;
    args->alpha_count = 3;
    args->grinding_bits = defaults.grinding_bits;
    args->rounds = defaults.rounds;
    args->trials = defaults.trials;
    args->honest_validators = defaults.honest_validators;
    args->seed = defaults.seed;
    args->timestamp = 1;
}

int trilemma_cmd_validate(const char* data_dir, const char* chain, const char* out_path)
{
    return command([&] {
        trilemma::ValidateOptions o;
        o.data_dir = str_or_empty(data_dir);
        o.chain = str_or_empty(chain);
        if (out_path != nullptr) o.out = out_path;
        return trilemma::cmd_validate(o, std::cout, std::cerr);
    });
}

int trilemma_cmd_decentralization(const trilemma_decentralization_args* args)
{
    if (args == nullptr) return trilemma::kExitUsage;
    return command([&] {
        trilemma::DecentralizationOptions o;
        o.algorand_dir = str_or_empty(args->algorand_dir);
        o.ethereum_dir = str_or_empty(args->ethereum_dir);
        if (args->out_dir != nullptr) o.out = args->out_dir;
        o.window = args->window;
        o.threshold = args->threshold;
        o.compare_published = args->compare_published != 0;
        if (args->rolling_index_count > 0) {
            o.rolling_indices.clear();
            for (size_t i = 0; i < args->rolling_index_count; ++i) {
                const auto kind = trilemma::parse_index_kind(str_or_empty(args->rolling_indices[i]));
                if (!kind) {
                    std::cerr << "error: unknown index '" << str_or_empty(args->rolling_indices[i]) << "'\n";
                    return static_cast<int>(trilemma::kExitUsage);
                }
                o.rolling_indices.push_back(*kind);
            }
        }
        return trilemma::cmd_decentralization(o, std::cout, std::cerr);
    });
}

int trilemma_cmd_scalability(const trilemma_scalability_args* args)
{
    if (args == nullptr) return trilemma::kExitUsage;
    return command([&] {
        trilemma::ScalabilityCmdOptions o;
        o.algorand_dir = str_or_empty(args->algorand_dir);
        o.ethereum_dir = str_or_empty(args->ethereum_dir);
        if (args->out_dir != nullptr) o.out = args->out_dir;
        o.algorand_block_time = args->algorand_block_time;
        return trilemma::cmd_scalability(o, std::cout, std::cerr);
    });
}

int trilemma_cmd_simulate(const trilemma_simulate_args* args)
{
    if (args == nullptr) return trilemma::kExitUsage;
    return command([&] {
        trilemma::SimulateOptions o;
        o.scheme = str_or_empty(args->scheme);
        o.alpha = args->alpha;
        o.grinding_bits = args->grinding_bits;
        o.rounds = args->rounds;
        o.trials = args->trials;
        o.honest_validators = args->honest_validators;
        o.seed = args->seed;
        if (args->sweep != nullptr) o.sweep.assign(args->sweep, args->sweep + args->sweep_count);
        if (args->out_dir != nullptr) o.out = args->out_dir;
        return trilemma::cmd_simulate(o, std::cout, std::cerr);
    });
}

int trilemma_cmd_report(const trilemma_report_args* args)
{
    if (args == nullptr) return trilemma::kExitUsage;
    return command([&] {
        trilemma::ReportOptions o;
        o.algorand_dir = str_or_empty(args->algorand_dir);
        o.ethereum_dir = str_or_empty(args->ethereum_dir);
        if (args->out_dir != nullptr) o.out = args->out_dir;
        o.window = args->window;
        o.threshold = args->threshold;
        o.algorand_block_time = args->algorand_block_time;
        if (args->alphas != nullptr) o.alphas.assign(args->alphas, args->alphas + args->alpha_count);
        o.grinding_bits = args->grinding_bits;
        o.rounds = args->rounds;
        o.trials = args->trials;
        o.honest_validators = args->honest_validators;
        o.seed = args->seed;
        o.timestamp = args->timestamp != 0;
        return trilemma::cmd_report(o, std::cout, std::cerr);
    });
}

}  // extern "C"
