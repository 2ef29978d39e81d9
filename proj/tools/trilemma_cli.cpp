// trilemma: command-line front end over the C API.

#include "trilemma/trilemma.h"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kUsage = 2;

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decentralization, scalability and security metrics over per-day on-chain CSV data"};
    app.set_version_flag("--version", std::string(trilemma_version()));
    app.require_subcommand(1);

    // validate
    std::string v_dir;
    std::string v_chain;
    std::string v_out;
    auto* validate = app.add_subcommand("validate", "Check a data directory against the frame schema and ranges");
    validate->add_option("data_dir", v_dir, "Directory of frame CSV files")->required();
    validate->add_option("--chain", v_chain, "algorand or ethereum2")->required();
    validate->add_option("--out", v_out, "Write the JSON report here instead of stdout");

    // decentralization
    trilemma_decentralization_args d_args;
    trilemma_decentralization_args_init(&d_args);
    std::string d_algo;
    std::string d_eth;
    std::string d_out = d_args.out_dir;
    std::vector<std::string> d_indices{"shannon"};
    bool d_compare = false;
    auto* dec = app.add_subcommand("decentralization", "Four decentralization indices per chain and layer");
    dec->add_option("algorand_dir", d_algo, "Algorand data directory")->required();
    dec->add_option("ethereum_dir", d_eth, "Ethereum 2.0 data directory")->required();
    dec->add_option("--window", d_args.window, "Rolling window in observations")->capture_default_str();
    dec->add_option("--threshold", d_args.threshold, "Nakamoto share threshold")->capture_default_str();
    dec->add_option("--indices", d_indices, "Rolling series to emit: shannon,gini,nakamoto,hhi")
        ->delimiter(',')
        ->capture_default_str();
    dec->add_flag("--compare-published", d_compare, "Print deviations from the published index table");
    dec->add_option("--out", d_out, "Output directory")->capture_default_str();

    // scalability
    trilemma_scalability_args s_args;
    trilemma_scalability_args_init(&s_args);
    std::string s_algo;
    std::string s_eth;
    std::string s_out = s_args.out_dir;
    auto* scal = app.add_subcommand("scalability", "Throughput and block-time comparison");
    scal->add_option("algorand_dir", s_algo, "Algorand data directory")->required();
    scal->add_option("ethereum_dir", s_eth, "Ethereum 2.0 data directory")->required();
    scal->add_option("--algorand-block-time", s_args.algorand_block_time, "Constant Algorand block time (s)")
        ->capture_default_str();
    scal->add_option("--out", s_out, "Output directory")->capture_default_str();

    // simulate
    trilemma_simulate_args m_args;
    trilemma_simulate_args_init(&m_args);
    std::string m_scheme = m_args.scheme;
    std::vector<double> m_sweep;
    std::string m_out;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo proposer-selection attack simulation");
    sim->add_option("--scheme", m_scheme, "seed-chain or xor")->capture_default_str();
    sim->add_option("--alpha", m_args.alpha, "Adversary stake fraction in [0, 1)")->capture_default_str();
    sim->add_option("--grinding-bits", m_args.grinding_bits, "log2 of candidate reveals (xor only)")
        ->capture_default_str();
    sim->add_option("--rounds", m_args.rounds, "Rounds per trial")->capture_default_str();
    sim->add_option("--trials", m_args.trials, "Independent trials")->capture_default_str();
    sim->add_option("--honest-validators", m_args.honest_validators, "Honest validator count")
        ->capture_default_str();
    sim->add_option("--seed", m_args.seed, "RNG seed")->capture_default_str();
    sim->add_option("--sweep", m_sweep, "Comma-separated alphas; one result per alpha")->delimiter(',');
    sim->add_option("--out", m_out, "Output directory (JSON to stdout when omitted)");

    // report
    trilemma_report_args r_args;
    trilemma_report_args_init(&r_args);
    std::string r_algo;
    std::string r_eth;
    std::string r_out = r_args.out_dir;
    std::vector<double> r_alphas(r_args.alphas, r_args.alphas + r_args.alpha_count);
    bool r_no_timestamp = false;
    auto* rep = app.add_subcommand("report", "Combined report with provenance");
    rep->add_option("algorand_dir", r_algo, "Algorand data directory")->required();
    rep->add_option("ethereum_dir", r_eth, "Ethereum 2.0 data directory")->required();
    rep->add_option("--out", r_out, "Output directory")->capture_default_str();
    rep->add_option("--window", r_args.window, "Rolling window in observations")->capture_default_str();
    rep->add_option("--threshold", r_args.threshold, "Nakamoto share threshold")->capture_default_str();
    rep->add_option("--algorand-block-time", r_args.algorand_block_time, "Constant Algorand block time (s)")
        ->capture_default_str();
    rep->add_option("--sweep", r_alphas, "Adversary stakes to simulate")->delimiter(',')->capture_default_str();
    rep->add_option("--grinding-bits", r_args.grinding_bits, "Grinding bits for the xor scheme")
        ->capture_default_str();
    rep->add_option("--rounds", r_args.rounds, "Rounds per trial")->capture_default_str();
    rep->add_option("--trials", r_args.trials, "Independent trials")->capture_default_str();
    rep->add_option("--honest-validators", r_args.honest_validators, "Honest validator count")
        ->capture_default_str();
    rep->add_option("--seed", r_args.seed, "RNG seed")->capture_default_str();
    rep->add_flag("--no-timestamp", r_no_timestamp, "Omit generated_at from the provenance block");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    if (validate->parsed()) {
        return trilemma_cmd_validate(v_dir.c_str(), v_chain.c_str(), opt(v_out));
    }
    if (dec->parsed()) {
        std::vector<const char*> names;
        for (const auto& s : d_indices) names.push_back(s.c_str());
        d_args.algorand_dir = d_algo.c_str();
        d_args.ethereum_dir = d_eth.c_str();
        d_args.out_dir = d_out.c_str();
        d_args.rolling_indices = names.data();
        d_args.rolling_index_count = names.size();
        d_args.compare_published = d_compare ? 1 : 0;
        return trilemma_cmd_decentralization(&d_args);
    }
    if (scal->parsed()) {
        s_args.algorand_dir = s_algo.c_str();
        s_args.ethereum_dir = s_eth.c_str();
        s_args.out_dir = s_out.c_str();
        return trilemma_cmd_scalability(&s_args);
    }
    if (sim->parsed()) {
        m_args.scheme = m_scheme.c_str();
        m_args.sweep = m_sweep.data();
        m_args.sweep_count = m_sweep.size();
        m_args.out_dir = opt(m_out);
        const int rc = trilemma_cmd_simulate(&m_args);
        if (rc == kUsage) std::cerr << sim->help();
        return rc;
    }
    if (rep->parsed()) {
        r_args.algorand_dir = r_algo.c_str();
        r_args.ethereum_dir = r_eth.c_str();
        r_args.out_dir = r_out.c_str();
        r_args.alphas = r_alphas.data();
        r_args.alpha_count = r_alphas.size();
        r_args.timestamp = r_no_timestamp ? 0 : 1;
        return trilemma_cmd_report(&r_args);
    }
    return kUsage;
}
