#include "trilemma/commands.hpp"

#include "trilemma/error.hpp"
#include "trilemma/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace trilemma {

namespace {

namespace fs = std::filesystem;

int exit_code_for(const Error& e)
{
    switch (e.code()) {
    case ErrorCode::Io:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidConfig: return kExitUsage;
    default: return kExitData;
    }
}

Json error_json(const Error& e) { return Json{{"code", to_string(e.code())}, {"message", e.what()}}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct LoadedPair {
    std::optional<ChainDataset> algorand;
    std::optional<ChainDataset> ethereum;
};

// Loads both datasets; failures are reported to `err` and returned as an exit code.
int load_pair(const fs::path& algorand_dir, const fs::path& ethereum_dir, LoadedPair& out, std::ostream& err)
{
    int worst = kExitOk;
    auto load = [&](const fs::path& dir, Chain chain, std::optional<ChainDataset>& slot) {
        try {
            slot.emplace(load_chain_dataset(dir, chain));
        } catch (const Error& e) {
            err << "error: " << to_string(chain) << ": " << e.what() << '\n';
            worst = std::max(worst, exit_code_for(e));
        }
    };
    load(algorand_dir, Chain::Algorand, out.algorand);
    load(ethereum_dir, Chain::Ethereum2, out.ethereum);
    return worst;
}

std::string rolling_file_name(Chain chain, Layer layer, IndexKind kind)
{
    return "rolling_" + std::string(to_string(chain)) + "_" + std::string(to_string(layer)) + "_" +
           std::string(to_string(kind)) + ".csv";
}

void write_series(const fs::path& path, const ObservationSeries& series)
{
    fs::create_directories(path.parent_path());
    write_series_csv(path, series);
}

struct DecentralizationOutcome {
    std::vector<IndexRow> rows;
    Json errors = Json::array();
    int exit = kExitOk;
};

DecentralizationOutcome decentralization_rows(const std::vector<const ChainDataset*>& datasets, double threshold)
{
    DecentralizationOutcome out;
    for (const auto* ds : datasets) {
        for (const auto layer : {Layer::Consensus, Layer::Transaction}) {
            try {
                out.rows.push_back(aggregate_indices(*ds, {layer, ds->chain()}, threshold));
            } catch (const Error& e) {
                out.errors.push_back({{"chain", to_string(ds->chain())}, {"layer", to_string(layer)},
                                      {"error", error_json(e)}});
                out.exit = std::max(out.exit, exit_code_for(e));
            }
        }
    }
    return out;
}

// Writes rolling-series CSVs for every row that could be computed.
int write_rolling(const std::vector<const ChainDataset*>& datasets, const std::vector<IndexRow>& rows,
                  std::size_t window, double threshold, const std::vector<IndexKind>& kinds, const fs::path& dir,
                  Json& errors)
{
    int worst = kExitOk;
    for (const auto& row : rows) {
        const auto* ds = *std::find_if(datasets.begin(), datasets.end(),
                                       [&](const ChainDataset* d) { return d->chain() == row.chain; });
        const auto& series = layer_series(*ds, {row.layer, row.chain});
        for (const auto kind : kinds) {
            try {
                write_series(dir / rolling_file_name(row.chain, row.layer, kind),
                             rolling_index_series(series, window, kind, threshold));
            } catch (const Error& e) {
                errors.push_back({{"chain", to_string(row.chain)}, {"layer", to_string(row.layer)},
                                  {"index", to_string(kind)}, {"error", error_json(e)}});
                worst = std::max(worst, exit_code_for(e));
            }
        }
    }
    return worst;
}

std::vector<const ChainDataset*> present(const LoadedPair& pair)
{
    std::vector<const ChainDataset*> out;
    if (pair.algorand) out.push_back(&*pair.algorand);
    if (pair.ethereum) out.push_back(&*pair.ethereum);
    return out;
}

void print_rows(std::ostream& out, const std::vector<IndexRow>& rows)
{
    out << std::left << std::setw(10) << "chain" << std::setw(12) << "layer" << std::right << std::setw(16)
        << "shannon" << std::setw(12) << "gini" << std::setw(10) << "nakamoto" << std::setw(14) << "hhi"
        << std::setw(8) << "units" << '\n';
    for (const auto& r : rows) {
        out << std::left << std::setw(10) << to_string(r.chain) << std::setw(12) << to_string(r.layer) << std::right
            << std::setw(16) << format_value(r.shannon_entropy) << std::setw(12) << std::setprecision(6)
            << r.gini << std::setw(10) << r.nakamoto << std::setw(14) << r.hhi << std::setw(8) << r.unit_count
            << '\n';
    }
}

void print_deviation(std::ostream& out, const std::vector<IndexRow>& rows)
{
    out << "deviation from published index values (computed - published):\n";
    for (const auto& ref : published_reference_indices()) {
        for (const auto& r : rows) {
            if (r.chain != ref.chain || r.layer != ref.layer) continue;
            for (const auto kind : {IndexKind::Shannon, IndexKind::Gini, IndexKind::Nakamoto, IndexKind::Hhi}) {
                const double d = index_value(r, kind) - index_value(ref, kind);
                out << "  " << to_string(r.chain) << ' ' << to_string(r.layer) << ' ' << to_string(kind) << ": "
                    << (d >= 0 ? "+" : "") << format_value(d) << " (published " << format_value(index_value(ref, kind))
                    << ")\n";
            }
        }
    }
}

AttackSimConfig sim_config(Scheme scheme, double alpha, unsigned g, std::int64_t rounds, std::int64_t trials,
                           std::int64_t honest, std::uint64_t seed)
{
    AttackSimConfig c;
    c.scheme = scheme;
    c.adversary_stake = alpha;
    c.grinding_bits = scheme == Scheme::SeedChain ? 0 : g;
    c.rounds = rounds;
    c.trials = trials;
    c.honest_validators = honest;
    c.rng_seed = seed;
    return c;
}

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

}  // namespace

int cmd_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err)
{
    const auto chain = parse_chain(options.chain);
    if (!chain) {
        err << "error: unknown chain '" << options.chain << "' (expected algorand or ethereum2)\n";
        return kExitUsage;
    }
    try {
        const auto ds = load_chain_dataset(options.data_dir, *chain);
        const auto report = validate_dataset(ds);
        Json j;
        j["chain"] = to_string(*chain);
        j["frames"] = Json::array();
        for (const auto& [name, series] : ds.frames()) j["frames"].push_back(name);
        j["unrecognized_files"] = ds.unrecognized_files();
        const Json report_json = to_json(report);
        for (const auto& [k, v] : report_json.items()) j[k] = v;
        if (options.out) {
            write_text(*options.out, dump(j));
        } else {
            out << dump(j);
        }
        if (!report.pass()) {
            err << report.violations.size() << " violation(s) in " << options.data_dir.string() << '\n';
            return kExitData;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::Io ? kExitUsage : kExitData;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_decentralization(const DecentralizationOptions& options, std::ostream& out, std::ostream& err)
{
    if (!(options.threshold > 0 && options.threshold < 1) || options.window < 2) {
        err << "error: --threshold must lie in (0, 1) and --window must be at least 2\n";
        return kExitUsage;
    }
    try {
        LoadedPair pair;
        int worst = load_pair(options.algorand_dir, options.ethereum_dir, pair, err);
        const auto datasets = present(pair);
        auto result = decentralization_rows(datasets, options.threshold);
        worst = std::max(worst, result.exit);
        worst = std::max(worst, write_rolling(datasets, result.rows, options.window, options.threshold,
                                              options.rolling_indices, options.out, result.errors));

        Json j;
        j["config"] = {{"window", options.window}, {"threshold", options.threshold}};
        j["rows"] = Json::array();
        for (const auto& r : result.rows) j["rows"].push_back(to_json(r));
        j["errors"] = result.errors;
        fs::create_directories(options.out);
        write_text(options.out / "decentralization.json", dump(j));
        write_text(options.out / "decentralization.csv", index_rows_csv(result.rows));
        print_rows(out, result.rows);
        if (options.compare_published) {
            write_text(options.out / "published_deviation.csv", published_deviation_csv(result.rows));
            print_deviation(out, result.rows);
        }
        for (const auto& e : result.errors) err << "error: " << e["error"]["message"].get<std::string>() << '\n';
        return worst;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_scalability(const ScalabilityCmdOptions& options, std::ostream& out, std::ostream& err)
{
    try {
        LoadedPair pair;
        const int loaded = load_pair(options.algorand_dir, options.ethereum_dir, pair, err);
        if (loaded != kExitOk) return loaded;
        const ScalabilityOptions sopts{options.algorand_block_time};
        const auto comparison = compare_scalability(*pair.algorand, *pair.ethereum, sopts);
        fs::create_directories(options.out);
        write_text(options.out / "scalability.json", dump(to_json(comparison)));
        for (const auto* ds : present(pair)) {
            const auto chain = std::string(to_string(ds->chain()));
            write_series(options.out / ("daily_tx_" + chain + ".csv"), ds->at("transaction_count"));
            write_series(options.out / ("daily_block_time_" + chain + ".csv"), block_time_series(*ds, sopts));
        }
        out << "higher peak volume: " << comparison.name_of(comparison.higher_peak) << '\n'
            << "lower block time:   " << comparison.name_of(comparison.lower_latency) << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err)
{
    const auto scheme = parse_scheme(options.scheme);
    if (!scheme) {
        err << "error: unknown scheme '" << options.scheme << "' (expected seed-chain or xor)\n";
        return kExitUsage;
    }
    try {
        const auto base = sim_config(*scheme, options.alpha, options.grinding_bits, options.rounds, options.trials,
                                     options.honest_validators, options.seed);
        if (*scheme == Scheme::SeedChain && options.grinding_bits != 0) {
            throw Error(ErrorCode::InvalidConfig, "--grinding-bits applies only to the xor scheme");
        }
        std::vector<AttackSimResult> results;
        if (options.sweep.empty()) {
            results.push_back(simulate_attack(base));
        } else {
            results = sweep_attack(base, options.sweep);
        }
        Json j = Json::array();
        for (const auto& r : results) j.push_back(to_json(r));
        if (options.out) {
            fs::create_directories(*options.out);
            write_text(*options.out / "simulation.json", dump(j));
            write_text(*options.out / "simulation.csv", simulation_csv(results));
        } else {
            out << dump(j);
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err)
{
    if (!(options.threshold > 0 && options.threshold < 1) || options.window < 2) {
        err << "error: --threshold must lie in (0, 1) and --window must be at least 2\n";
        return kExitUsage;
    }
    try {
        LoadedPair pair;
        int worst = load_pair(options.algorand_dir, options.ethereum_dir, pair, err);
        const auto datasets = present(pair);
        const fs::path& dir = options.out;
        fs::create_directories(dir);

        Json report;
        Json errors = Json::array();

        // Validation and optional frames.
        Json validation;
        Json absent;
        for (const auto* ds : datasets) {
            const auto key = std::string(to_string(ds->chain()));
            const auto v = validate_dataset(*ds);
            validation[key] = {{"pass", v.pass()}, {"violations", v.violations.size()}};
            absent[key] = Json::array();
            for (const auto& file : file_schemas(ds->chain())) {
                for (const auto& frame : file.frames) {
                    if (!ds->has(frame.frame_name) && !absent[key].contains(frame.frame_name)) {
                        absent[key].push_back(frame.frame_name);
                    }
                }
            }
        }

        // Decentralization.
        auto dec = decentralization_rows(datasets, options.threshold);
        worst = std::max(worst, dec.exit);
        worst = std::max(worst, write_rolling(datasets, dec.rows, options.window, options.threshold,
                                              {IndexKind::Shannon, IndexKind::Gini, IndexKind::Nakamoto,
                                               IndexKind::Hhi},
                                              dir, dec.errors));
        Json dec_json;
        dec_json["rows"] = Json::array();
        for (const auto& r : dec.rows) dec_json["rows"].push_back(to_json(r));
        dec_json["errors"] = dec.errors;
        write_text(dir / "decentralization.csv", index_rows_csv(dec.rows));

        // Scalability.
        const ScalabilityOptions sopts{options.algorand_block_time};
        Json scal = nullptr;
        if (pair.algorand && pair.ethereum) {
            try {
                const auto comparison = compare_scalability(*pair.algorand, *pair.ethereum, sopts);
                scal = to_json(comparison);
                for (const auto* ds : datasets) {
                    const auto chain = std::string(to_string(ds->chain()));
                    write_series(dir / ("daily_tx_" + chain + ".csv"), ds->at("transaction_count"));
                    write_series(dir / ("daily_block_time_" + chain + ".csv"), block_time_series(*ds, sopts));
                }
            } catch (const Error& e) {
                errors.push_back({{"section", "scalability"}, {"error", error_json(e)}});
                worst = std::max(worst, exit_code_for(e));
            }
        }

        // Security: fee statistics and fee/transaction correlation.
        Json security;
        std::ostringstream sec_csv;
        sec_csv << "chain,daily_mean,total,std,days,fee_tx_correlation\r\n";
        for (const auto* ds : datasets) {
            const auto key = std::string(to_string(ds->chain()));
            Json entry;
            std::string mean_text;
            std::string corr_text;
            try {
                const auto& fees = ds->at("burned_fees");
                const auto stats = burned_fee_stats(fees);
                entry["fees"] = to_json(stats);
                write_series(dir / ("burned_fees_" + key + ".csv"), fees);
                sec_csv << key << ',' << format_value(stats.daily_mean) << ',' << format_value(stats.total) << ','
                        << format_value(stats.std) << ',' << stats.days << ',';
                try {
                    const double r = fee_security_correlation(fees, ds->at("transaction_count"));
                    entry["fee_tx_correlation"] = r;
                    sec_csv << format_value(r);
                } catch (const Error& e) {
                    entry["fee_tx_correlation"] = nullptr;
                    errors.push_back({{"section", "security"}, {"chain", key}, {"error", error_json(e)}});
                    worst = std::max(worst, exit_code_for(e));
                }
                sec_csv << "\r\n";
            } catch (const Error& e) {
                errors.push_back({{"section", "security"}, {"chain", key}, {"error", error_json(e)}});
                worst = std::max(worst, exit_code_for(e));
            }
            security[key] = entry;
        }
        write_text(dir / "security.csv", sec_csv.str());

        // Attack simulations: both schemes at every alpha.
        std::vector<AttackSimResult> sims;
        for (const auto scheme : {Scheme::SeedChain, Scheme::XorAccumulator}) {
            const auto base = sim_config(scheme, 0.0, options.grinding_bits, options.rounds, options.trials,
                                         options.honest_validators, options.seed);
            for (auto& r : sweep_attack(base, options.alphas)) sims.push_back(r);
        }
        Json sim_json = Json::array();
        for (const auto& r : sims) sim_json.push_back(to_json(r));
        write_text(dir / "simulation.csv", simulation_csv(sims));

        // Provenance.
        Json inputs = Json::array();
        for (const auto* ds : datasets) {
            for (const auto& d : digest_sources(*ds)) {
                inputs.push_back({{"path", d.path}, {"sha256", d.sha256}, {"bytes", d.bytes}});
            }
        }
        Json provenance;
        provenance["tool_version"] = tool_version();
        provenance["inputs"] = inputs;
        provenance["config"] = {{"algorand_dir", options.algorand_dir.generic_string()},
                                {"ethereum_dir", options.ethereum_dir.generic_string()},
                                {"window", options.window},
                                {"threshold", options.threshold},
                                {"algorand_block_time", options.algorand_block_time},
                                {"alphas", options.alphas},
                                {"grinding_bits", options.grinding_bits},
                                {"rounds", options.rounds},
                                {"trials", options.trials},
                                {"honest_validators", options.honest_validators},
                                {"seed", options.seed}};
        if (options.timestamp) provenance["generated_at"] = utc_now();

        report["validation"] = validation;
        report["absent_optional_frames"] = absent;
        report["decentralization"] = dec_json;
        report["scalability"] = scal;
        report["security"] = security;
        report["simulations"] = sim_json;
        report["errors"] = errors;
        report["provenance"] = provenance;
        write_text(dir / "report.json", dump(report));

        print_rows(out, dec.rows);
        out << "report written to " << dir.string() << '\n';
        for (const auto& e : errors) err << "error: " << e["error"]["message"].get<std::string>() << '\n';
        for (const auto& e : dec.errors) err << "error: " << e["error"]["message"].get<std::string>() << '\n';
        return worst;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace trilemma
