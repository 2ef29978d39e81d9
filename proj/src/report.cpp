#include "trilemma/report.hpp"

#include "trilemma/error.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <sstream>

#ifndef TRILEMMA_VERSION
#define TRILEMMA_VERSION "0.0.0"
#endif

namespace trilemma {

namespace {

Json throughput_json(const ChainScalability& c)
{
    Json j;
    j["mean_daily_tx"] = c.throughput.mean_daily_tx;
    j["peak_daily_tx"] = c.throughput.peak_daily_tx;
    j["peak_date"] = format_date(c.throughput.peak_date);
    j["mean_tps"] = c.throughput.mean_tps;
    j["peak_tps"] = c.throughput.peak_tps;
    j["mean_block_time"] = c.latency.mean_block_time;
    j["std_block_time"] = c.latency.std_block_time;
    j["min_block_time"] = c.latency.min_block_time;
    j["max_block_time"] = c.latency.max_block_time;
    j["block_time_injected"] = c.block_time_injected;
    j["confirmation_latency"] = c.confirmation_latency ? Json(*c.confirmation_latency) : Json(nullptr);
    return j;
}

class Digest {
public:
    Digest() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free)
    {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
            throw Error(ErrorCode::Io, "SHA-256 initialisation failed");
        }
    }

    void update(const void* data, std::size_t size) { EVP_DigestUpdate(ctx_.get(), data, size); }

    std::string hex()
    {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
        static constexpr char kHex[] = "0123456789abcdef";
        std::string out;
        for (unsigned int i = 0; i < len; ++i) {
            out.push_back(kHex[md[i] >> 4]);
            out.push_back(kHex[md[i] & 0xF]);
        }
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string_view tool_version() noexcept { return TRILEMMA_VERSION; }

Json to_json(const ValidationReport& report)
{
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"frame", v.frame},
                              {"row", v.row},
                              {"column", v.column},
                              {"rule", v.rule},
                              {"value", v.value},
                              {"date", format_date(v.date)}});
    }
    return Json{{"pass", report.pass()}, {"violations", std::move(violations)}};
}

Json to_json(const IndexRow& row)
{
    return Json{{"chain", to_string(row.chain)}, {"layer", to_string(row.layer)},
                {"shannon_entropy", row.shannon_entropy}, {"gini", row.gini},
                {"nakamoto", row.nakamoto}, {"hhi", row.hhi},
                {"unit_count", row.unit_count}};
}

Json to_json(const ScalabilityComparison& c)
{
    Json j;
    j[std::string(to_string(c.a.chain))] = throughput_json(c.a);
    j[std::string(to_string(c.b.chain))] = throughput_json(c.b);
    j["verdicts"] = {{"higher_peak_chain", c.name_of(c.higher_peak)},
                     {"lower_latency_chain", c.name_of(c.lower_latency)}};
    return j;
}

Json to_json(const FeeStats& s)
{
    return Json{{"daily_mean", s.daily_mean}, {"total", s.total}, {"std", s.std}, {"days", s.days}};
}

Json to_json(const AttackSimResult& r)
{
    return Json{{"scheme", to_string(r.config.scheme)},
                {"alpha", r.config.adversary_stake},
                {"grinding_bits", r.config.grinding_bits},
                {"rounds", r.config.rounds},
                {"trials", r.config.trials},
                {"honest_validators", r.config.honest_validators},
                {"adversary_share", r.adversary_share},
                {"bias", r.bias},
                {"stderr", r.standard_error},
                {"max_consecutive", r.max_consecutive_adversary},
                {"rng_seed", r.config.rng_seed},
                {"adversary_rounds", r.adversary_rounds},
                {"total_rounds", r.total_rounds},
                {"ground_rounds", r.ground_rounds},
                {"ground_adversary_rounds", r.ground_adversary_rounds},
                {"conditional_share", r.conditional_share},
                {"conditional_stderr", r.conditional_standard_error}};
}

std::string index_rows_csv(std::span<const IndexRow> rows)
{
    std::ostringstream out;
    out << "chain,layer,shannon_entropy,gini,nakamoto,hhi,unit_count\r\n";
    for (const auto& r : rows) {
        out << to_string(r.chain) << ',' << to_string(r.layer) << ',' << format_value(r.shannon_entropy) << ','
            << format_value(r.gini) << ',' << r.nakamoto << ',' << format_value(r.hhi) << ',' << r.unit_count
            << "\r\n";
    }
    return out.str();
}

std::string simulation_csv(std::span<const AttackSimResult> results)
{
    std::ostringstream out;
    out << "scheme,alpha,grinding_bits,rounds,trials,adversary_share,bias,stderr,max_consecutive,rng_seed,"
           "honest_validators,ground_rounds,conditional_share,conditional_stderr\r\n";
    for (const auto& r : results) {
        out << to_string(r.config.scheme) << ',' << format_value(r.config.adversary_stake) << ','
            << r.config.grinding_bits << ',' << r.config.rounds << ',' << r.config.trials << ','
            << format_value(r.adversary_share) << ',' << format_value(r.bias) << ','
            << format_value(r.standard_error) << ',' << r.max_consecutive_adversary << ',' << r.config.rng_seed
            << ',' << r.config.honest_validators << ',' << r.ground_rounds << ','
            << format_value(r.conditional_share) << ',' << format_value(r.conditional_standard_error) << "\r\n";
    }
    return out.str();
}

std::string published_deviation_csv(std::span<const IndexRow> rows)
{
    std::ostringstream out;
    out << "chain,layer,index,computed,published,deviation\r\n";
    for (const auto& ref : published_reference_indices()) {
        for (const auto& r : rows) {
            if (r.chain != ref.chain || r.layer != ref.layer) continue;
            for (const auto kind : {IndexKind::Shannon, IndexKind::Gini, IndexKind::Nakamoto, IndexKind::Hhi}) {
                const double computed = index_value(r, kind);
                const double published = index_value(ref, kind);
                out << to_string(r.chain) << ',' << to_string(r.layer) << ',' << to_string(kind) << ','
                    << format_value(computed) << ',' << format_value(published) << ','
                    << format_value(computed - published) << "\r\n";
            }
        }
    }
    return out.str();
}

std::string sha256_hex(std::string_view bytes)
{
    Digest d;
    d.update(bytes.data(), bytes.size());
    return d.hex();
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    Digest d;
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        d.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return d.hex();
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

std::vector<InputDigest> digest_sources(const ChainDataset& dataset)
{
    std::vector<InputDigest> out;
    for (const auto& path : dataset.source_files()) {
        out.push_back({path.generic_string(), sha256_file(path), std::filesystem::file_size(path)});
    }
    return out;
}

}  // namespace trilemma
