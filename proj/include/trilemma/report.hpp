#pragma once

// JSON / CSV serialization of every result type, and the combined report.

#include "trilemma/decentralization.hpp"
#include "trilemma/ingest.hpp"
#include "trilemma/scalability.hpp"
#include "trilemma/security.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace trilemma {

using Json = nlohmann::ordered_json;

std::string_view tool_version() noexcept;

Json to_json(const ValidationReport& report);
Json to_json(const IndexRow& row);
Json to_json(const ScalabilityComparison& comparison);
Json to_json(const FeeStats& stats);
Json to_json(const AttackSimResult& result);

/// RFC-4180 tables with a header row and CRLF line ends.
std::string index_rows_csv(std::span<const IndexRow> rows);
std::string simulation_csv(std::span<const AttackSimResult> results);
/// Signed deviations (computed - published) for every index of every row.
std::string published_deviation_csv(std::span<const IndexRow> rows);

/// Lowercase hex SHA-256 of a file's bytes. Throws Io.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

void write_text(const std::filesystem::path& path, std::string_view text);

struct InputDigest {
    std::string path;
    std::string sha256;
    std::uintmax_t bytes;
};

/// Digests of the files a dataset was loaded from, in load order.
std::vector<InputDigest> digest_sources(const ChainDataset& dataset);

}  // namespace trilemma
