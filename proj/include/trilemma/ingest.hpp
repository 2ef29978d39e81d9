#pragma once

// Loading, validation and alignment of per-day on-chain CSV frames.
//
// Every file is comma separated with a mandatory header row. Dates are
// ISO-8601 calendar days (YYYY-MM-DD) in a column named `date`; each value
// column is named after the frame it carries, e.g.
//
//     date,transaction_count,burned_fees
//     2023-01-01,913,1.47588

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trilemma {

using Date = std::chrono::sys_days;

enum class Chain { Algorand, Ethereum2 };
enum class Unit { Count, Seconds, Eth, Algo, Percent, None };

std::string_view to_string(Chain chain) noexcept;
std::string_view to_string(Unit unit) noexcept;
std::optional<Chain> parse_chain(std::string_view text) noexcept;

/// Parses a strict YYYY-MM-DD calendar day; returns nullopt for anything else.
std::optional<Date> parse_date(std::string_view text) noexcept;
std::string format_date(Date date);

/// Shortest decimal text that reads back to the same double.
std::string format_value(double value);

struct Point {
    Date date;
    double value;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Date-indexed daily values of one frame.
///
/// Construction enforces: dates strictly increasing, values finite, and
/// nonnegative for every unit other than `None`.
class ObservationSeries {
public:
    ObservationSeries(Chain chain, std::string frame_name, Unit unit, std::vector<Point> points);

    Chain chain() const noexcept { return chain_; }
    const std::string& frame_name() const noexcept { return frame_name_; }
    Unit unit() const noexcept { return unit_; }
    std::span<const Point> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    std::vector<double> values() const;

    friend bool operator==(const ObservationSeries&, const ObservationSeries&) = default;

private:
    Chain chain_;
    std::string frame_name_;
    Unit unit_;
    std::vector<Point> points_;
};

struct ValueRange {
    double min;
    double max;
};

struct FrameDescriptor {
    std::string frame_name;
    Unit unit;
    std::optional<ValueRange> range;  // historical min/max from the data dictionary
};

/// On-disk contract of one CSV file: which frames it carries.
struct FileSchema {
    std::string file_name;
    Chain chain;
    std::vector<FrameDescriptor> frames;
    /// The file holds string records; the single frame is the per-date row count.
    bool count_rows = false;
    std::string date_column = "date";
};

/// Every file recognized for `chain`, in a fixed order.
std::span<const FileSchema> file_schemas(Chain chain);
const FrameDescriptor* find_frame(Chain chain, std::string_view frame_name);

class ChainDataset {
public:
    explicit ChainDataset(Chain chain) : chain_(chain) {}

    Chain chain() const noexcept { return chain_; }

    /// Rejects frames of another chain, frame names unknown to the chain and duplicates.
    void add(ObservationSeries series);

    bool has(std::string_view frame_name) const;
    /// Throws FrameMissing.
    const ObservationSeries& at(std::string_view frame_name) const;
    const std::map<std::string, ObservationSeries, std::less<>>& frames() const noexcept { return frames_; }

    /// Files present in the source directory that matched no schema.
    const std::vector<std::string>& unrecognized_files() const noexcept { return unrecognized_; }
    /// Recognized files that were loaded, in load order.
    const std::vector<std::filesystem::path>& source_files() const noexcept { return sources_; }

    void note_unrecognized(std::string file_name) { unrecognized_.push_back(std::move(file_name)); }
    void note_source(std::filesystem::path path) { sources_.push_back(std::move(path)); }

private:
    Chain chain_;
    std::map<std::string, ObservationSeries, std::less<>> frames_;
    std::vector<std::string> unrecognized_;
    std::vector<std::filesystem::path> sources_;
};

struct Violation {
    std::string frame;
    std::size_t row;  // 1-based position in date order
    Date date;
    std::string column;
    std::string rule;  // "percent_bounds" or "table_range"
    double value;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool pass() const noexcept { return violations.empty(); }

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Loads one frame from `path`. `schema` must carry `frame_name`.
ObservationSeries load_frame(const std::filesystem::path& path, const FileSchema& schema,
                             std::string_view frame_name);
/// Loads every frame a file carries, one series per value column.
std::vector<ObservationSeries> load_file(const std::filesystem::path& path, const FileSchema& schema);
std::vector<ObservationSeries> parse_file(std::istream& in, const FileSchema& schema,
                                          const std::string& source_name);

ChainDataset load_chain_dataset(const std::filesystem::path& directory, Chain chain);

ValidationReport validate_dataset(const ChainDataset& dataset);

struct AlignedPair {
    Date date;
    double a;
    double b;
};

/// Pairs values on the dates present in both series. Throws EmptyIntersection.
std::vector<AlignedPair> align_series(const ObservationSeries& a, const ObservationSeries& b);

/// Writes `date,<frame_name>` rows; the path form creates missing parent directories.
void write_series_csv(std::ostream& out, const ObservationSeries& series);
void write_series_csv(const std::filesystem::path& path, const ObservationSeries& series);

}  // namespace trilemma
