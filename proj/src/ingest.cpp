#include "trilemma/ingest.hpp"

#include "trilemma/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace trilemma {

namespace {

// Ranges are the historical min~max column of the published data dictionary.
const std::array<FileSchema, 10> kEthereumFiles{{
    {"daily_block_count.csv", Chain::Ethereum2, {{"daily_block_count", Unit::Count, ValueRange{0, 7180}}}},
    {"avg_blk_time.csv", Chain::Ethereum2, {{"avg_block_time", Unit::Seconds, ValueRange{4.46, 30.57}}}},
    {"gas_used_avg_by_blk.csv", Chain::Ethereum2, {{"avg_gas_used", Unit::None, ValueRange{0, 15511762.25}}}},
    {"daily_transactions.csv", Chain::Ethereum2, {{"transaction_count", Unit::Count, ValueRange{0, 1932226}}}},
    {"gas_limit.csv", Chain::Ethereum2, {{"gas_limit", Unit::Eth, ValueRange{5000, 30076713.92}}}},
    {"burned_fees.csv", Chain::Ethereum2, {{"burned_fees", Unit::Eth, ValueRange{0, 71718.88}}}},
    {"validator_data.csv", Chain::Ethereum2, {{"validator_count", Unit::Count, ValueRange{21063, 771738}}}},
    {"validator_avg_balance.csv", Chain::Ethereum2,
     {{"avg_validator_balance", Unit::Eth, ValueRange{32.00953203, 34.00950871}}}},
    {"participation_rate.csv", Chain::Ethereum2,
     {{"participation_rate", Unit::Percent, ValueRange{0.941524213, 0.99728444}}}},
    {"network_Liveness.csv", Chain::Ethereum2, {{"network_liveness", Unit::Count, ValueRange{2, 12}}}},
}};

const std::array<FileSchema, 5> kAlgorandFiles{{
    {"al_block_data.csv", Chain::Algorand, {{"block_info", Unit::Count, std::nullopt}}, true},
    {"al_block_data_proposercount_reward.csv", Chain::Algorand,
     {{"proposer_count", Unit::Count, ValueRange{31, 130}},
      {"block_reward", Unit::Algo, ValueRange{141.059024, 5184.994864}}}},
    {"al_transac_data_count_fee.csv", Chain::Algorand,
     {{"transaction_count", Unit::Count, ValueRange{913, 9271981}},
      {"burned_fees", Unit::Algo, ValueRange{1.47588, 33113.44687}}}},
    {"al_block_data_reward.csv", Chain::Algorand,
     {{"block_reward", Unit::Algo, ValueRange{141.059024, 5184.994864}}}},
    {"al_contracts_calls_unique_calls.csv", Chain::Algorand,
     {{"contract_calls", Unit::Count, ValueRange{1, 197459}}, {"unique_calls", Unit::Count, ValueRange{1, 10149}}}},
}};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// RFC-4180 field splitting for a single physical line.
std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::string(trim(field)));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::string(trim(field)));
    return fields;
}

std::optional<double> parse_number(std::string_view text)
{
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

bool requires_nonnegative(Unit unit) { return unit != Unit::None; }

std::string location(const std::string& source, std::size_t line)
{
    return source + ":" + std::to_string(line);
}

}  // namespace

std::string_view to_string(Chain chain) noexcept
{
    switch (chain) {
    case Chain::Algorand: return "algorand";
    case Chain::Ethereum2: return "ethereum2";
    }
    return "unknown";
}

std::string_view to_string(Unit unit) noexcept
{
    switch (unit) {
    case Unit::Count: return "count";
    case Unit::Seconds: return "seconds";
    case Unit::Eth: return "eth";
    case Unit::Algo: return "algo";
    case Unit::Percent: return "percent";
    case Unit::None: return "none";
    }
    return "unknown";
}

std::optional<Chain> parse_chain(std::string_view text) noexcept
{
    if (text == "algorand") return Chain::Algorand;
    if (text == "ethereum2" || text == "ethereum" || text == "eth2") return Chain::Ethereum2;
    return std::nullopt;
}

std::optional<Date> parse_date(std::string_view text) noexcept
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, v);
        if (ec != std::errc{} || ptr != text.data() + pos + len) return std::nullopt;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (text[i] < '0' || text[i] > '9') return std::nullopt;
        }
        return v;
    };
    const auto y = digits(0, 4);
    const auto m = digits(5, 2);
    const auto d = digits(8, 2);
    if (!y || !m || !d) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                                          std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

std::string format_date(Date date)
{
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_value(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

ObservationSeries::ObservationSeries(Chain chain, std::string frame_name, Unit unit, std::vector<Point> points)
    : chain_(chain), frame_name_(std::move(frame_name)), unit_(unit), points_(std::move(points))
{
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.value)) {
            throw Error(ErrorCode::NonNumericValue, frame_name_ + " on " + format_date(p.date));
        }
        if (requires_nonnegative(unit_) && p.value < 0) {
            throw Error(ErrorCode::NegativeValue,
                        frame_name_ + " on " + format_date(p.date) + " = " + format_value(p.value));
        }
        if (i > 0 && !(points_[i - 1].date < p.date)) {
            throw Error(points_[i - 1].date == p.date ? ErrorCode::DuplicateDate : ErrorCode::InvalidArgument,
                        frame_name_ + ": dates must be strictly increasing at " + format_date(p.date));
        }
    }
}

std::vector<double> ObservationSeries::values() const
{
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.value);
    return out;
}

std::span<const FileSchema> file_schemas(Chain chain)
{
    if (chain == Chain::Algorand) return kAlgorandFiles;
    return kEthereumFiles;
}

const FrameDescriptor* find_frame(Chain chain, std::string_view frame_name)
{
    for (const auto& file : file_schemas(chain)) {
        for (const auto& frame : file.frames) {
            if (frame.frame_name == frame_name) return &frame;
        }
    }
    return nullptr;
}

void ChainDataset::add(ObservationSeries series)
{
    if (series.chain() != chain_) {
        throw Error(ErrorCode::InvalidArgument, series.frame_name() + " belongs to " +
                                                    std::string(to_string(series.chain())) + ", not " +
                                                    std::string(to_string(chain_)));
    }
    if (find_frame(chain_, series.frame_name()) == nullptr) {
        throw Error(ErrorCode::UnknownFrame, series.frame_name() + " for " + std::string(to_string(chain_)));
    }
    if (frames_.contains(series.frame_name())) {
        throw Error(ErrorCode::DuplicateFrame, series.frame_name());
    }
    auto name = series.frame_name();
    frames_.emplace(std::move(name), std::move(series));
}

bool ChainDataset::has(std::string_view frame_name) const { return frames_.find(frame_name) != frames_.end(); }

const ObservationSeries& ChainDataset::at(std::string_view frame_name) const
{
    const auto it = frames_.find(frame_name);
    if (it == frames_.end()) {
        throw Error(ErrorCode::FrameMissing, std::string(frame_name) + " not in " + std::string(to_string(chain_)) +
                                                 " dataset");
    }
    return it->second;
}

std::vector<ObservationSeries> parse_file(std::istream& in, const FileSchema& schema, const std::string& source_name)
{
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (!trim(view).empty()) {
            header = split_csv_line(view);
            break;
        }
    }
    if (header.empty()) throw Error(ErrorCode::MissingColumn, source_name + ": no header row");

    auto column_of = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw Error(ErrorCode::MissingColumn, source_name + ": column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t date_col = column_of(schema.date_column);
    std::vector<std::size_t> value_cols;
    if (!schema.count_rows) {
        for (const auto& frame : schema.frames) value_cols.push_back(column_of(frame.frame_name));
    }

    std::vector<std::vector<Point>> columns(schema.frames.size());
    std::map<Date, double> row_counts;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (date_col >= fields.size()) {
            throw Error(ErrorCode::MissingColumn, location(source_name, line_no) + ": short row");
        }
        const auto date = parse_date(fields[date_col]);
        if (!date) {
            throw Error(ErrorCode::UnparsableDate, location(source_name, line_no) + ": '" + fields[date_col] + "'");
        }
        if (schema.count_rows) {
            row_counts[*date] += 1;
            continue;
        }
        for (std::size_t f = 0; f < value_cols.size(); ++f) {
            if (value_cols[f] >= fields.size()) {
                throw Error(ErrorCode::MissingColumn, location(source_name, line_no) + ": short row");
            }
            const auto value = parse_number(fields[value_cols[f]]);
            if (!value) {
                throw Error(ErrorCode::NonNumericValue,
                            location(source_name, line_no) + ": '" + fields[value_cols[f]] + "'");
            }
            columns[f].push_back({*date, *value});
        }
    }

    std::vector<ObservationSeries> out;
    if (schema.count_rows) {
        std::vector<Point> points;
        for (const auto& [date, n] : row_counts) points.push_back({date, n});
        out.emplace_back(schema.chain, schema.frames.front().frame_name, schema.frames.front().unit, std::move(points));
        return out;
    }
    for (std::size_t f = 0; f < columns.size(); ++f) {
        auto& points = columns[f];
        std::stable_sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.date < b.date; });
        const auto dup = std::adjacent_find(points.begin(), points.end(),
                                            [](const Point& a, const Point& b) { return a.date == b.date; });
        if (dup != points.end()) {
            throw Error(ErrorCode::DuplicateDate, source_name + ": " + format_date(dup->date));
        }
        try {
            out.emplace_back(schema.chain, schema.frames[f].frame_name, schema.frames[f].unit, std::move(points));
        } catch (const Error& e) {
            throw Error(e.code(), source_name + ": " + e.what());
        }
    }
    return out;
}

std::vector<ObservationSeries> load_file(const std::filesystem::path& path, const FileSchema& schema)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return parse_file(in, schema, path.string());
}

ObservationSeries load_frame(const std::filesystem::path& path, const FileSchema& schema, std::string_view frame_name)
{
    const auto it = std::find_if(schema.frames.begin(), schema.frames.end(),
                                 [&](const FrameDescriptor& f) { return f.frame_name == frame_name; });
    if (it == schema.frames.end()) {
        throw Error(ErrorCode::UnknownFrame, std::string(frame_name) + " is not carried by " + schema.file_name);
    }
    FileSchema single = schema;
    single.frames = {*it};
    auto series = load_file(path, single);
    return std::move(series.front());
}

ChainDataset load_chain_dataset(const std::filesystem::path& directory, Chain chain)
{
    std::error_code ec;
    if (!std::filesystem::is_directory(directory, ec)) {
        throw Error(ErrorCode::Io, "not a directory: " + directory.string());
    }
    std::vector<std::filesystem::path> entries;
    for (const auto& entry : std::filesystem::directory_iterator(directory)) {
        if (entry.is_regular_file()) entries.push_back(entry.path());
    }
    std::sort(entries.begin(), entries.end());

    ChainDataset dataset(chain);
    const auto schemas = file_schemas(chain);
    for (const auto& schema : schemas) {
        const auto path = directory / schema.file_name;
        if (std::find(entries.begin(), entries.end(), path) == entries.end()) continue;
        for (auto& series : load_file(path, schema)) {
            try {
                dataset.add(std::move(series));
            } catch (const Error& e) {
                throw Error(e.code(), path.string() + ": " + e.what());
            }
        }
        dataset.note_source(path);
    }
    for (const auto& path : entries) {
        const auto name = path.filename().string();
        const bool known = std::any_of(schemas.begin(), schemas.end(),
                                       [&](const FileSchema& s) { return s.file_name == name; });
        if (!known) dataset.note_unrecognized(name);
    }
    if (dataset.frames().empty()) {
        throw Error(ErrorCode::NoFramesFound, directory.string() + " has no " + std::string(to_string(chain)) +
                                                  " frame files");
    }
    return dataset;
}

ValidationReport validate_dataset(const ChainDataset& dataset)
{
    ValidationReport report;
    for (const auto& [name, series] : dataset.frames()) {
        const FrameDescriptor* desc = find_frame(dataset.chain(), name);
        const auto points = series.points();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double v = points[i].value;
            std::string rule;
            if (series.unit() == Unit::Percent && (v < 0 || v > 1)) {
                rule = "percent_bounds";
            } else if (desc != nullptr && desc->range && (v < desc->range->min || v > desc->range->max)) {
                rule = "table_range";
            }
            if (!rule.empty()) report.violations.push_back({name, i + 1, points[i].date, name, rule, v});
        }
    }
    return report;
}

std::vector<AlignedPair> align_series(const ObservationSeries& a, const ObservationSeries& b)
{
    std::vector<AlignedPair> out;
    const auto pa = a.points();
    const auto pb = b.points();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < pa.size() && j < pb.size()) {
        if (pa[i].date < pb[j].date) {
            ++i;
        } else if (pb[j].date < pa[i].date) {
            ++j;
        } else {
            out.push_back({pa[i].date, pa[i].value, pb[j].value});
            ++i;
            ++j;
        }
    }
    if (out.empty()) {
        throw Error(ErrorCode::EmptyIntersection, a.frame_name() + " and " + b.frame_name() + " share no dates");
    }
    return out;
}

void write_series_csv(std::ostream& out, const ObservationSeries& series)
{
    out << "date," << series.frame_name() << "\r\n";
    for (const auto& p : series.points()) out << format_date(p.date) << ',' << format_value(p.value) << "\r\n";
}

void write_series_csv(const std::filesystem::path& path, const ObservationSeries& series)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write_series_csv(out, series);
    if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

}  // namespace trilemma
