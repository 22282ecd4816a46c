#include "relscore/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relscore/errors.hpp"
#include "relscore/numeric.hpp"
#include "report_json.hpp"

namespace relscore {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(delimiter, start);
        const std::string_view field =
            line.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                             : pos - start);
        out.emplace_back(trim(field));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// Reads non-blank lines with their 1-based file line numbers; CRLF-safe.
std::vector<std::pair<std::size_t, std::string>> read_lines(const std::filesystem::path& path,
                                                            const char* what) {
    std::ifstream in(path);
    if (!in) throw DataError(std::string("cannot open ") + what + " file: " + path.string());
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        lines.emplace_back(line_no, line);
    }
    return lines;
}

std::string locus(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + " line " + std::to_string(line_no);
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

}  // namespace

LoadedDataset load_dataset(const std::filesystem::path& path, const DatasetReadOptions& options) {
    const auto lines = read_lines(path, "dataset");
    if (lines.empty()) throw DataError("dataset file is empty: " + path.string());

    const auto& [header_line_no, header_text] = lines.front();
    const std::vector<std::string> header = split_fields(header_text, options.delimiter);
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j].empty())
            throw DataError(locus(path, header_line_no) + ": empty column name (column " +
                            std::to_string(j + 1) + ")");
    }
    if (header.size() < 2)
        throw DataError(locus(path, header_line_no) +
                        ": dataset needs at least one feature column and an outcome column");

    std::size_t outcome_idx = header.size() - 1;
    if (!options.outcome_column.empty()) {
        const auto it = std::find(header.begin(), header.end(), options.outcome_column);
        if (it == header.end())
            throw DataError("outcome column '" + options.outcome_column +
                            "' not found in the header of " + path.string());
        outcome_idx = static_cast<std::size_t>(it - header.begin());
    }

    FeatureSchema schema;
    schema.outcome_column = header[outcome_idx];
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != outcome_idx) schema.features.push_back(header[j]);
    }
    try {
        schema.validate();
    } catch (const std::invalid_argument& e) {
        throw DataError(locus(path, header_line_no) + ": invalid header: " + e.what());
    }

    std::vector<Sample> samples;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line_no, text] = lines[i];
        const std::vector<std::string> fields = split_fields(text, options.delimiter);
        if (fields.size() != header.size())
            throw DataError(locus(path, line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        std::vector<std::string> values;
        values.reserve(header.size() - 1);
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (fields[j].empty())
                throw DataError(locus(path, line_no) + ", column '" + header[j] +
                                "': empty token");
            if (j != outcome_idx) values.push_back(fields[j]);
        }
        samples.push_back(Sample{std::move(values), OutcomeLabel(fields[outcome_idx])});
    }
    if (samples.empty())
        throw DataError("dataset has no data rows (header only): " + path.string());

    return LoadedDataset{std::move(schema), std::move(samples)};
}

PredictionFile::PredictionFile(std::vector<OutcomeLabel> by_index)
    : by_index_(std::move(by_index)) {}

PredictionFile load_predictions(const std::filesystem::path& path, std::size_t expected_len) {
    if (expected_len == 0)
        throw std::invalid_argument("load_predictions: expected_len must be positive");
    const auto lines = read_lines(path, "prediction");
    if (lines.empty()) throw DataError("prediction file is empty: " + path.string());

    const auto header = split_fields(lines.front().second, ',');
    if (header.size() != 2 || header[0] != "index" || header[1] != "predicted")
        throw DataError(locus(path, lines.front().first) +
                        ": prediction files must start with the header 'index,predicted'");

    std::vector<std::optional<OutcomeLabel>> slots(expected_len);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line_no, text] = lines[i];
        const auto fields = split_fields(text, ',');
        if (fields.size() != 2)
            throw DataError(locus(path, line_no) + ": expected 2 fields, got " +
                            std::to_string(fields.size()));
        std::size_t index = 0;
        const auto [ptr, ec] =
            std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), index);
        if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size())
            throw DataError(locus(path, line_no) + ": index '" + fields[0] +
                            "' is not a non-negative integer");
        if (index >= expected_len)
            throw DataError(locus(path, line_no) + ": index " + std::to_string(index) +
                            " is out of range (evaluation split has " +
                            std::to_string(expected_len) + " rows)");
        if (slots[index].has_value())
            throw DataError(locus(path, line_no) + ": duplicate index " + std::to_string(index));
        if (fields[1].empty())
            throw DataError(locus(path, line_no) + ": empty predicted label");
        slots[index] = OutcomeLabel(fields[1]);
    }

    std::vector<OutcomeLabel> labels;
    labels.reserve(expected_len);
    for (std::size_t i = 0; i < expected_len; ++i) {
        if (!slots[i].has_value())
            throw DataError(path.string() + ": incomplete coverage, row index " +
                            std::to_string(i) + " has no prediction");
        labels.push_back(*slots[i]);
    }
    return PredictionFile(std::move(labels));
}

void EvaluationReport::validate() const {
    params.validate();
    const auto in_score_range = [](double v) { return v >= 0.0 && v <= 100.0; };
    if (!in_score_range(ca) || !in_score_range(rs) || !in_score_range(rs_alpha_inf) ||
        !in_score_range(rs_beta_inf))
        throw InternalError("report: aggregates must lie in [0, 100]");
    for (const auto& [c, n] : case_histogram) {
        (void)c;
        if (n < 0) throw InternalError("report: negative case count");
    }
    if (per_sample.has_value()) {
        std::int64_t total = 0;
        for (const auto& [c, n] : case_histogram) {
            (void)c;
            total += n;
        }
        if (total != static_cast<std::int64_t>(per_sample->size()))
            throw InternalError("report: case histogram sums to " + std::to_string(total) +
                                " but " + std::to_string(per_sample->size()) +
                                " samples are present");
        CompensatedSum sum;
        for (const SampleEvaluation& e : *per_sample) sum.add(e.score);
        const double mean = sum.value() / static_cast<double>(per_sample->size());
        if (std::abs(mean - rs) > 1e-9)
            throw InternalError("report: rs disagrees with the mean per-sample score");
    }
}

namespace {

ordered_json sample_to_json(const SampleEvaluation& e) {
    ordered_json j;
    j["predicted"] = e.predicted.str();
    j["actual"] = e.actual.str();
    j["p_h"] = e.probs.p_h;
    j["p_p"] = e.probs.p_p;
    j["p_a"] = e.probs.p_a;
    j["d_hp"] = e.distances.d_hp;
    j["d_pa"] = e.distances.d_pa;
    j["d_ha"] = e.distances.d_ha;
    j["case"] = std::string(case_name(e.relevance_case));
    j["err_score"] = e.err_score;
    j["score"] = e.score;
    return j;
}

SampleEvaluation sample_from_json(const ordered_json& j) {
    return SampleEvaluation{
        OutcomeLabel(j.at("predicted").get<std::string>()),
        OutcomeLabel(j.at("actual").get<std::string>()),
        ProbabilityTriple{j.at("p_h").get<double>(), j.at("p_p").get<double>(),
                          j.at("p_a").get<double>()},
        DistanceTriple{j.at("d_hp").get<double>(), j.at("d_pa").get<double>(),
                       j.at("d_ha").get<double>()},
        case_from_name(j.at("case").get<std::string>()),
        j.at("err_score").get<double>(),
        j.at("score").get<double>()};
}

}  // namespace

namespace detail {

nlohmann::ordered_json report_to_json_value(const EvaluationReport& r) {
    ordered_json j;
    j["ca"] = r.ca;
    j["rs"] = r.rs;
    j["alpha"] = r.params.alpha;
    j["beta"] = r.params.beta;
    j["rs_alpha_inf"] = r.rs_alpha_inf;
    j["rs_beta_inf"] = r.rs_beta_inf;
    ordered_json cases = ordered_json::object();
    for (CaseLabel c : kAllCases) {
        const auto it = r.case_histogram.find(c);
        cases[std::string(case_name(c))] = it == r.case_histogram.end() ? 0 : it->second;
    }
    j["cases"] = cases;
    j["provenance"] = r.provenance;
    if (r.per_sample.has_value()) {
        ordered_json samples = ordered_json::array();
        for (const SampleEvaluation& e : *r.per_sample) samples.push_back(sample_to_json(e));
        j["samples"] = samples;
    }
    return j;
}

EvaluationReport report_from_json_value(const nlohmann::ordered_json& j) {
    EvaluationReport r;
    r.ca = j.at("ca").get<double>();
    r.rs = j.at("rs").get<double>();
    r.params.alpha = j.at("alpha").get<double>();
    r.params.beta = j.at("beta").get<double>();
    r.rs_alpha_inf = j.at("rs_alpha_inf").get<double>();
    r.rs_beta_inf = j.at("rs_beta_inf").get<double>();
    for (const auto& [name, count] : j.at("cases").items()) {
        r.case_histogram[case_from_name(name)] = count.get<std::int64_t>();
    }
    if (j.contains("provenance")) {
        for (const auto& [key, value] : j.at("provenance").items()) {
            r.provenance[key] = value.get<std::string>();
        }
    }
    if (j.contains("samples")) {
        std::vector<SampleEvaluation> samples;
        for (const auto& item : j.at("samples")) samples.push_back(sample_from_json(item));
        r.per_sample = std::move(samples);
    }
    return r;
}

}  // namespace detail

std::string report_to_json(const EvaluationReport& report) {
    return detail::report_to_json_value(report).dump(2) + "\n";
}

std::string reports_to_json(std::span<const EvaluationReport> reports) {
    if (reports.size() == 1) return report_to_json(reports.front());
    ordered_json arr = ordered_json::array();
    for (const EvaluationReport& r : reports) arr.push_back(detail::report_to_json_value(r));
    return arr.dump(2) + "\n";
}

std::string reports_to_csv(std::span<const EvaluationReport> reports) {
    std::ostringstream out;
    out << "model,arm,ca,rs,alpha,beta,rs_alpha_inf,rs_beta_inf";
    for (CaseLabel c : kAllCases) out << ',' << case_name(c);
    out << '\n';
    for (const EvaluationReport& r : reports) {
        const auto field = [&r](const char* key) {
            const auto it = r.provenance.find(key);
            return it == r.provenance.end() ? std::string() : it->second;
        };
        out << field("model") << ',' << field("arm") << ',' << format_number(r.ca) << ','
            << format_number(r.rs) << ',' << format_number(r.params.alpha) << ','
            << format_number(r.params.beta) << ',' << format_number(r.rs_alpha_inf) << ','
            << format_number(r.rs_beta_inf);
        for (CaseLabel c : kAllCases) {
            const auto it = r.case_histogram.find(c);
            out << ',' << (it == r.case_histogram.end() ? 0 : it->second);
        }
        out << '\n';
    }
    return out.str();
}

void write_report(const EvaluationReport& report, const std::filesystem::path& path,
                  ReportFormat format) {
    write_reports(std::span<const EvaluationReport>(&report, 1), path, format);
}

void write_reports(std::span<const EvaluationReport> reports, const std::filesystem::path& path,
                   ReportFormat format) {
    for (const EvaluationReport& r : reports) r.validate();
    std::ofstream out(path);
    if (!out) throw DataError("cannot write report file: " + path.string());
    out << (format == ReportFormat::Json ? reports_to_json(reports) : reports_to_csv(reports));
    if (!out) throw DataError("failed while writing report file: " + path.string());
}

namespace {

ordered_json parse_report_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open report file: " + path.string());
    try {
        return ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw DataError("malformed report JSON in " + path.string() + ": " + e.what());
    }
}

}  // namespace

EvaluationReport read_report(const std::filesystem::path& path) {
    const ordered_json j = parse_report_file(path);
    if (!j.is_object()) throw DataError("report file does not hold a single report: " +
                                        path.string());
    try {
        return detail::report_from_json_value(j);
    } catch (const ordered_json::exception& e) {
        throw DataError("invalid report in " + path.string() + ": " + e.what());
    }
}

std::vector<EvaluationReport> read_reports(const std::filesystem::path& path) {
    const ordered_json j = parse_report_file(path);
    std::vector<EvaluationReport> reports;
    try {
        if (j.is_object()) {
            reports.push_back(detail::report_from_json_value(j));
        } else if (j.is_array()) {
            for (const auto& item : j) reports.push_back(detail::report_from_json_value(item));
        } else {
            throw DataError("report file holds neither a report nor a report array: " +
                            path.string());
        }
    } catch (const ordered_json::exception& e) {
        throw DataError("invalid report in " + path.string() + ": " + e.what());
    }
    return reports;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file for digest: " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h = (h ^ static_cast<unsigned char>(buf[i])) * 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

}  // namespace relscore
