#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relscore/distribution.hpp"
#include "relscore/types.hpp"

namespace relscore {

struct DatasetReadOptions {
    char delimiter = ',';
    std::string outcome_column;  // empty: last header column
};

struct LoadedDataset {
    FeatureSchema schema;
    std::vector<Sample> samples;
};

/// Parses a delimited text dataset: one header line, categorical tokens, no
/// quoting. Every ingestion error (missing file, ragged row, empty token,
/// missing outcome column, header-only file) raises DataError naming the
/// offending line/column.
LoadedDataset load_dataset(const std::filesystem::path& path,
                           const DatasetReadOptions& options = {});

/// External classifier outputs for an evaluation split, dense by row index.
class PredictionFile {
public:
    explicit PredictionFile(std::vector<OutcomeLabel> by_index);

    const std::vector<OutcomeLabel>& labels() const noexcept { return by_index_; }
    std::size_t size() const noexcept { return by_index_.size(); }

private:
    std::vector<OutcomeLabel> by_index_;
};

/// Parses a `index,predicted` file (header required, comma-separated).
/// Indices must cover [0, expected_len) exactly once; duplicates, gaps and
/// out-of-range indices are DataErrors.
PredictionFile load_predictions(const std::filesystem::path& path, std::size_t expected_len);

enum class ReportFormat { Json, Csv };

/// Aggregated evaluation of one model: CA/RS at the configured weights, the
/// two limit bounds, the case histogram, run provenance and (optionally)
/// every per-sample evaluation.
struct EvaluationReport {
    double ca = 0.0;
    double rs = 0.0;
    RsParams params;
    double rs_alpha_inf = 0.0;
    double rs_beta_inf = 0.0;
    std::map<CaseLabel, std::int64_t> case_histogram;
    std::map<std::string, std::string> provenance;
    std::optional<std::vector<SampleEvaluation>> per_sample;

    /// Checks the report invariants: aggregates in range, and when samples
    /// are present, histogram counts summing to the sample count and rs
    /// matching the mean sample score to 1e-9.
    void validate() const;
};

/// Canonical JSON serialization (keys: ca, rs, alpha, beta, rs_alpha_inf,
/// rs_beta_inf, cases, provenance, optional samples). Numeric fields
/// round-trip bit-exactly.
std::string report_to_json(const EvaluationReport& report);

/// One JSON document for several reports: a single object for one report, an
/// array otherwise.
std::string reports_to_json(std::span<const EvaluationReport> reports);

/// Flat aggregate projection for spreadsheets, one row per report.
std::string reports_to_csv(std::span<const EvaluationReport> reports);

void write_report(const EvaluationReport& report, const std::filesystem::path& path,
                  ReportFormat format = ReportFormat::Json);
void write_reports(std::span<const EvaluationReport> reports, const std::filesystem::path& path,
                   ReportFormat format);

EvaluationReport read_report(const std::filesystem::path& path);
std::vector<EvaluationReport> read_reports(const std::filesystem::path& path);

/// FNV-1a 64 digest of a file's bytes, as 16 hex characters. Recorded in
/// report provenance.
std::string file_digest(const std::filesystem::path& path);

}  // namespace relscore
