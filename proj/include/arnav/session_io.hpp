#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "arnav/assessment.hpp"
#include "arnav/drift.hpp"
#include "arnav/frames.hpp"
#include "arnav/stability.hpp"
#include "arnav/synthetic.hpp"
#include "arnav/ztest.hpp"

namespace arnav {

/// Shortest round-trip decimal form of a double (std::to_chars), the one
/// representation used in every emitted file so outputs are byte-stable.
std::string format_double(double value);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits. Traceability,
/// not cryptography.
std::string fnv1a64_file(const std::filesystem::path& path);
std::string fnv1a64_bytes(const std::string& bytes);

struct Diagnostic {
    int line = 0;
    std::string reason;
};

struct FrameReadResult {
    MarkerFrameStream stream;
    std::vector<Diagnostic> diagnostics;  // malformed rows (lenient mode)
};

/// Marker-frame CSV: header `frame,time,label,x,y,z`, one observation per
/// row, mm, LF line endings. Lenient mode collects malformed rows as
/// diagnostics; strict mode throws ParseError at the first one. Frame ids
/// must not decrease (NonMonotonicFrames).
FrameReadResult read_frames(const std::filesystem::path& path, bool strict = false);
FrameReadResult parse_frames(const std::string& text, bool strict = false);
std::string write_frames_string(const MarkerFrameStream& stream);
void write_frames(const MarkerFrameStream& stream, const std::filesystem::path& path);

/// Vertex list for sphere fitting: one `x y z` per line, `#` comments.
std::vector<Point3> read_vertex_list(const std::filesystem::path& path);
std::vector<Point3> parse_vertex_list(const std::string& text);
std::string write_vertex_list_string(const std::vector<Point3>& points);

/// Labeled points CSV: header `label,x,y,z` (registration inputs).
LabeledPointSet read_labeled_points(const std::filesystem::path& path);

/// Scene config JSON. Validates every model invariant on load and reports
/// violations as SchemaError with a JSON-pointer style path.
SceneConfig read_scene(const std::filesystem::path& path);
std::string write_scene_string(const SceneConfig& config);
void write_scene(const SceneConfig& config, const std::filesystem::path& path);

/// Annotations: either embedded in the scene file under "annotations" or in
/// a sibling JSON file of the same shape.
std::vector<Annotation> read_annotations(const std::filesystem::path& path);
std::optional<std::vector<Annotation>> read_embedded_annotations(
    const std::filesystem::path& scene_path);
std::string write_annotations_string(const std::vector<Annotation>& annotations);
void write_annotations(const std::vector<Annotation>& annotations,
                       const std::filesystem::path& path);

GroundTruthLedger read_ledger(const std::filesystem::path& path);
std::string write_ledger_string(const GroundTruthLedger& ledger);
void write_ledger(const GroundTruthLedger& ledger, const std::filesystem::path& path);

StabilityReport read_stability(const std::filesystem::path& path);
std::string write_stability_string(const StabilityReport& report);

/// Drift trace: JSON lines, one PoseEvent per line
/// (time, kind, rotation row-major, translation).
std::vector<PoseEvent> read_drift_trace(const std::filesystem::path& path);
std::string write_drift_trace_string(const std::vector<PoseEvent>& events);
void write_drift_trace(const std::vector<PoseEvent>& events,
                       const std::filesystem::path& path);

/// Assessed-trial document (the `assess` subcommand's output and the
/// `report` subcommand's input).
struct TrialDocument {
    TrialResult result;
    std::vector<FiducialMeasurement> measurements;
    double probe_fre_mean = 0.0;  // probe registration FRE averaged over frames
    double gt_fre_mean = 0.0;     // phantom registration FRE averaged over frames
    std::vector<std::pair<std::string, std::string>> input_digests;  // path, fnv1a64
};

TrialDocument read_trial(const std::filesystem::path& path);
std::string write_trial_string(const TrialDocument& doc);
void write_trial(const TrialDocument& doc, const std::filesystem::path& path);

/// Report assembly (Table-2 shape plus stability and the Z-tests).
struct InputDigest {
    std::string path;
    std::string fnv1a64;
};

struct NamedZTest {
    std::string comparison;  // e.g. "physical_feedback vs holographic_feedback"
    ZTestResult result;
};

struct ReportDocument {
    std::string tool_version;
    std::vector<InputDigest> inputs;
    std::vector<ExperimentSummary> experiments;
    std::optional<StabilityReport> stability;
    std::vector<NamedZTest> statistics;
};

enum class ReportFormat { json, table };

/// json: schema-versioned, stable key order, byte-deterministic.
/// table: the printed-table layout with half-up 2-decimal rounding.
std::string emit_report(const ReportDocument& report, ReportFormat format);
ReportDocument read_report(const std::filesystem::path& path);

/// Half-up rounding to 2 decimals, applied only at serialization time.
double round2(double value);

}  // namespace arnav
