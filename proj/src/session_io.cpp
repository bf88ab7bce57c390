#include "arnav/session_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "arnav/version.hpp"

namespace arnav {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// primitives
// ---------------------------------------------------------------------------

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double round2(double value) {
    if (!std::isfinite(value)) return value;
    return value >= 0.0 ? std::floor(value * 100.0 + 0.5) / 100.0
                        : -std::floor(-value * 100.0 + 0.5) / 100.0;
}

std::string fnv1a64_bytes(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setfill('0') << std::setw(16) << h;
    return out.str();
}

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

bool parse_number(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

bool parse_int(const std::string& s, std::int64_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

std::string fnv1a64_file(const std::filesystem::path& path) {
    return fnv1a64_bytes(slurp(path));
}

// ---------------------------------------------------------------------------
// marker-frame CSV
// ---------------------------------------------------------------------------

namespace {
constexpr const char* kFrameHeader = "frame,time,label,x,y,z";
}

FrameReadResult parse_frames(const std::string& text, bool strict) {
    if (text.empty()) throw ParseError("no frames: file is empty");

    const std::vector<std::string> raw_lines = split(text, '\n');
    std::vector<std::string> lines;
    lines.reserve(raw_lines.size());
    for (auto l : raw_lines) {
        if (!l.empty() && l.back() == '\r') l.pop_back();
        lines.push_back(std::move(l));
    }

    if (lines.empty() || lines[0] != kFrameHeader)
        throw ParseError("line 1: expected header '" + std::string(kFrameHeader) +
                         "'");

    FrameReadResult result;
    Frame* current = nullptr;

    auto reject = [&](int line_no, const std::string& reason) {
        if (strict)
            throw ParseError("line " + std::to_string(line_no) + ": " + reason);
        result.diagnostics.push_back({line_no, reason});
    };

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        const std::string& line = lines[i];
        if (line.empty()) {
            if (i + 1 != lines.size()) reject(line_no, "empty row");
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 6) {
            reject(line_no, "expected 6 comma-separated fields, got " +
                                std::to_string(fields.size()));
            continue;
        }
        std::int64_t frame_id;
        double time_s;
        Point3 p;
        if (!parse_int(fields[0], frame_id)) {
            reject(line_no, "column 1: invalid frame id '" + fields[0] + "'");
            continue;
        }
        if (!parse_number(fields[1], time_s)) {
            reject(line_no, "column 2: invalid time '" + fields[1] + "'");
            continue;
        }
        if (fields[2].empty()) {
            reject(line_no, "column 3: empty label");
            continue;
        }
        if (!parse_number(fields[3], p.x) || !parse_number(fields[4], p.y) ||
            !parse_number(fields[5], p.z)) {
            reject(line_no, "columns 4-6: invalid coordinate");
            continue;
        }

        if (current && frame_id < current->frame_id)
            throw NonMonotonicFrames("line " + std::to_string(line_no) +
                                     ": frame id " + std::to_string(frame_id) +
                                     " goes backwards (previous " +
                                     std::to_string(current->frame_id) + ")");
        if (!current || frame_id != current->frame_id) {
            result.stream.frames.push_back({frame_id, time_s, {}});
            current = &result.stream.frames.back();
        }
        if (current->observations.find(fields[2])) {
            reject(line_no, "duplicate label '" + fields[2] + "' in frame " +
                                std::to_string(frame_id));
            continue;
        }
        current->observations.add(fields[2], p);
    }

    if (result.stream.empty()) throw ParseError("no frames");
    return result;
}

FrameReadResult read_frames(const std::filesystem::path& path, bool strict) {
    return parse_frames(slurp(path), strict);
}

std::string write_frames_string(const MarkerFrameStream& stream) {
    std::string out(kFrameHeader);
    out += '\n';
    for (const auto& frame : stream.frames) {
        for (const auto& obs : frame.observations.entries) {
            out += std::to_string(frame.frame_id);
            out += ',';
            out += format_double(frame.time_s);
            out += ',';
            out += obs.label;
            out += ',';
            out += format_double(obs.point.x);
            out += ',';
            out += format_double(obs.point.y);
            out += ',';
            out += format_double(obs.point.z);
            out += '\n';
        }
    }
    return out;
}

void write_frames(const MarkerFrameStream& stream,
                  const std::filesystem::path& path) {
    spit(path, write_frames_string(stream));
}

// ---------------------------------------------------------------------------
// vertex lists
// ---------------------------------------------------------------------------

std::vector<Point3> parse_vertex_list(const std::string& text) {
    std::vector<Point3> points;
    const auto lines = split(text, '\n');
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line = lines[i];
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);

        std::vector<std::string> tokens;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        Point3 p;
        if (tokens.size() != 3 || !parse_number(tokens[0], p.x) ||
            !parse_number(tokens[1], p.y) || !parse_number(tokens[2], p.z))
            throw ParseError("line " + std::to_string(i + 1) +
                             ": expected 'x y z'");
        points.push_back(p);
    }
    if (points.empty()) throw ParseError("no vertices");
    return points;
}

std::vector<Point3> read_vertex_list(const std::filesystem::path& path) {
    return parse_vertex_list(slurp(path));
}

std::string write_vertex_list_string(const std::vector<Point3>& points) {
    std::string out;
    for (const auto& p : points) {
        out += format_double(p.x);
        out += ' ';
        out += format_double(p.y);
        out += ' ';
        out += format_double(p.z);
        out += '\n';
    }
    return out;
}

LabeledPointSet read_labeled_points(const std::filesystem::path& path) {
    const std::string text = slurp(path);
    const auto lines = split(text, '\n');
    if (lines.empty() || lines[0] != "label,x,y,z")
        throw ParseError("line 1: expected header 'label,x,y,z'");
    LabeledPointSet set;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string line = lines[i];
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        Point3 p;
        if (fields.size() != 4 || fields[0].empty() ||
            !parse_number(fields[1], p.x) || !parse_number(fields[2], p.y) ||
            !parse_number(fields[3], p.z))
            throw ParseError("line " + std::to_string(i + 1) +
                             ": expected 'label,x,y,z'");
        if (set.find(fields[0]))
            throw ValidationError("duplicate label '" + fields[0] + "' in '" +
                                  path.string() + "'");
        set.add(fields[0], p);
    }
    validate_point_set(set, path.string());
    return set;
}

// ---------------------------------------------------------------------------
// JSON helpers
// ---------------------------------------------------------------------------

namespace {

ojson parse_json(const std::string& text, const std::string& what) {
    ojson j = ojson::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(what + ": invalid JSON");
    return j;
}

const ojson& require(const ojson& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
    return *it;
}

double as_number(const ojson& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

std::int64_t as_int(const ojson& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<std::int64_t>();
}

std::string as_string(const ojson& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

Point3 parse_point(const ojson& j, const std::string& path) {
    Point3 p;
    p.x = as_number(require(j, "x", path), path + "/x");
    p.y = as_number(require(j, "y", path), path + "/y");
    p.z = as_number(require(j, "z", path), path + "/z");
    if (!p.finite()) throw SchemaError(path, "coordinates must be finite");
    return p;
}

ojson point_json(const Point3& p) {
    return ojson{{"x", p.x}, {"y", p.y}, {"z", p.z}};
}

RigidTransform parse_transform(const ojson& j, const std::string& path) {
    const ojson& rot = require(j, "rotation", path);
    if (!rot.is_array() || rot.size() != 3)
        throw SchemaError(path + "/rotation", "expected 3 rows of 3 numbers");
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i) {
        const ojson& row = rot[i];
        if (!row.is_array() || row.size() != 3)
            throw SchemaError(path + "/rotation/" + std::to_string(i),
                              "expected 3 numbers");
        for (int k = 0; k < 3; ++k)
            r(i, k) = as_number(row[k], path + "/rotation/" + std::to_string(i) +
                                            "/" + std::to_string(k));
    }
    const Point3 t = parse_point(require(j, "translation", path),
                                 path + "/translation");
    try {
        return RigidTransform::make(r, t.vec());
    } catch (const ValidationError& e) {
        throw SchemaError(path, e.what());
    }
}

ojson transform_json(const RigidTransform& t) {
    ojson rot = ojson::array();
    for (int i = 0; i < 3; ++i)
        rot.push_back(ojson::array({t.rotation()(i, 0), t.rotation()(i, 1),
                                    t.rotation()(i, 2)}));
    return ojson{{"rotation", rot},
                 {"translation", point_json(Point3::of(t.translation()))}};
}

LabeledPointSet parse_labeled_array(const ojson& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    LabeledPointSet set;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string entry_path = path + "/" + std::to_string(i);
        const std::string label =
            as_string(require(j[i], "label", entry_path), entry_path + "/label");
        if (set.find(label))
            throw SchemaError(entry_path + "/label",
                              "duplicate label '" + label + "'");
        set.add(label, parse_point(j[i], entry_path));
    }
    return set;
}

ojson labeled_array_json(const LabeledPointSet& set) {
    ojson arr = ojson::array();
    for (const auto& e : set.entries)
        arr.push_back(ojson{{"label", e.label},
                            {"x", e.point.x},
                            {"y", e.point.y},
                            {"z", e.point.z}});
    return arr;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace

// ---------------------------------------------------------------------------
// scene config
// ---------------------------------------------------------------------------

namespace {

void validate_scene(const SceneConfig& config) {
    if (static_cast<int>(config.probe.markers_ct.size()) < config.min_probe_markers)
        throw SchemaError("/probe/markers",
                          "expected at least " +
                              std::to_string(config.min_probe_markers) +
                              " probe markers, got " +
                              std::to_string(config.probe.markers_ct.size()));
    for (const auto& m : config.probe.markers_ct.entries)
        if (distance(m.point, config.probe.tip_ct) <= 1.0)
            throw SchemaError("/probe/tip", "tip is within 1 mm of marker '" +
                                                m.label + "'");
    if (static_cast<int>(config.phantom.markers_ct.size()) !=
        config.expected_phantom_markers)
        throw SchemaError("/phantom/markers",
                          "expected exactly " +
                              std::to_string(config.expected_phantom_markers) +
                              " phantom markers, got " +
                              std::to_string(config.phantom.markers_ct.size()));
    if (static_cast<int>(config.phantom.fiducials_ct.size()) !=
        config.expected_fiducials)
        throw SchemaError("/phantom/fiducials",
                          "expected exactly " +
                              std::to_string(config.expected_fiducials) +
                              " fiducials, got " +
                              std::to_string(config.phantom.fiducials_ct.size()));
    for (const auto& m : config.phantom.markers_ct.entries)
        if (config.phantom.fiducials_ct.find(m.label))
            throw SchemaError("/phantom/fiducials",
                              "label '" + m.label +
                                  "' is both a marker and a fiducial");
    if (config.marker_noise_sd < 0.0)
        throw SchemaError("/marker_noise_sd", "must be >= 0");
    if (config.tip_window_length < 1)
        throw SchemaError("/tip_window_length", "must be >= 1");
    if (config.surface && !(config.surface->radius > 0.0))
        throw SchemaError("/surface/radius", "must be > 0");
}

std::vector<Annotation> parse_annotation_array(const ojson& j,
                                               const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    std::vector<Annotation> annotations;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string entry_path = path + "/" + std::to_string(i);
        Annotation a;
        a.fiducial_label = as_string(require(j[i], "fiducial", entry_path),
                                     entry_path + "/fiducial");
        a.start_frame =
            as_int(require(j[i], "start_frame", entry_path), entry_path + "/start_frame");
        a.end_frame =
            as_int(require(j[i], "end_frame", entry_path), entry_path + "/end_frame");
        if (a.start_frame > a.end_frame)
            throw SchemaError(entry_path, "start_frame > end_frame");
        for (const auto& prev : annotations)
            if (prev.fiducial_label == a.fiducial_label)
                throw SchemaError(entry_path + "/fiducial",
                                  "duplicate annotation for fiducial '" +
                                      a.fiducial_label + "'");
        annotations.push_back(a);
    }
    return annotations;
}

ojson annotation_array_json(const std::vector<Annotation>& annotations) {
    ojson arr = ojson::array();
    for (const auto& a : annotations)
        arr.push_back(ojson{{"fiducial", a.fiducial_label},
                            {"start_frame", a.start_frame},
                            {"end_frame", a.end_frame}});
    return arr;
}

}  // namespace

SceneConfig read_scene(const std::filesystem::path& path) {
    const ojson j = parse_json(slurp(path), path.string());
    if (!j.is_object()) throw SchemaError("", "scene file must be a JSON object");
    const auto version = as_int(require(j, "schema_version", ""), "/schema_version");
    if (version != kSceneSchemaVersion)
        throw SchemaError("/schema_version",
                          "unsupported version " + std::to_string(version));

    SceneConfig config;
    if (j.contains("min_probe_markers"))
        config.min_probe_markers =
            static_cast<int>(as_int(j["min_probe_markers"], "/min_probe_markers"));
    if (j.contains("expected_phantom_markers"))
        config.expected_phantom_markers = static_cast<int>(
            as_int(j["expected_phantom_markers"], "/expected_phantom_markers"));
    if (j.contains("expected_fiducials"))
        config.expected_fiducials =
            static_cast<int>(as_int(j["expected_fiducials"], "/expected_fiducials"));

    const ojson& probe = require(j, "probe", "");
    config.probe.markers_ct =
        parse_labeled_array(require(probe, "markers", "/probe"), "/probe/markers");
    config.probe.tip_ct =
        parse_point(require(probe, "tip", "/probe"), "/probe/tip");
    if (probe.contains("min_markers"))
        config.probe.min_markers =
            static_cast<int>(as_int(probe["min_markers"], "/probe/min_markers"));

    const ojson& phantom = require(j, "phantom", "");
    config.phantom.markers_ct = parse_labeled_array(
        require(phantom, "markers", "/phantom"), "/phantom/markers");
    config.phantom.fiducials_ct = parse_labeled_array(
        require(phantom, "fiducials", "/phantom"), "/phantom/fiducials");

    config.marker_noise_sd =
        as_number(require(j, "marker_noise_sd", ""), "/marker_noise_sd");
    config.tip_window_length = static_cast<int>(
        as_int(require(j, "tip_window_length", ""), "/tip_window_length"));
    config.hologram_displacement =
        parse_transform(require(j, "hologram_displacement", ""),
                        "/hologram_displacement");
    config.seed = static_cast<std::uint64_t>(as_int(require(j, "seed", ""), "/seed"));

    if (j.contains("surface")) {
        SurfaceSphere s;
        s.center = parse_point(require(j["surface"], "center", "/surface"),
                               "/surface/center");
        s.radius = as_number(require(j["surface"], "radius", "/surface"),
                             "/surface/radius");
        config.surface = s;
    }
    if (j.contains("phantom_lab_pose"))
        config.phantom_lab_pose =
            parse_transform(j["phantom_lab_pose"], "/phantom_lab_pose");
    if (j.contains("tremor_sd_air"))
        config.tremor_sd_air = as_number(j["tremor_sd_air"], "/tremor_sd_air");
    if (j.contains("tremor_sd_contact"))
        config.tremor_sd_contact =
            as_number(j["tremor_sd_contact"], "/tremor_sd_contact");
    if (j.contains("guard_multiplier"))
        config.guard_multiplier =
            as_number(j["guard_multiplier"], "/guard_multiplier");

    validate_scene(config);
    return config;
}

std::string write_scene_string(const SceneConfig& config) {
    ojson j;
    j["schema_version"] = kSceneSchemaVersion;
    j["seed"] = config.seed;
    j["marker_noise_sd"] = config.marker_noise_sd;
    j["tip_window_length"] = config.tip_window_length;
    j["min_probe_markers"] = config.min_probe_markers;
    j["expected_phantom_markers"] = config.expected_phantom_markers;
    j["expected_fiducials"] = config.expected_fiducials;
    j["hologram_displacement"] = transform_json(config.hologram_displacement);
    j["probe"] = ojson{{"markers", labeled_array_json(config.probe.markers_ct)},
                       {"tip", point_json(config.probe.tip_ct)},
                       {"min_markers", config.probe.min_markers}};
    j["phantom"] =
        ojson{{"markers", labeled_array_json(config.phantom.markers_ct)},
              {"fiducials", labeled_array_json(config.phantom.fiducials_ct)}};
    if (config.surface)
        j["surface"] = ojson{{"center", point_json(config.surface->center)},
                             {"radius", config.surface->radius}};
    j["phantom_lab_pose"] = transform_json(config.phantom_lab_pose);
    j["tremor_sd_air"] = config.tremor_sd_air;
    j["tremor_sd_contact"] = config.tremor_sd_contact;
    j["guard_multiplier"] = config.guard_multiplier;
    return dump(j);
}

void write_scene(const SceneConfig& config, const std::filesystem::path& path) {
    spit(path, write_scene_string(config));
}

// ---------------------------------------------------------------------------
// annotations
// ---------------------------------------------------------------------------

std::vector<Annotation> read_annotations(const std::filesystem::path& path) {
    const ojson j = parse_json(slurp(path), path.string());
    return parse_annotation_array(require(j, "annotations", ""), "/annotations");
}

std::optional<std::vector<Annotation>> read_embedded_annotations(
    const std::filesystem::path& scene_path) {
    const ojson j = parse_json(slurp(scene_path), scene_path.string());
    if (!j.is_object() || !j.contains("annotations")) return std::nullopt;
    return parse_annotation_array(j["annotations"], "/annotations");
}

std::string write_annotations_string(const std::vector<Annotation>& annotations) {
    ojson j;
    j["schema_version"] = kSceneSchemaVersion;
    j["annotations"] = annotation_array_json(annotations);
    return dump(j);
}

void write_annotations(const std::vector<Annotation>& annotations,
                       const std::filesystem::path& path) {
    spit(path, write_annotations_string(annotations));
}

// ---------------------------------------------------------------------------
// ground-truth ledger
// ---------------------------------------------------------------------------

GroundTruthLedger read_ledger(const std::filesystem::path& path) {
    const ojson j = parse_json(slurp(path), path.string());
    GroundTruthLedger ledger;
    ledger.kind = experiment_kind_from_string(
        as_string(require(j, "experiment_kind", ""), "/experiment_kind"));
    ledger.seed = static_cast<std::uint64_t>(as_int(require(j, "seed", ""), "/seed"));
    ledger.displacement_mm =
        as_number(require(j, "displacement_mm", ""), "/displacement_mm");
    const ojson& user = require(j, "user_model", "");
    ledger.user_model.bias_mm =
        as_number(require(user, "bias_mm", "/user_model"), "/user_model/bias_mm");
    ledger.user_model.sd_mm =
        as_number(require(user, "sd_mm", "/user_model"), "/user_model/sd_mm");
    const ojson& entries = require(j, "entries", "");
    if (!entries.is_array()) throw SchemaError("/entries", "expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string p = "/entries/" + std::to_string(i);
        LedgerEntry e;
        e.fiducial_label = as_string(require(entries[i], "fiducial", p), p + "/fiducial");
        e.true_fiducial_lab =
            parse_point(require(entries[i], "true_fiducial_lab", p),
                        p + "/true_fiducial_lab");
        e.commanded_tip_lab =
            parse_point(require(entries[i], "commanded_tip_lab", p),
                        p + "/commanded_tip_lab");
        e.start_frame = as_int(require(entries[i], "start_frame", p), p + "/start_frame");
        e.end_frame = as_int(require(entries[i], "end_frame", p), p + "/end_frame");
        ledger.entries.push_back(e);
    }
    return ledger;
}

std::string write_ledger_string(const GroundTruthLedger& ledger) {
    ojson j;
    j["schema_version"] = kSceneSchemaVersion;
    j["experiment_kind"] = to_string(ledger.kind);
    j["seed"] = ledger.seed;
    j["displacement_mm"] = ledger.displacement_mm;
    j["user_model"] = ojson{{"bias_mm", ledger.user_model.bias_mm},
                            {"sd_mm", ledger.user_model.sd_mm}};
    ojson entries = ojson::array();
    for (const auto& e : ledger.entries)
        entries.push_back(ojson{{"fiducial", e.fiducial_label},
                                {"true_fiducial_lab", point_json(e.true_fiducial_lab)},
                                {"commanded_tip_lab", point_json(e.commanded_tip_lab)},
                                {"start_frame", e.start_frame},
                                {"end_frame", e.end_frame}});
    j["entries"] = entries;
    return dump(j);
}

void write_ledger(const GroundTruthLedger& ledger,
                  const std::filesystem::path& path) {
    spit(path, write_ledger_string(ledger));
}

// ---------------------------------------------------------------------------
// drift traces (JSON lines)
// ---------------------------------------------------------------------------

std::vector<PoseEvent> read_drift_trace(const std::filesystem::path& path) {
    const std::string text = slurp(path);
    const auto lines = split(text, '\n');
    std::vector<PoseEvent> events;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::string where = "line " + std::to_string(i + 1);
        ojson j = ojson::parse(lines[i], nullptr, false);
        if (j.is_discarded()) throw ParseError(where + ": invalid JSON");
        PoseEvent e;
        e.time_s = as_number(require(j, "time", where), where + "/time");
        const std::string kind = as_string(require(j, "kind", where), where + "/kind");
        if (kind == "drift_step")
            e.kind = PoseEventKind::drift_step;
        else if (kind == "anchor_detected")
            e.kind = PoseEventKind::anchor_detected;
        else
            throw ParseError(where + ": unknown event kind '" + kind + "'");
        const ojson& rot = require(j, "rotation", where);
        if (!rot.is_array() || rot.size() != 9)
            throw ParseError(where + ": rotation must be 9 numbers (row-major)");
        Eigen::Matrix3d r;
        for (int k = 0; k < 9; ++k)
            r(k / 3, k % 3) = as_number(rot[k], where + "/rotation");
        const ojson& trans = require(j, "translation", where);
        if (!trans.is_array() || trans.size() != 3)
            throw ParseError(where + ": translation must be 3 numbers");
        Eigen::Vector3d t;
        for (int k = 0; k < 3; ++k) t(k) = as_number(trans[k], where + "/translation");
        try {
            e.pose_or_perturbation = RigidTransform::make(r, t);
        } catch (const ValidationError& err) {
            throw ParseError(where + ": " + err.what());
        }
        events.push_back(e);
    }
    return events;
}

std::string write_drift_trace_string(const std::vector<PoseEvent>& events) {
    std::string out;
    for (const auto& e : events) {
        ojson j;
        j["time"] = e.time_s;
        j["kind"] = e.kind == PoseEventKind::drift_step ? "drift_step"
                                                        : "anchor_detected";
        ojson rot = ojson::array();
        for (int k = 0; k < 9; ++k)
            rot.push_back(e.pose_or_perturbation.rotation()(k / 3, k % 3));
        j["rotation"] = rot;
        j["translation"] =
            ojson::array({e.pose_or_perturbation.translation().x(),
                          e.pose_or_perturbation.translation().y(),
                          e.pose_or_perturbation.translation().z()});
        out += j.dump();
        out += '\n';
    }
    return out;
}

void write_drift_trace(const std::vector<PoseEvent>& events,
                       const std::filesystem::path& path) {
    spit(path, write_drift_trace_string(events));
}

// ---------------------------------------------------------------------------
// trial documents
// ---------------------------------------------------------------------------

namespace {

ojson trial_result_json(const TrialResult& t) {
    ojson errors = ojson::array();
    for (double e : t.fiducial_errors) errors.push_back(e);
    return ojson{{"trial_id", t.trial_id},
                 {"experiment_kind", to_string(t.kind)},
                 {"error_mean", t.error_mean},
                 {"error_sd", t.error_sd},
                 {"tip_error", t.tip_error},
                 {"gt_error", t.gt_error},
                 {"n_fiducials", t.n_fiducials},
                 {"fiducial_errors", errors}};
}

TrialResult parse_trial_result(const ojson& j, const std::string& path) {
    TrialResult t;
    t.trial_id = as_string(require(j, "trial_id", path), path + "/trial_id");
    t.kind = experiment_kind_from_string(
        as_string(require(j, "experiment_kind", path), path + "/experiment_kind"));
    t.error_mean = as_number(require(j, "error_mean", path), path + "/error_mean");
    t.error_sd = as_number(require(j, "error_sd", path), path + "/error_sd");
    t.tip_error = as_number(require(j, "tip_error", path), path + "/tip_error");
    t.gt_error = as_number(require(j, "gt_error", path), path + "/gt_error");
    t.n_fiducials = static_cast<int>(
        as_int(require(j, "n_fiducials", path), path + "/n_fiducials"));
    if (j.contains("fiducial_errors")) {
        const ojson& errors = j["fiducial_errors"];
        if (!errors.is_array())
            throw SchemaError(path + "/fiducial_errors", "expected an array");
        for (const auto& e : errors)
            t.fiducial_errors.push_back(as_number(e, path + "/fiducial_errors"));
    }
    return t;
}

}  // namespace

std::string write_trial_string(const TrialDocument& doc) {
    ojson j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kVersion;
    j["trial"] = trial_result_json(doc.result);
    ojson measurements = ojson::array();
    for (const auto& m : doc.measurements)
        measurements.push_back(ojson{{"fiducial", m.fiducial_label},
                                     {"tip_mean_lab", point_json(m.tip_mean_lab)},
                                     {"tip_sd", m.tip_sd},
                                     {"target_error", m.target_error},
                                     {"n_observations", m.n_observations},
                                     {"single_observation", m.single_observation}});
    j["measurements"] = measurements;
    j["probe_fre_mean"] = doc.probe_fre_mean;
    j["gt_fre_mean"] = doc.gt_fre_mean;
    ojson inputs = ojson::array();
    for (const auto& [path, digest] : doc.input_digests)
        inputs.push_back(ojson{{"path", path}, {"digest_fnv1a64", digest}});
    j["inputs"] = inputs;
    return dump(j);
}

void write_trial(const TrialDocument& doc, const std::filesystem::path& path) {
    spit(path, write_trial_string(doc));
}

TrialDocument read_trial(const std::filesystem::path& path) {
    const ojson j = parse_json(slurp(path), path.string());
    TrialDocument doc;
    doc.result = parse_trial_result(require(j, "trial", ""), "/trial");
    if (j.contains("measurements")) {
        const ojson& ms = j["measurements"];
        if (!ms.is_array()) throw SchemaError("/measurements", "expected an array");
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const std::string p = "/measurements/" + std::to_string(i);
            FiducialMeasurement m;
            m.fiducial_label = as_string(require(ms[i], "fiducial", p), p + "/fiducial");
            m.tip_mean_lab =
                parse_point(require(ms[i], "tip_mean_lab", p), p + "/tip_mean_lab");
            m.tip_sd = as_number(require(ms[i], "tip_sd", p), p + "/tip_sd");
            m.target_error =
                as_number(require(ms[i], "target_error", p), p + "/target_error");
            m.n_observations = static_cast<int>(
                as_int(require(ms[i], "n_observations", p), p + "/n_observations"));
            doc.measurements.push_back(m);
        }
    }
    if (j.contains("probe_fre_mean"))
        doc.probe_fre_mean = as_number(j["probe_fre_mean"], "/probe_fre_mean");
    if (j.contains("gt_fre_mean"))
        doc.gt_fre_mean = as_number(j["gt_fre_mean"], "/gt_fre_mean");
    if (j.contains("inputs"))
        for (const auto& in : j["inputs"])
            doc.input_digests.emplace_back(as_string(require(in, "path", "/inputs"),
                                                     "/inputs/path"),
                                           as_string(require(in, "digest_fnv1a64",
                                                             "/inputs"),
                                                     "/inputs/digest_fnv1a64"));
    return doc;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

namespace {

ojson stability_json(const StabilityReport& report) {
    ojson per_marker = ojson::array();
    for (const auto& m : report.per_marker)
        per_marker.push_back(ojson{{"label", m.label},
                                   {"sd_x", m.per_axis_sd.x},
                                   {"sd_y", m.per_axis_sd.y},
                                   {"sd_z", m.per_axis_sd.z},
                                   {"rms_sd", m.rms_sd},
                                   {"n_frames", m.n_frames}});
    ojson pairwise = ojson::array();
    for (const auto& p : report.pairwise)
        pairwise.push_back(ojson{{"a", p.label_a},
                                 {"b", p.label_b},
                                 {"mean", p.mean},
                                 {"sd", p.sd},
                                 {"variance", p.variance},
                                 {"n_frames", p.n_frames}});
    return ojson{{"n_frames", report.n_frames},
                 {"per_marker", per_marker},
                 {"pairwise", pairwise},
                 {"max_pairwise_sd", report.max_pairwise_sd},
                 {"max_pairwise_variance", report.max_pairwise_variance}};
}

StabilityReport parse_stability(const ojson& j, const std::string& path) {
    StabilityReport report;
    report.n_frames =
        static_cast<int>(as_int(require(j, "n_frames", path), path + "/n_frames"));
    for (const auto& m : require(j, "per_marker", path)) {
        MarkerStability ms;
        ms.label = as_string(require(m, "label", path), path + "/per_marker/label");
        ms.per_axis_sd = Point3(as_number(require(m, "sd_x", path), path),
                                as_number(require(m, "sd_y", path), path),
                                as_number(require(m, "sd_z", path), path));
        ms.rms_sd = as_number(require(m, "rms_sd", path), path);
        ms.n_frames = static_cast<int>(as_int(require(m, "n_frames", path), path));
        report.per_marker.push_back(ms);
    }
    for (const auto& p : require(j, "pairwise", path)) {
        PairDistanceStats ps;
        ps.label_a = as_string(require(p, "a", path), path);
        ps.label_b = as_string(require(p, "b", path), path);
        ps.mean = as_number(require(p, "mean", path), path);
        ps.sd = as_number(require(p, "sd", path), path);
        ps.variance = as_number(require(p, "variance", path), path);
        ps.n_frames = static_cast<int>(as_int(require(p, "n_frames", path), path));
        report.pairwise.push_back(ps);
    }
    report.max_pairwise_sd =
        as_number(require(j, "max_pairwise_sd", path), path + "/max_pairwise_sd");
    report.max_pairwise_variance = as_number(
        require(j, "max_pairwise_variance", path), path + "/max_pairwise_variance");
    return report;
}

}  // namespace

StabilityReport read_stability(const std::filesystem::path& path) {
    const ojson j = parse_json(slurp(path), path.string());
    return parse_stability(j, "");
}

std::string write_stability_string(const StabilityReport& report) {
    ojson j;
    j["schema_version"] = kReportSchemaVersion;
    for (auto& [key, value] : stability_json(report).items()) j[key] = value;
    return dump(j);
}

namespace {

ojson experiment_json(const ExperimentSummary& s) {
    ojson trials = ojson::array();
    for (const auto& t : s.trials) trials.push_back(trial_result_json(t));
    return ojson{{"experiment_kind", to_string(s.kind)},
                 {"trials", trials},
                 {"averages", ojson{{"error", s.averages.error},
                                    {"sd", s.averages.sd_pooled},
                                    {"sd_arithmetic", s.averages.sd_arithmetic},
                                    {"tip_error", s.averages.tip_error},
                                    {"gt_error", s.averages.gt_error}}},
                 {"pooled", ojson{{"mean", s.pooled.mean},
                                  {"sd", s.pooled.sd},
                                  {"n", s.pooled.n},
                                  {"from_raw", s.pooled_from_raw}}}};
}

ExperimentSummary parse_experiment(const ojson& j, const std::string& path) {
    ExperimentSummary s;
    s.kind = experiment_kind_from_string(as_string(
        require(j, "experiment_kind", path), path + "/experiment_kind"));
    for (const auto& t : require(j, "trials", path))
        s.trials.push_back(parse_trial_result(t, path + "/trials"));
    const ojson& avg = require(j, "averages", path);
    s.averages.error = as_number(require(avg, "error", path), path);
    s.averages.sd_pooled = as_number(require(avg, "sd", path), path);
    s.averages.sd_arithmetic = as_number(require(avg, "sd_arithmetic", path), path);
    s.averages.tip_error = as_number(require(avg, "tip_error", path), path);
    s.averages.gt_error = as_number(require(avg, "gt_error", path), path);
    const ojson& pooled = require(j, "pooled", path);
    s.pooled.mean = as_number(require(pooled, "mean", path), path);
    s.pooled.sd = as_number(require(pooled, "sd", path), path);
    s.pooled.n = static_cast<int>(as_int(require(pooled, "n", path), path));
    s.pooled_from_raw = require(pooled, "from_raw", path).get<bool>();
    return s;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", round2(v));
    return buf;
}

void table_row(std::ostringstream& out, const std::string& experiment,
               const std::string& trial, double error, double sd, double tip,
               double gt) {
    out << std::left << std::setw(22) << experiment << std::setw(9) << trial
        << std::right << std::setw(10) << fixed2(error) << std::setw(8)
        << fixed2(sd) << std::setw(15) << fixed2(tip) << std::setw(13)
        << fixed2(gt) << "\n";
}

}  // namespace

std::string emit_report(const ReportDocument& report, ReportFormat format) {
    if (format == ReportFormat::json) {
        ojson j;
        j["schema_version"] = kReportSchemaVersion;
        j["tool_version"] = report.tool_version;
        ojson inputs = ojson::array();
        for (const auto& in : report.inputs)
            inputs.push_back(ojson{{"path", in.path}, {"digest_fnv1a64", in.fnv1a64}});
        j["inputs"] = inputs;
        ojson experiments = ojson::array();
        for (const auto& e : report.experiments) experiments.push_back(experiment_json(e));
        j["experiments"] = experiments;
        j["stability"] = report.stability ? stability_json(*report.stability)
                                          : ojson(nullptr);
        ojson stats = ojson::array();
        for (const auto& s : report.statistics)
            stats.push_back(ojson{{"comparison", s.comparison},
                                  {"z", s.result.z},
                                  {"p_two_sided", s.result.p_two_sided},
                                  {"se1", s.result.se1},
                                  {"se2", s.result.se2},
                                  {"mean_diff", s.result.mean_diff}});
        j["statistics"] = stats;
        return dump(j);
    }

    std::ostringstream out;
    out << std::left << std::setw(22) << "experiment" << std::setw(9) << "trial"
        << std::right << std::setw(10) << "error(mm)" << std::setw(8) << "SD(mm)"
        << std::setw(15) << "tip error(mm)" << std::setw(13) << "gt error(mm)"
        << "\n";
    for (const auto& e : report.experiments) {
        bool first = true;
        for (const auto& t : e.trials) {
            table_row(out, first ? to_string(e.kind) : "", t.trial_id, t.error_mean,
                      t.error_sd, t.tip_error, t.gt_error);
            first = false;
        }
        table_row(out, first ? to_string(e.kind) : "", "average", e.averages.error,
                  e.averages.sd_pooled, e.averages.tip_error, e.averages.gt_error);
    }
    if (report.stability) {
        out << "\nstability: " << report.stability->n_frames << " frames, "
            << report.stability->per_marker.size()
            << " markers, max pairwise distance SD "
            << fixed2(report.stability->max_pairwise_sd) << " mm (variance "
            << fixed2(report.stability->max_pairwise_variance) << " mm^2)\n";
    }
    if (!report.statistics.empty()) {
        out << "\nstatistics:\n";
        for (const auto& s : report.statistics) {
            out << "  " << s.comparison << ": z = " << fixed2(s.result.z) << ", p";
            if (s.result.p_two_sided < 0.0001)
                out << " < 0.0001";
            else
                out << " = " << fixed2(s.result.p_two_sided);
            out << "\n";
        }
    }
    return out.str();
}

ReportDocument read_report(const std::filesystem::path& path) {
    const ojson j = parse_json(slurp(path), path.string());
    ReportDocument report;
    report.tool_version =
        as_string(require(j, "tool_version", ""), "/tool_version");
    if (j.contains("inputs"))
        for (const auto& in : j["inputs"])
            report.inputs.push_back(
                {as_string(require(in, "path", "/inputs"), "/inputs/path"),
                 as_string(require(in, "digest_fnv1a64", "/inputs"),
                           "/inputs/digest_fnv1a64")});
    for (const auto& e : require(j, "experiments", ""))
        report.experiments.push_back(parse_experiment(e, "/experiments"));
    if (j.contains("stability") && !j["stability"].is_null())
        report.stability = parse_stability(j["stability"], "/stability");
    if (j.contains("statistics"))
        for (const auto& s : j["statistics"]) {
            NamedZTest z;
            z.comparison = as_string(require(s, "comparison", "/statistics"),
                                     "/statistics/comparison");
            z.result.z = as_number(require(s, "z", "/statistics"), "/statistics/z");
            z.result.p_two_sided = as_number(require(s, "p_two_sided", "/statistics"),
                                             "/statistics/p_two_sided");
            z.result.se1 = as_number(require(s, "se1", "/statistics"), "/statistics");
            z.result.se2 = as_number(require(s, "se2", "/statistics"), "/statistics");
            z.result.mean_diff =
                as_number(require(s, "mean_diff", "/statistics"), "/statistics");
            report.statistics.push_back(z);
        }
    return report;
}

}  // namespace arnav
