// arnav — command-line front end. Subcommands read files and flags only;
// outputs are byte-deterministic for fixed inputs and seeds.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arnav/drift.hpp"
#include "arnav/log.hpp"
#include "arnav/pipeline.hpp"
#include "arnav/registration.hpp"
#include "arnav/session_io.hpp"
#include "arnav/sphere_fit.hpp"
#include "arnav/stability.hpp"
#include "arnav/synthetic.hpp"
#include "arnav/version.hpp"
#include "arnav/ztest.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace arnav;

namespace {

// True hologram-to-anchor relation used by drift-sim when no binding is
// supplied: an arbitrary fixed transform (30 deg about x+y, offset tray).
RigidTransform canonical_hologram_in_anchor() {
    const Eigen::Vector3d axis = Eigen::Vector3d(1.0, 1.0, 0.0).normalized();
    return RigidTransform::from_approximate(
        Eigen::AngleAxisd(30.0 * 3.14159265358979323846 / 180.0, axis)
            .toRotationMatrix(),
        Eigen::Vector3d(120.0, -40.0, 260.0));
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << content;
}

ordered_json point_json(const Point3& p) {
    return ordered_json{{"x", p.x}, {"y", p.y}, {"z", p.z}};
}

ordered_json digests_json(const std::vector<std::string>& paths) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : paths)
        arr.push_back(ordered_json{{"path", p}, {"digest_fnv1a64", fnv1a64_file(p)}});
    return arr;
}

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int run_fit_sphere(const std::string& points_path, bool algebraic_only,
                   const std::string& out_path) {
    const std::vector<Point3> points = read_vertex_list(points_path);
    const SphereFit fit =
        algebraic_only ? fit_sphere_algebraic(points) : fit_sphere(points);
    ordered_json j;
    j["center"] = point_json(fit.center);
    j["radius"] = fit.radius;
    j["rms_residual"] = fit.rms_residual;
    j["n_points"] = fit.n_points;
    j["method"] = algebraic_only ? "algebraic" : "algebraic+geometric";
    j["inputs"] = digests_json({points_path});
    emit(j.dump(2) + "\n", out_path);
    return 0;
}

int run_register(const std::string& source_path, const std::string& target_path,
                 const std::string& out_path) {
    const LabeledPointSet source = read_labeled_points(source_path);
    const LabeledPointSet target = read_labeled_points(target_path);
    const RegistrationResult result = solve_rigid(source, target);

    ordered_json j;
    ordered_json rot = ordered_json::array();
    for (int i = 0; i < 3; ++i)
        rot.push_back(ordered_json::array({result.transform.rotation()(i, 0),
                                           result.transform.rotation()(i, 1),
                                           result.transform.rotation()(i, 2)}));
    j["rotation"] = rot;
    j["translation"] = point_json(Point3::of(result.transform.translation()));
    j["fre_mean"] = result.fre_mean;
    j["fre_rms"] = result.fre_rms;
    ordered_json residuals = ordered_json::array();
    for (const auto& [label, mm] : result.per_point_residuals)
        residuals.push_back(ordered_json{{"label", label}, {"mm", mm}});
    j["per_point_residuals"] = residuals;
    j["unmatched_source"] = result.unmatched_source;
    j["unmatched_target"] = result.unmatched_target;
    j["inputs"] = digests_json({source_path, target_path});
    emit(j.dump(2) + "\n", out_path);
    return 0;
}

int run_stability(const std::string& frames_path, const std::string& labels,
                  const std::string& body, bool strict,
                  const std::string& out_path) {
    const FrameReadResult read = read_frames(frames_path, strict);
    for (const auto& d : read.diagnostics)
        log_warn(frames_path + ":" + std::to_string(d.line) + ": " + d.reason);
    const StabilityReport report = analyze_stability(
        read.stream, split_csv_list(labels), split_csv_list(body));
    emit(write_stability_string(report), out_path);
    return 0;
}

int run_ztest(const std::vector<double>& scalars, const std::string& file_a,
              const std::string& file_b, const std::string& out_path) {
    double mean1, sd1, mean2, sd2;
    int n1, n2;
    std::string source;
    if (!file_a.empty() || !file_b.empty()) {
        if (file_a.empty() || file_b.empty())
            throw ValidationError("ztest: --file-a and --file-b go together");
        auto pooled_of = [](const std::string& path) {
            const ReportDocument doc = read_report(path);
            if (doc.experiments.size() != 1)
                throw ValidationError("ztest: '" + path + "' must contain exactly " +
                                      "one experiment, found " +
                                      std::to_string(doc.experiments.size()));
            return doc.experiments.front().pooled;
        };
        const PooledStats a = pooled_of(file_a);
        const PooledStats b = pooled_of(file_b);
        mean1 = a.mean, sd1 = a.sd, n1 = a.n;
        mean2 = b.mean, sd2 = b.sd, n2 = b.n;
        source = "experiment reports";
    } else {
        if (scalars.size() != 6)
            throw ValidationError(
                "ztest: expected 'mean1 sd1 n1 mean2 sd2 n2' or --file-a/--file-b");
        mean1 = scalars[0], sd1 = scalars[1], n1 = static_cast<int>(scalars[2]);
        mean2 = scalars[3], sd2 = scalars[4], n2 = static_cast<int>(scalars[5]);
        source = "scalars";
    }
    const ZTestResult r = z_test(mean1, sd1, n1, mean2, sd2, n2);
    ordered_json j;
    j["z"] = r.z;
    j["p_two_sided"] = r.p_two_sided;
    j["se1"] = r.se1;
    j["se2"] = r.se2;
    j["mean_diff"] = r.mean_diff;
    j["source"] = source;
    if (!file_a.empty()) j["inputs"] = digests_json({file_a, file_b});
    emit(j.dump(2) + "\n", out_path);
    return 0;
}

int run_drift_sim(const std::string& trace_path, int steps, double step_mm,
                  double step_deg, int detect_every, double anchor_noise_mm,
                  double anchor_noise_deg, std::uint64_t seed,
                  const std::string& write_trace, const std::string& out_path) {
    std::vector<PoseEvent> events;
    std::vector<std::string> inputs;
    if (!trace_path.empty()) {
        events = read_drift_trace(trace_path);
        inputs.push_back(trace_path);
    } else {
        events = generate_drift_trace(seed, steps, step_mm, step_deg, detect_every,
                                      anchor_noise_mm, anchor_noise_deg);
    }
    if (!write_trace.empty()) write_drift_trace(events, write_trace);

    const RigidTransform truth = canonical_hologram_in_anchor();
    const AnchorBinding binding{truth};  // registration assumed exact
    const std::vector<DriftSample> samples = run_drift_trace(events, binding, truth);

    ordered_json j;
    ordered_json arr = ordered_json::array();
    double max_translation = 0.0, max_rotation = 0.0, max_at_detection = 0.0;
    int detections = 0;
    for (const auto& s : samples) {
        arr.push_back(ordered_json{
            {"time", s.time_s},
            {"kind", s.kind == PoseEventKind::drift_step ? "drift_step"
                                                         : "anchor_detected"},
            {"translation_mm", s.translation_mm},
            {"rotation_deg", s.rotation_deg}});
        max_translation = std::max(max_translation, s.translation_mm);
        max_rotation = std::max(max_rotation, s.rotation_deg);
        if (s.kind == PoseEventKind::anchor_detected) {
            ++detections;
            max_at_detection = std::max(max_at_detection, s.translation_mm);
        }
    }
    j["samples"] = arr;
    j["max_translation_mm"] = max_translation;
    j["max_rotation_deg"] = max_rotation;
    j["detections"] = detections;
    j["max_translation_at_detection_mm"] = max_at_detection;
    if (!inputs.empty()) j["inputs"] = digests_json(inputs);
    emit(j.dump(2) + "\n", out_path);
    return 0;
}

int run_simulate(const std::string& out_dir, const std::string& scene_path,
                 std::optional<std::uint64_t> seed, const std::string& kind_name,
                 double user_sd, double user_bias, const std::string& displace) {
    SceneConfig config =
        scene_path.empty() ? default_scene(seed.value_or(1)) : read_scene(scene_path);
    if (seed) config.seed = *seed;
    if (!displace.empty()) {
        const auto parts = split_csv_list(displace);
        if (parts.size() != 3)
            throw ValidationError("--displace expects 'dx,dy,dz' in mm");
        config.hologram_displacement = RigidTransform::make(
            Eigen::Matrix3d::Identity(),
            Eigen::Vector3d(std::stod(parts[0]), std::stod(parts[1]),
                            std::stod(parts[2])));
    }

    const ExperimentKind kind = experiment_kind_from_string(kind_name);
    UserErrorModel user;
    user.sd_mm = user_sd;
    user.bias_mm = user_bias;

    const SessionData session = generate_session(config, kind, user);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_scene(config, dir / "scene.json");
    write_frames(session.frames, dir / "frames.csv");
    write_annotations(session.annotations, dir / "annotations.json");
    write_ledger(session.ledger, dir / "ledger.json");

    ordered_json j;
    j["out_dir"] = out_dir;
    j["experiment_kind"] = to_string(kind);
    j["seed"] = config.seed;
    j["frames"] = session.frames.size();
    j["files"] = ordered_json::array(
        {"scene.json", "frames.csv", "annotations.json", "ledger.json"});
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_assess(const std::string& scene_path, const std::string& frames_path,
               const std::string& annotations_path, const std::string& kind_name,
               const std::string& trial_id, const std::string& tip_aggregate,
               bool strict, const std::string& out_path) {
    const SceneConfig scene = read_scene(scene_path);
    const FrameReadResult read = read_frames(frames_path, strict);
    for (const auto& d : read.diagnostics)
        log_warn(frames_path + ":" + std::to_string(d.line) + ": " + d.reason);

    std::vector<Annotation> annotations;
    std::vector<std::string> inputs{scene_path, frames_path};
    if (!annotations_path.empty()) {
        annotations = read_annotations(annotations_path);
        inputs.push_back(annotations_path);
    } else {
        auto embedded = read_embedded_annotations(scene_path);
        if (!embedded)
            throw ValidationError(
                "no --annotations file and none embedded in the scene");
        annotations = *embedded;
    }

    AssessOptions options;
    if (tip_aggregate == "mean")
        options.tip_aggregate = TipErrorAggregate::mean;
    else if (tip_aggregate != "max")
        throw ValidationError("--tip-aggregate must be 'max' or 'mean'");

    TrialDocument doc =
        assess_session(scene, read.stream, annotations,
                       experiment_kind_from_string(kind_name), trial_id, options);
    for (const auto& p : inputs) doc.input_digests.emplace_back(p, fnv1a64_file(p));
    emit(write_trial_string(doc), out_path);
    return 0;
}

int run_report(const std::vector<std::string>& trial_paths,
               const std::string& stability_path, const std::string& format_name,
               const std::string& out_path) {
    ReportDocument report;
    report.tool_version = kVersion;

    std::map<ExperimentKind, std::vector<TrialResult>> by_kind;
    for (const auto& path : trial_paths) {
        const TrialDocument doc = read_trial(path);
        by_kind[doc.result.kind].push_back(doc.result);
        report.inputs.push_back({path, fnv1a64_file(path)});
    }
    for (auto& [kind, trials] : by_kind)
        report.experiments.push_back(summarize_experiment(trials));

    if (!stability_path.empty()) {
        report.stability = read_stability(stability_path);
        report.inputs.push_back({stability_path, fnv1a64_file(stability_path)});
    }

    auto find_kind = [&](ExperimentKind k) -> const ExperimentSummary* {
        for (const auto& e : report.experiments)
            if (e.kind == k) return &e;
        return nullptr;
    };
    auto compare = [&](ExperimentKind a, ExperimentKind b) {
        const ExperimentSummary* ea = find_kind(a);
        const ExperimentSummary* eb = find_kind(b);
        if (!ea || !eb) return;
        NamedZTest named;
        named.comparison = to_string(a) + " vs " + to_string(b);
        named.result = z_test(ea->pooled.mean, ea->pooled.sd, ea->pooled.n,
                              eb->pooled.mean, eb->pooled.sd, eb->pooled.n);
        report.statistics.push_back(named);
    };
    compare(ExperimentKind::physical_feedback, ExperimentKind::holographic_feedback);
    compare(ExperimentKind::holographic_feedback, ExperimentKind::no_feedback);

    const ReportFormat format =
        format_name == "table" ? ReportFormat::table : ReportFormat::json;
    if (format_name != "table" && format_name != "json")
        throw ValidationError("--format must be 'json' or 'table'");
    emit(emit_report(report, format), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arnav " + std::string(kVersion) +
                 " — assessment toolkit for AR-assisted neuronavigation"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // fit-sphere
    auto* fit = app.add_subcommand(
        "fit-sphere", "Fit a sphere to CT surface vertices (x y z lines)");
    std::string fit_points, fit_out;
    bool fit_algebraic = false;
    fit->add_option("points", fit_points, "vertex list file")->required();
    fit->add_flag("--algebraic-only", fit_algebraic,
                  "skip the geometric refinement");
    fit->add_option("-o,--out", fit_out, "output JSON path (default stdout)");

    // register
    auto* reg = app.add_subcommand(
        "register", "Solve the labeled rigid registration between two point sets");
    std::string reg_source, reg_target, reg_out;
    reg->add_option("--source", reg_source, "source points (label,x,y,z CSV)")
        ->required();
    reg->add_option("--target", reg_target, "target points (label,x,y,z CSV)")
        ->required();
    reg->add_option("-o,--out", reg_out, "output JSON path");

    // stability
    auto* stab = app.add_subcommand(
        "stability", "Static-marker SD and rigid-body distance spread");
    std::string stab_frames, stab_labels, stab_body, stab_out;
    bool stab_strict = false;
    stab->add_option("--frames", stab_frames, "marker-frame CSV")->required();
    stab->add_option("--labels", stab_labels,
                     "comma-separated marker labels (default: all)");
    stab->add_option("--body", stab_body,
                     "comma-separated labels of one rigid body");
    stab->add_flag("--strict", stab_strict, "fail on any malformed row");
    stab->add_option("-o,--out", stab_out, "output JSON path");

    // ztest
    auto* zt = app.add_subcommand(
        "ztest", "Two-sample Z-test: six scalars or two experiment reports");
    std::vector<double> zt_scalars;
    std::string zt_file_a, zt_file_b, zt_out;
    zt->add_option("values", zt_scalars, "mean1 sd1 n1 mean2 sd2 n2")
        ->expected(0, 6);
    zt->add_option("--file-a", zt_file_a, "report with exactly one experiment");
    zt->add_option("--file-b", zt_file_b, "report with exactly one experiment");
    zt->add_option("-o,--out", zt_out, "output JSON path");

    // drift-sim
    auto* drift = app.add_subcommand(
        "drift-sim", "Replay or generate an anchor-relocalization drift trace");
    std::string drift_trace, drift_write, drift_out;
    int drift_steps = 1000, drift_detect = 50;
    double drift_step_mm = 0.2, drift_step_deg = 0.05;
    double drift_anchor_mm = 0.0, drift_anchor_deg = 0.0;
    std::uint64_t drift_seed = 1;
    drift->add_option("--trace", drift_trace, "existing trace (JSON lines)");
    drift->add_option("--steps", drift_steps, "number of drift steps");
    drift->add_option("--step-mm", drift_step_mm, "translation per drift step");
    drift->add_option("--step-deg", drift_step_deg, "rotation per drift step");
    drift->add_option("--detect-every", drift_detect,
                      "anchor detection every k steps");
    drift->add_option("--anchor-noise-mm", drift_anchor_mm,
                      "translation noise on anchor observations");
    drift->add_option("--anchor-noise-deg", drift_anchor_deg,
                      "rotation noise on anchor observations");
    drift->add_option("--seed", drift_seed, "generator seed");
    drift->add_option("--write-trace", drift_write, "also write the trace here");
    drift->add_option("-o,--out", drift_out, "output JSON path");

    // simulate
    auto* sim = app.add_subcommand(
        "simulate", "Generate a synthetic session with a ground-truth ledger");
    std::string sim_dir, sim_scene, sim_kind = "holographic_feedback", sim_displace;
    std::optional<std::uint64_t> sim_seed;
    double sim_user_sd = 3.0, sim_user_bias = 0.0;
    sim->add_option("--out-dir", sim_dir, "directory for the session files")
        ->required();
    sim->add_option("--scene", sim_scene,
                    "scene config to use (default: built-in scene)");
    sim->add_option("--seed", sim_seed, "seed override");
    sim->add_option("--kind", sim_kind,
                    "no_feedback|holographic_feedback|physical_feedback");
    sim->add_option("--user-sd", sim_user_sd, "user depth-error SD, mm");
    sim->add_option("--user-bias", sim_user_bias,
                    "user bias along the view direction, mm");
    sim->add_option("--displace", sim_displace,
                    "hologram displacement 'dx,dy,dz' in mm");

    // assess
    auto* assess = app.add_subcommand(
        "assess", "Run the measurement pipeline on one session (one trial)");
    std::string as_scene, as_frames, as_annotations, as_kind, as_trial = "1";
    std::string as_aggregate = "max", as_out;
    bool as_strict = false;
    assess->add_option("--scene", as_scene, "scene config JSON")->required();
    assess->add_option("--frames", as_frames, "marker-frame CSV")->required();
    assess->add_option("--annotations", as_annotations,
                       "annotation JSON (default: embedded in scene)");
    assess->add_option("--kind", as_kind,
                       "no_feedback|holographic_feedback|physical_feedback")
        ->required();
    assess->add_option("--trial-id", as_trial, "trial identifier");
    assess->add_option("--tip-aggregate", as_aggregate,
                       "tip error aggregation: max|mean");
    assess->add_flag("--strict", as_strict, "fail on any malformed frame row");
    assess->add_option("-o,--out", as_out, "output JSON path");

    // report
    auto* rep = app.add_subcommand(
        "report", "Combine assessed trials into the experiments table");
    std::vector<std::string> rep_trials;
    std::string rep_stability, rep_format = "json", rep_out;
    rep->add_option("--trials", rep_trials, "assessed trial JSON files")
        ->required()
        ->expected(-1);
    rep->add_option("--stability", rep_stability, "stability report JSON");
    rep->add_option("--format", rep_format, "json|table");
    rep->add_option("-o,--out", rep_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // CLI usage problems are validation failures
    }

    try {
        if (fit->parsed()) return run_fit_sphere(fit_points, fit_algebraic, fit_out);
        if (reg->parsed()) return run_register(reg_source, reg_target, reg_out);
        if (stab->parsed())
            return run_stability(stab_frames, stab_labels, stab_body, stab_strict,
                                 stab_out);
        if (zt->parsed()) return run_ztest(zt_scalars, zt_file_a, zt_file_b, zt_out);
        if (drift->parsed())
            return run_drift_sim(drift_trace, drift_steps, drift_step_mm,
                                 drift_step_deg, drift_detect, drift_anchor_mm,
                                 drift_anchor_deg, drift_seed, drift_write,
                                 drift_out);
        if (sim->parsed())
            return run_simulate(sim_dir, sim_scene, sim_seed, sim_kind, sim_user_sd,
                                sim_user_bias, sim_displace);
        if (assess->parsed())
            return run_assess(as_scene, as_frames, as_annotations, as_kind, as_trial,
                              as_aggregate, as_strict, as_out);
        if (rep->parsed())
            return run_report(rep_trials, rep_stability, rep_format, rep_out);
    } catch (const arnav::ParseError& e) {
        std::cerr << "arnav: parse error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "arnav: numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "arnav: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "arnav: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "arnav: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
