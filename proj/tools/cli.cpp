#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "grainsight/codec.hpp"
#include "grainsight/kernels.hpp"
#include "grainsight/overlay.hpp"
#include "grainsight/pipeline.hpp"
#include "grainsight/synth.hpp"
#include "json.hpp"

namespace grainsight::cli {

namespace {

struct PipelineFlags {
    std::string policy = "minmax";
    std::string method = "ellipse";
    std::string canvas_mm = "200x150";
    PipelineConfig config;

    void attach(CLI::App& app) {
        app.add_option("--canvas-mm", canvas_mm, "Physical canvas size WxH in mm")
            ->capture_default_str();
        app.add_option("--policy", policy, "Size filtration: minmax or median")
            ->check(CLI::IsMember({"minmax", "median"}))
            ->capture_default_str();
        app.add_option("--measure", method, "Grain measurement: ellipse or bbox")
            ->check(CLI::IsMember({"ellipse", "bbox"}))
            ->capture_default_str();
        app.add_option("--sigma", config.blur_sigma, "Gaussian sigma of the 5x5 blur")
            ->capture_default_str();
        app.add_option("--block-size", config.adaptive.block_size, "Adaptive threshold window (odd)")
            ->capture_default_str();
        app.add_option("--offset-c", config.adaptive.offset_c, "Adaptive threshold offset")
            ->capture_default_str();
        auto& b = config.policy.bounds;
        app.add_option("--min-len-mm", b.min_len_mm)->capture_default_str();
        app.add_option("--max-len-mm", b.max_len_mm)->capture_default_str();
        app.add_option("--min-wid-mm", b.min_wid_mm)->capture_default_str();
        app.add_option("--max-wid-mm", b.max_wid_mm)->capture_default_str();
        app.add_option("--median-lower", config.policy.median.lower)->capture_default_str();
        app.add_option("--median-upper", config.policy.median.upper)->capture_default_str();
        app.add_option("--width-slack", config.policy.width_slack,
                       "Multiplier on --max-wid-mm for box widths")
            ->capture_default_str();
    }

    PipelineConfig resolve() const {
        PipelineConfig c = config;
        c.policy.kind = parse_policy(policy);
        c.method = parse_method(method);
        return c;
    }
};

Interval parse_interval(const std::string& text) {
    const auto sep = text.find(':');
    try {
        if (sep == std::string::npos) {
            const double v = std::stod(text);
            return {v, v};
        }
        return {std::stod(text.substr(0, sep)), std::stod(text.substr(sep + 1))};
    } catch (const std::exception&) {
        throw InvalidArgument("expected LO:HI, got '" + text + "'");
    }
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                seeds.push_back(std::stoull(part));
            } else {
                const auto lo = std::stoull(part.substr(0, dash));
                const auto hi = std::stoull(part.substr(dash + 1));
                for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
            }
        } catch (const std::exception&) {
            throw InvalidArgument("bad seed list '" + text + "'");
        }
    }
    if (seeds.empty()) throw InvalidArgument("empty seed list");
    return seeds;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << text;
    if (!f) throw IoError("cannot write " + path);
}

bool has_jpeg_extension(const std::string& path) {
    auto lower = path;
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return lower.ends_with(".jpg") || lower.ends_with(".jpeg");
}

struct SynthFlags {
    SceneSpec spec;
    std::string canvas_mm = "200x150";
    std::string length = "8.3:9.4";
    std::string width = "1.9:2.1";
    std::string angle = "0:180";
    std::string shape = "ellipse";
    int canvas_gray = 25;
    int grain_gray = 215;
    int background_gray = 190;

    // single_scale adds --seed and --ppmm; with_canvas adds --canvas-mm.
    void attach(CLI::App& app, bool single_scale, bool with_canvas) {
        if (single_scale) {
            app.add_option("--seed", spec.seed, "Scene seed")->capture_default_str();
            app.add_option("--ppmm", spec.pixels_per_mm, "Pixels per millimeter")
                ->capture_default_str();
        }
        if (with_canvas) {
            app.add_option("--canvas-mm", canvas_mm, "Canvas size WxH in mm")->capture_default_str();
        }
        app.add_option("--grains", spec.grain_count, "Number of grains")->capture_default_str();
        app.add_option("--length-mm", length, "Grain length range LO:HI")->capture_default_str();
        app.add_option("--width-mm", width, "Grain width range LO:HI")->capture_default_str();
        app.add_option("--angle-deg", angle, "Grain angle range LO:HI")->capture_default_str();
        app.add_option("--gradient", spec.lighting_gradient, "Lighting ramp amplitude")
            ->capture_default_str();
        app.add_option("--fissure-prob", spec.contrast_noise,
                       "Probability of a dark fissure per grain")
            ->capture_default_str();
        app.add_option("--specks", spec.speck_count, "Bright noise specks")->capture_default_str();
        app.add_option("--shape", shape, "ellipse or capsule")
            ->check(CLI::IsMember({"ellipse", "capsule"}))
            ->capture_default_str();
        app.add_option("--margin-px", spec.margin_px, "Surround width (negative: 8 mm)")
            ->capture_default_str();
        app.add_option("--canvas-rotation", spec.canvas_rotation_deg, "Canvas tilt in degrees")
            ->capture_default_str();
        app.add_option("--canvas-gray", canvas_gray)->check(CLI::Range(0, 255))->capture_default_str();
        app.add_option("--grain-gray", grain_gray)->check(CLI::Range(0, 255))->capture_default_str();
        app.add_option("--background-gray", background_gray)
            ->check(CLI::Range(0, 255))
            ->capture_default_str();
    }

    SceneSpec resolve(const std::string& canvas_text) const {
        SceneSpec s = spec;
        s.canvas = parse_canvas_spec(canvas_text);
        s.length_mm = parse_interval(length);
        s.width_mm = parse_interval(width);
        s.angle_deg = parse_interval(angle);
        s.shape = shape == "capsule" ? GrainShape::capsule : GrainShape::ellipse;
        s.canvas_gray = static_cast<std::uint8_t>(canvas_gray);
        s.grain_gray = static_cast<std::uint8_t>(grain_gray);
        s.background_gray = static_cast<std::uint8_t>(background_gray);
        return s;
    }
};

int cmd_measure(const std::string& input, const PipelineFlags& flags, const std::string& out_path,
                const std::string& format, const std::string& overlay, std::ostream& out,
                std::ostream& err) {
    const RgbImage image = read_image(input);
    const PipelineResult res =
        run_pipeline(image, parse_canvas_spec(flags.canvas_mm), flags.resolve(), input);
    for (const auto& d : res.report.diagnostics) {
        err << d.kind << ": " << d.message << "\n";
    }
    write_text(out_path, emit_report(res.report, parse_format(format)), out);
    if (!overlay.empty()) write_png(overlay, render_overlay(image, res.report));
    return kExitOk;
}

int cmd_synth(const SynthFlags& flags, const std::string& out_path, const std::string& truth_path,
              std::ostream& out) {
    const Scene scene = generate_scene(flags.resolve(flags.canvas_mm));
    if (has_jpeg_extension(out_path)) {
        write_jpeg(out_path, scene.image);
    } else {
        write_png(out_path, scene.image);
    }
    const std::string truth = truth_to_json(scene.truth);
    if (!truth_path.empty()) write_text(truth_path, truth, out);
    out << "wrote " << out_path << " (" << scene.image.width() << "x" << scene.image.height()
        << ", " << scene.truth.grains.size() << " grains)\n";
    return kExitOk;
}

int cmd_eval(const SynthFlags& synth, const PipelineFlags& flags, const std::string& seeds_text,
             const std::vector<double>& scales, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
    const auto seeds = parse_seeds(seeds_text);
    const PipelineConfig config = flags.resolve();
    const CanvasSpec canvas = parse_canvas_spec(flags.canvas_mm);
    std::vector<EvalReport> reports;
    nlohmann::ordered_json scenes = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        SceneSpec spec = synth.resolve(flags.canvas_mm);
        spec.seed = seeds[i];
        spec.pixels_per_mm = scales[i % scales.size()];
        const Scene scene = generate_scene(spec);
        EvalReport r;
        try {
            const auto res = run_pipeline(scene.image, canvas, config);
            r = evaluate(res.report.grains, scene.truth, res.calibration.scale);
        } catch (const NoCanvasFound& e) {
            err << "seed " << spec.seed << ": " << e.what() << "\n";
            r.truth_count = scene.truth.grains.size();
        }
        scenes.push_back({{"seed", spec.seed},
                          {"ppmm", spec.pixels_per_mm},
                          {"truth", r.truth_count},
                          {"matched", r.matched},
                          {"false_positives", r.false_positives},
                          {"length_mae_mm", r.length_mae_mm},
                          {"width_mae_mm", r.width_mae_mm}});
        reports.push_back(std::move(r));
    }
    auto summary = nlohmann::ordered_json::parse(eval_to_json(merge(reports)));
    summary.erase("per_grain");
    nlohmann::ordered_json j;
    j["summary"] = std::move(summary);
    j["scenes"] = std::move(scenes);
    write_text(out_path, j.dump(2) + "\n", out);
    return kExitOk;
}

int cmd_bench(const std::string& input, const SynthFlags& synth, const PipelineFlags& flags,
              int repeat, std::ostream& out) {
    RgbImage image;
    CanvasSpec canvas = parse_canvas_spec(flags.canvas_mm);
    if (!input.empty()) {
        image = read_image(input);
    } else {
        SceneSpec spec = synth.resolve(flags.canvas_mm);
        image = generate_scene(spec).image;
        canvas = spec.canvas;
    }
    const PipelineConfig config = flags.resolve();
    const auto original = kernels::active_isa();
    out << "image " << image.width() << "x" << image.height() << ", " << repeat << " run(s)\n";
    for (auto isa : {kernels::Isa::scalar, kernels::Isa::avx2}) {
        if (!kernels::set_active_isa(isa)) {
            out << "[" << kernels::isa_name(isa) << "] not available on this CPU\n";
            continue;
        }
        std::vector<StageTiming> total;
        for (int i = 0; i < repeat; ++i) {
            const auto res = run_pipeline(image, canvas, config);
            if (total.empty()) {
                total = res.timings;
            } else {
                for (std::size_t k = 0; k < total.size(); ++k) {
                    total[k].milliseconds += res.timings[k].milliseconds;
                }
            }
        }
        out << "[" << kernels::isa_name(isa) << "]\n";
        double sum = 0.0;
        for (const auto& t : total) {
            char line[96];
            std::snprintf(line, sizeof line, "  %-20s %9.2f ms\n", t.stage.c_str(),
                          t.milliseconds / repeat);
            out << line;
            sum += t.milliseconds / repeat;
        }
        char line[96];
        std::snprintf(line, sizeof line, "  %-20s %9.2f ms\n", "total", sum);
        out << line;
    }
    kernels::set_active_isa(original);
    return kExitOk;
}

// Splices key=value lines from each "--config FILE" into the argument list.
// Keys already given on the command line are skipped so flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> result;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string file;
        if (args[i] == "--config" && i + 1 < args.size()) {
            file = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            file = args[i].substr(9);
        } else {
            result.push_back(args[i]);
            continue;
        }
        std::ifstream in(file);
        if (!in) throw IoError("cannot read config file " + file);
        std::string line;
        while (std::getline(in, line)) {
            const auto trim = [](std::string v) {
                const auto b = v.find_first_not_of(" \t\r");
                const auto e = v.find_last_not_of(" \t\r");
                v = b == std::string::npos ? std::string{} : v.substr(b, e - b + 1);
                if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
                    v = v.substr(1, v.size() - 2);
                }
                return v;
            };
            line = trim(line);
            if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw InvalidArgument("bad config line: " + line);
            const std::string key = "--" + trim(line.substr(0, eq));
            const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
                return a == key || a.rfind(key + "=", 0) == 0;
            });
            if (given) continue;
            result.push_back(key);
            result.push_back(trim(line.substr(eq + 1)));
        }
    }
    return result;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rice grain counting and sizing on a reference canvas", "grainsight"};
    app.require_subcommand(1);
    std::string isa;
    app.add_option("--isa", isa, "Force kernel variant: scalar or avx2");
    std::string config_path;

    auto* measure = app.add_subcommand("measure", "Count and size grains in a photograph");
    measure->add_option("--config", config_path, "Read flags from a key=value file (flags win)");
    PipelineFlags measure_flags;
    std::string input, out_path, format = "json", overlay;
    measure->add_option("--input", input, "PNG or JPEG image")->required();
    measure_flags.attach(*measure);
    measure->add_option("--out", out_path, "Report path (default stdout)");
    measure->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    measure->add_option("--overlay", overlay, "Annotated PNG output");

    auto* synth = app.add_subcommand("synth", "Render a synthetic scene with ground truth");
    synth->add_option("--config", config_path, "Read flags from a key=value file (flags win)");
    SynthFlags synth_flags;
    std::string scene_out, truth_out;
    synth_flags.attach(*synth, true, true);
    synth->add_option("--out", scene_out, "Scene image (.png or .jpg)")->required();
    synth->add_option("--truth", truth_out, "Ground-truth JSON path");

    auto* eval = app.add_subcommand("eval", "Run measure over generated scenes against truth");
    eval->add_option("--config", config_path, "Read flags from a key=value file (flags win)");
    PipelineFlags eval_flags;
    SynthFlags eval_synth;
    std::string seeds = "1-30";
    std::vector<double> scales{8.0, 12.0, 16.0};
    std::string eval_out;
    eval_flags.attach(*eval);
    eval_synth.attach(*eval, false, false);
    eval->add_option("--seeds", seeds, "Seed list, e.g. 1-30 or 3,5,9")->capture_default_str();
    eval->add_option("--ppmm", scales, "Scales cycled over the seeds")->delimiter(',');
    eval->add_option("--out", eval_out, "Report path (default stdout)");

    auto* bench = app.add_subcommand("bench", "Time each pipeline stage per kernel variant");
    PipelineFlags bench_flags;
    SynthFlags bench_synth;
    std::string bench_input;
    int repeat = 3;
    bench->add_option("--input", bench_input, "Image to time (default: a generated scene)");
    bench_flags.attach(*bench);
    bench_synth.attach(*bench, true, false);
    bench->add_option("--repeat", repeat)->check(CLI::PositiveNumber)->capture_default_str();

    std::vector<std::string> argv_rest;
    try {
        argv_rest = expand_config({args.begin() + (args.empty() ? 0 : 1), args.end()});
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    std::reverse(argv_rest.begin(), argv_rest.end());
    try {
        app.parse(argv_rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitIo;
    }

    try {
        if (!isa.empty()) {
            const auto parsed = kernels::parse_isa(isa);
            if (!parsed || !kernels::set_active_isa(*parsed)) {
                err << "kernel variant '" << isa << "' is not available\n";
                return kExitIo;
            }
        }
        if (measure->parsed()) {
            return cmd_measure(input, measure_flags, out_path, format, overlay, out, err);
        }
        if (synth->parsed()) return cmd_synth(synth_flags, scene_out, truth_out, out);
        if (eval->parsed()) {
            return cmd_eval(eval_synth, eval_flags, seeds, scales, eval_out, out, err);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_input, bench_synth, bench_flags, repeat, out);
        }
    } catch (const NoCanvasFound& e) {
        err << "NoCanvasFound: " << e.what() << "\n";
        return kExitNoCanvas;
    } catch (const DegenerateRoi& e) {
        err << "DegenerateROI: " << e.what() << "\n";
        return kExitNoCanvas;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitIo;
}

}  // namespace grainsight::cli
