#include "grainsight/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace grainsight {

namespace {

using ojson = nlohmann::ordered_json;

bool same_ellipse(const FittedEllipse& a, const FittedEllipse& b) {
    return a.center == b.center && a.major_px == b.major_px && a.minor_px == b.minor_px &&
           a.angle_deg == b.angle_deg;
}

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

bool operator==(const GrainMeasurement& a, const GrainMeasurement& b) {
    return a.id == b.id && a.contour_id == b.contour_id && a.length_mm == b.length_mm &&
           a.width_mm == b.width_mm && same_ellipse(a.ellipse, b.ellipse) &&
           a.centroid_full_px == b.centroid_full_px && a.method == b.method;
}

bool operator==(const RunReport& a, const RunReport& b) {
    return a.image_path == b.image_path && a.canvas == b.canvas &&
           a.pixels_per_mm == b.pixels_per_mm && a.canvas_box_px == b.canvas_box_px &&
           a.policy == b.policy && a.method == b.method && a.grains == b.grains &&
           a.diagnostics == b.diagnostics;
}

ReportFormat parse_format(std::string_view name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    throw InvalidArgument("unknown report format '" + std::string(name) + "' (expected json or csv)");
}

std::string emit_json(const RunReport& r) {
    ojson j;
    j["image"] = r.image_path;
    j["canvas_mm"] = {{"width", r.canvas.width_mm}, {"height", r.canvas.height_mm}};
    const auto& b = r.canvas_box_px;
    j["canvas_box_px"] = {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
    j["pixels_per_mm"] = r.pixels_per_mm;
    j["policy"] = r.policy;
    j["method"] = r.method;
    j["count"] = r.grain_count();
    auto grains = ojson::array();
    for (const auto& g : r.grains) {
        grains.push_back({{"id", g.id},
                          {"length_mm", g.length_mm},
                          {"width_mm", g.width_mm},
                          {"angle_deg", g.ellipse.angle_deg},
                          {"cx", g.centroid_full_px.x},
                          {"cy", g.centroid_full_px.y},
                          {"contour_id", g.contour_id},
                          {"major_px", g.ellipse.major_px},
                          {"minor_px", g.ellipse.minor_px},
                          {"roi_cx", g.ellipse.center.x},
                          {"roi_cy", g.ellipse.center.y},
                          {"method", std::string(method_name(g.method))}});
    }
    j["grains"] = std::move(grains);
    auto diags = ojson::array();
    for (const auto& d : r.diagnostics) {
        ojson e{{"kind", d.kind}, {"message", d.message}};
        if (d.contour_id >= 0) e["contour_id"] = d.contour_id;
        diags.push_back(std::move(e));
    }
    j["diagnostics"] = std::move(diags);
    return j.dump(2) + "\n";
}

std::string emit_csv(const RunReport& r) {
    std::string out = "id,length_mm,width_mm,angle_deg,cx,cy\n";
    for (const auto& g : r.grains) {
        out += std::to_string(g.id) + "," + fixed2(g.length_mm) + "," + fixed2(g.width_mm) + "," +
               fixed2(g.ellipse.angle_deg) + "," + fixed2(g.centroid_full_px.x) + "," +
               fixed2(g.centroid_full_px.y) + "\n";
    }
    return out;
}

std::string emit_report(const RunReport& report, ReportFormat format) {
    return format == ReportFormat::json ? emit_json(report) : emit_csv(report);
}

RunReport parse_json_report(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        RunReport r;
        r.image_path = j.at("image").get<std::string>();
        r.canvas = {j.at("canvas_mm").at("width").get<double>(),
                    j.at("canvas_mm").at("height").get<double>()};
        const auto& b = j.at("canvas_box_px");
        r.canvas_box_px = {b.at("x").get<int>(), b.at("y").get<int>(), b.at("w").get<int>(),
                           b.at("h").get<int>()};
        r.pixels_per_mm = j.at("pixels_per_mm").get<double>();
        r.policy = j.at("policy").get<std::string>();
        r.method = j.at("method").get<std::string>();
        for (const auto& g : j.at("grains")) {
            GrainMeasurement m;
            m.id = g.at("id").get<int>();
            m.length_mm = g.at("length_mm").get<double>();
            m.width_mm = g.at("width_mm").get<double>();
            m.ellipse.angle_deg = g.at("angle_deg").get<double>();
            m.centroid_full_px = {g.at("cx").get<double>(), g.at("cy").get<double>()};
            m.contour_id = g.at("contour_id").get<int>();
            m.ellipse.major_px = g.at("major_px").get<double>();
            m.ellipse.minor_px = g.at("minor_px").get<double>();
            m.ellipse.center = {g.at("roi_cx").get<double>(), g.at("roi_cy").get<double>()};
            m.method = parse_method(g.at("method").get<std::string>());
            r.grains.push_back(m);
        }
        if (j.at("count").get<std::size_t>() != r.grains.size()) {
            throw InvalidArgument("report count does not match its grain list");
        }
        for (const auto& d : j.at("diagnostics")) {
            r.diagnostics.push_back({d.at("kind").get<std::string>(),
                                     d.at("message").get<std::string>(),
                                     d.value("contour_id", -1)});
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed report: ") + e.what());
    }
}

}  // namespace grainsight
