#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hilbert/calculus.hpp"
#include "hilbert/cheeger.hpp"
#include "hilbert/convex_body.hpp"
#include "hilbert/finsler.hpp"
#include "hilbert/hyperbolicity.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/spectrum.hpp"

namespace {

using hilbert::ConvexBody;
using hilbert::Vec2;
using ordered_json = nlohmann::ordered_json;

// Signals exit code 2 (numerical failure under --strict); output is already
// written when this is thrown.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal form; identical doubles give identical bytes.
std::string fmt(double v) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

Vec2 parse_point(const std::string& s) {
    Vec2 p;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf%c", &p.x, &p.y, &extra) != 2)
        throw std::invalid_argument("expected a point as X,Y: '" + s + "'");
    return p;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        const std::string tok = s.substr(pos, comma - pos);
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("expected a comma-separated number list: '" + s + "'");
        out.push_back(v);
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

// Cells hold shortest-round-trip decimal forms; finite numeric cells become
// JSON numbers (round-tripping exactly), everything else stays a string.
ordered_json cell_value(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
        return s;
    if (s.find_first_of(".eE") == std::string::npos) return std::stoll(s);
    return v;
}

std::string csv_or_json(const std::vector<std::string>& columns,
                        const std::vector<std::vector<std::string>>& rows,
                        const std::string& format) {
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json obj;
            for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = cell_value(row[c]);
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }
    std::string text;
    for (std::size_t c = 0; c < columns.size(); ++c)
        text += (c ? "," : "") + columns[c];
    text += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) text += (c ? "," : "") + row[c];
        text += '\n';
    }
    return text;
}

double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hgeo: distances, measures, spectra and hyperbolicity of plane "
                 "Hilbert geometries"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help and exit");  // frees -h for --h

    // shared option storage; each subcommand registers the flags it uses
    std::string body_path, p_str, q_str, r_str, alphas_str, out_path, format = "csv";
    double h = 0.0, eps = 0.0, scale = 0.0;
    long long samples = 100000;
    std::uint64_t seed = 0;
    bool strict = false;

    auto add_common = [&](CLI::App* sub, bool needs_body = true) {
        sub->set_help_flag("--help", "print this help and exit");
        auto* opt = sub->add_option("--body", body_path, "body description file (JSON)");
        if (needs_body) opt->required();
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--strict", strict, "exit 2 when an estimate fails to converge");
    };

    auto* c_validate = app.add_subcommand("validate", "check a body file and report problems");
    add_common(c_validate);

    auto* c_dist = app.add_subcommand("dist", "Hilbert distance between two interior points");
    add_common(c_dist);
    c_dist->add_option("--p", p_str, "first point X,Y")->required();
    c_dist->add_option("--q", q_str, "second point X,Y")->required();

    auto* c_norm = app.add_subcommand("norm", "tangent Finsler norm F(p, u)");
    add_common(c_norm);
    c_norm->add_option("--p", p_str, "base point X,Y")->required();
    c_norm->add_option("--q", q_str, "tangent vector X,Y")->required();

    auto* c_zeta = app.add_subcommand("zeta", "hypersurface density factor at p, direction u");
    add_common(c_zeta);
    c_zeta->add_option("--p", p_str, "base point X,Y")->required();
    c_zeta->add_option("--q", q_str, "direction X,Y")->required();

    auto* c_ball = app.add_subcommand("ball-volume", "metric ball volumes with two-sided bounds");
    add_common(c_ball);
    c_ball->add_option("--p", p_str, "ball center X,Y (default: area centroid)");
    c_ball->add_option("--R", r_str, "comma-separated radii")->required();

    auto* c_lambda = app.add_subcommand("lambda1", "Dirichlet spectral-bottom exhaustion");
    add_common(c_lambda);
    c_lambda->add_option("--alphas", alphas_str, "comma-separated homothety factors in (0,1)")
        ->required();
    c_lambda->add_option("--h", h, "target mesh edge length")->required();

    auto* c_cheeger = app.add_subcommand("cheeger", "isoperimetric quotients of metric balls");
    add_common(c_cheeger);
    c_cheeger->add_option("--p", p_str, "ball center X,Y (default: area centroid)");
    c_cheeger->add_option("--R", r_str, "comma-separated radii")->required();

    auto* c_delta = app.add_subcommand("delta", "four-point hyperbolicity estimate");
    add_common(c_delta);
    c_delta->add_option("--p", p_str, "sampling center X,Y (default: area centroid)");
    c_delta->add_option("--scale", scale, "sampling radius (metric)")->required();
    c_delta->add_option("--samples", samples, "number of quadruples");
    c_delta->add_option("--seed", seed, "random seed");

    auto* c_coarea = app.add_subcommand("coarea", "co-area check for a distance band");
    add_common(c_coarea);
    c_coarea->add_option("--p", p_str, "distance base point X,Y (default: area centroid)");
    c_coarea->add_option("--R", r_str, "band as T0,T1 (default 0.5,1)");
    c_coarea->add_option("--samples", samples, "number of traced levels (default 9)");
    c_coarea->add_option("--eps", eps, "grid resolution override");

    auto* c_report = app.add_subcommand("report", "composite JSON report with dichotomy flags");
    add_common(c_report);
    c_report->add_option("--alphas", alphas_str, "exhaustion factors (default 0.5,0.7,0.85,0.95)");
    c_report->add_option("--h", h, "mesh edge length (default 0.15)");
    c_report->add_option("--R", r_str, "isoperimetric scan radii (default 0.5,1,2,3)");
    c_report->add_option("--scale", scale, "largest hyperbolicity scale (default 8)");
    c_report->add_option("--samples", samples, "quadruples per scale");
    c_report->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);

        const ConvexBody body = hilbert::load_body(body_path);
        const auto center_or_centroid = [&]() {
            return p_str.empty() ? hilbert::centroid(body) : parse_point(p_str);
        };

        if (*c_validate) {
            hilbert::validate_body(body);
            write_output("ok\n", out_path);
        } else if (*c_dist) {
            const double d =
                hilbert::hilbert_distance(body, parse_point(p_str), parse_point(q_str));
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.7f\n", d);
            write_output(buf, out_path);
        } else if (*c_norm) {
            const double f =
                hilbert::finsler_norm(body, parse_point(p_str), parse_point(q_str));
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.7f\n", f);
            write_output(buf, out_path);
        } else if (*c_zeta) {
            const double z = hilbert::zeta(
                hilbert::hilbert_norm_at(body, parse_point(p_str)), parse_point(q_str));
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.7f\n", z);
            write_output(buf, out_path);
        } else if (*c_ball) {
            const Vec2 c = center_or_centroid();
            std::vector<std::vector<std::string>> rows;
            for (double R : parse_list(r_str)) {
                const auto est =
                    hilbert::region_volume(body, hilbert::metric_ball(body, c, R));
                const auto bounds = hilbert::ball_volume_bounds(R, 2);
                rows.push_back({fmt(R), fmt(est.value), fmt(est.abs_error), fmt(bounds.C1),
                                fmt(bounds.C2)});
            }
            write_output(csv_or_json({"R", "volume", "abs_error", "C1", "C2"}, rows, format),
                         out_path);
        } else if (*c_lambda) {
            const auto seq = hilbert::lambda1_exhaustion(body, parse_list(alphas_str), h);
            std::vector<std::vector<std::string>> rows;
            bool all_converged = true;
            for (const auto& [alpha, est] : seq) {
                rows.push_back({fmt(alpha), fmt(h), fmt(est.lambda),
                                est.converged ? "1" : "0", std::to_string(est.restarts_used)});
                all_converged = all_converged && est.converged;
            }
            write_output(
                csv_or_json({"alpha", "h", "lambda", "converged", "restarts_used"}, rows,
                            format),
                out_path);
            if (strict && !all_converged)
                throw NonConvergence("lambda1: a stage failed to converge");
        } else if (*c_cheeger) {
            const auto report =
                hilbert::cheeger_scan(body, {center_or_centroid()}, parse_list(r_str));
            std::vector<std::vector<std::string>> rows;
            for (const auto& cd : report.candidates)
                rows.push_back({fmt(cd.center.x), fmt(cd.center.y), fmt(cd.R), fmt(cd.mu),
                                fmt(cd.nu_plain), fmt(cd.nu_zeta), fmt(cd.q_plain),
                                fmt(cd.q_zeta)});
            write_output(csv_or_json({"center_x", "center_y", "R", "mu", "nu_plain",
                                      "nu_zeta", "q_plain", "q_zeta"},
                                     rows, format),
                         out_path);
        } else if (*c_delta) {
            const auto est = hilbert::four_point_delta(body, center_or_centroid(), scale,
                                                       samples, seed);
            std::vector<std::vector<std::string>> rows{
                {fmt(est.scale), std::to_string(est.sample_count), fmt(est.delta), est.method,
                 std::to_string(est.seed)}};
            write_output(csv_or_json({"scale", "samples", "delta", "method", "seed"}, rows,
                                     format),
                         out_path);
        } else if (*c_coarea) {
            const Vec2 c = center_or_centroid();
            std::vector<double> band = r_str.empty() ? std::vector<double>{0.5, 1.0}
                                                     : parse_list(r_str);
            if (band.size() != 2 || !(band[0] < band[1]))
                throw std::invalid_argument("--R: expected T0,T1 with T0 < T1");
            const int n_levels = c_coarea->count("--samples") ? static_cast<int>(samples) : 9;
            const auto result = hilbert::coarea_check(
                body, [&body, c](Vec2 q) { return hilbert::hilbert_distance(body, c, q); },
                [](Vec2) { return 1.0; }, band[0], band[1], n_levels, eps);
            if (format == "json") {
                ordered_json j;
                j["lhs"] = result.lhs;
                j["rhs"] = result.rhs;
                j["rel_gap"] = result.rel_gap;
                auto& arr = j["levels"] = ordered_json::array();
                for (const auto& [t, m] : result.levels)
                    arr.push_back({{"t", t}, {"level_measure", m}});
                write_output(j.dump(2) + "\n", out_path);
            } else {
                std::vector<std::vector<std::string>> rows;
                for (const auto& [t, m] : result.levels) rows.push_back({fmt(t), fmt(m)});
                write_output(csv_or_json({"t", "level_measure"}, rows, format), out_path);
            }
        } else if (*c_report) {
            const std::vector<double> alphas = alphas_str.empty()
                                                   ? std::vector<double>{0.5, 0.7, 0.85, 0.95}
                                                   : parse_list(alphas_str);
            const double mesh_h = c_report->count("--h") ? h : 0.15;
            const std::vector<double> radii =
                r_str.empty() ? std::vector<double>{0.5, 1.0, 2.0, 3.0} : parse_list(r_str);
            const double top_scale = c_report->count("--scale") ? scale : 8.0;
            const Vec2 c = hilbert::centroid(body);

            const auto seq = hilbert::lambda1_exhaustion(body, alphas, mesh_h);
            const double extrapolated = hilbert::richardson_extrapolate(seq);
            const auto scan = hilbert::cheeger_scan(body, {c}, radii);

            std::vector<double> scales, deltas;
            for (int k = 1; k <= 4; ++k) scales.push_back(top_scale * k / 4.0);
            for (double s : scales)
                deltas.push_back(
                    hilbert::four_point_delta(body, c, s, samples, seed).delta);
            const double slope = lsq_slope(scales, deltas);

            ordered_json j;
            j["body"] = ordered_json::parse(hilbert::body_to_json(body));
            j["seed"] = seed;
            auto& jl = j["lambda1"];
            jl["h"] = mesh_h;
            jl["stages"] = ordered_json::array();
            bool all_converged = true;
            for (const auto& [alpha, est] : seq) {
                jl["stages"].push_back({{"alpha", alpha},
                                        {"lambda", est.lambda},
                                        {"converged", est.converged},
                                        {"restarts_used", est.restarts_used}});
                all_converged = all_converged && est.converged;
            }
            jl["extrapolated"] = extrapolated;
            auto& jc = j["cheeger"];
            jc["center"] = {c.x, c.y};
            jc["candidates"] = ordered_json::array();
            for (const auto& cd : scan.candidates)
                jc["candidates"].push_back({{"center_x", cd.center.x},
                                            {"center_y", cd.center.y},
                                            {"R", cd.R},
                                            {"mu", cd.mu},
                                            {"nu_plain", cd.nu_plain},
                                            {"nu_zeta", cd.nu_zeta},
                                            {"q_plain", cd.q_plain},
                                            {"q_zeta", cd.q_zeta}});
            jc["best_quotient_plain"] = scan.best_quotient_plain;
            jc["best_quotient_zeta"] = scan.best_quotient_zeta;
            auto& jd = j["delta"];
            jd["method"] = "four-point";
            jd["samples"] = samples;
            jd["scales"] = ordered_json::array();
            for (std::size_t i = 0; i < scales.size(); ++i)
                jd["scales"].push_back({{"scale", scales[i]}, {"delta", deltas[i]}});
            jd["slope"] = slope;
            auto& jx = j["dichotomy"];
            const bool lambda_away = extrapolated >= 0.05;
            const bool delta_growing = slope >= 0.1;
            jx["lambda_extrapolated"] = extrapolated;
            jx["lambda_bounded_away"] = lambda_away;
            jx["delta_slope"] = slope;
            jx["delta_growing"] = delta_growing;
            jx["consistent"] = lambda_away != delta_growing;
            write_output(j.dump(2) + "\n", out_path);
            if (strict && !all_converged)
                throw NonConvergence("report: an exhaustion stage failed to converge");
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NonConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
