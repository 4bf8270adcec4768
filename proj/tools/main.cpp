#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gblab/catalog.hpp"
#include "gblab/curve.hpp"
#include "gblab/mesh.hpp"
#include "gblab/transport.hpp"
#include "gblab/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace gblab;

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;

constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
    std::string surface_spec;
    std::string loop_spec;
    std::string mesh_path;
    std::string mesh_action;
    std::string identity;
    std::string vertices_spec;
    std::string at_spec;
    std::string grid_spec;
    std::string format = "json";
    std::string output;
    int steps = kDefaultSteps;
    int resolution = 1024;
    double tolerance = -1.0;  // unset when negative
    double latitude = std::numeric_limits<double>::quiet_NaN();
    unsigned long long seed = 0;
    int random_loops = 0;
    bool compare_integral = false;
};

struct LoopSpec {
    std::string kind;
    double value = 0.0;           // radians for angle kinds
    std::vector<Vec2> points;     // for param polylines
};

double parse_angle_deg(std::string text) {
    if (const auto pos = text.find("deg"); pos != std::string::npos) text = text.substr(0, pos);
    return std::stod(text) * kPi / 180.0;
}

LoopSpec parse_loop_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("loop spec needs kind:args, got '" + spec + "'");
    LoopSpec out;
    out.kind = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);
    if (out.kind == "latitude" || out.kind == "tube" || out.kind == "meridian") {
        out.value = parse_angle_deg(args);
    } else if (out.kind == "circle") {
        out.value = std::stod(args);
    } else if (out.kind == "param") {
        std::stringstream ss(args);
        std::string tok;
        std::vector<double> vals;
        while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
        if (vals.size() < 6 || vals.size() % 2 != 0)
            throw std::invalid_argument("param loop needs >= 3 (u,v) pairs");
        for (size_t i = 0; i < vals.size(); i += 2) out.points.emplace_back(vals[i], vals[i + 1]);
    } else {
        throw std::invalid_argument("unknown loop kind: " + out.kind);
    }
    return out;
}

ParamCurve build_loop(const LoopSpec& spec, const ParametricSurface& surface) {
    if (spec.kind == "latitude") {
        if (surface.name() != "sphere" && surface.name() != "ellipsoid")
            throw std::invalid_argument("latitude loops need a sphere or ellipsoid");
        return latitude_loop(spec.value);
    }
    if (spec.kind == "tube" || spec.kind == "meridian") {
        if (surface.name() != "torus")
            throw std::invalid_argument(spec.kind + " loops need a torus");
        return spec.kind == "tube" ? tube_loop(spec.value) : meridian_loop(spec.value);
    }
    if (spec.kind == "circle") return circle_loop(spec.value);
    return polyline_loop(spec.points);
}

// Region positively bounded by the loop, for deficit-vs-integral pairing.
// The sign multiplies the quadrature result (oriented band for tube loops).
struct PairedRegion {
    ParamRegion region;
    double sign = 1.0;
};

std::optional<PairedRegion> enclosed_region(const LoopSpec& spec,
                                            const ParametricSurface& surface, int resolution) {
    const Domain& dom = surface.domain();
    if (spec.kind == "latitude") {
        return PairedRegion{rect_region(dom.u_min, spec.value, dom.u_max, dom.v_max, resolution,
                                        resolution),
                            1.0};
    }
    if (spec.kind == "tube") {
        const double lo = std::min(spec.value, kPi / 2);
        const double hi = std::max(spec.value, kPi / 2);
        return PairedRegion{rect_region(dom.u_min, lo, dom.u_max, hi, resolution, resolution),
                            spec.value <= kPi / 2 ? 1.0 : -1.0};
    }
    if (spec.kind == "circle") {
        const double r = spec.value;
        ParamRegion region = rect_region(-r, -r, r, r, resolution, resolution);
        region.indicator = [r](double u, double v) { return u * u + v * v <= r * r; };
        return PairedRegion{region, 1.0};
    }
    if (spec.kind == "param") {
        return PairedRegion{polygon_region(spec.points, resolution, resolution), 1.0};
    }
    return std::nullopt;
}

std::ostream& open_output(const RunConfig& cfg, std::ofstream& file) {
    if (cfg.output.empty()) return std::cout;
    file.open(cfg.output, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + cfg.output);
    return file;
}

int finish_with_tolerance(const RunConfig& cfg, double worst_abs_error) {
    if (cfg.tolerance >= 0.0 && worst_abs_error > cfg.tolerance) return kExitTolerance;
    return 0;
}

int run_curvature(const RunConfig& cfg) {
    const ParametricSurface surface = parse_surface_spec(cfg.surface_spec);
    std::ofstream file;
    std::ostream& out = open_output(cfg, file);

    if (!cfg.grid_spec.empty()) {
        const auto x = cfg.grid_spec.find('x');
        if (x == std::string::npos) throw std::invalid_argument("--grid expects NxM");
        const int nu = std::stoi(cfg.grid_spec.substr(0, x));
        const int nv = std::stoi(cfg.grid_spec.substr(x + 1));
        if (nu <= 0 || nv <= 0) throw std::invalid_argument("--grid expects positive counts");
        const Domain& dom = surface.domain();
        const double hu = dom.u_extent() / nu, hv = dom.v_extent() / nv;
        if (cfg.format == "csv") out << "u,v,K,k1,k2,nx,ny,nz\n";
        char buf[256];
        for (int j = 0; j < nv; ++j) {
            for (int i = 0; i < nu; ++i) {
                const double u = dom.u_min + (i + 0.5) * hu;
                const double v = dom.v_min + (j + 0.5) * hv;
                const double K = gaussian_curvature(surface, u, v);
                const auto [k1, k2] = principal_curvatures(surface, u, v);
                const Vec3 n = unit_normal(surface, u, v);
                if (cfg.format == "csv") {
                    std::snprintf(buf, sizeof buf,
                                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", u, v, K,
                                  k1, k2, n.x(), n.y(), n.z());
                    out << buf;
                } else {
                    ordered_json j{{"surface", cfg.surface_spec}, {"u", u},   {"v", v},
                                   {"K", K},                      {"k1", k1}, {"k2", k2},
                                   {"normal", {n.x(), n.y(), n.z()}}};
                    out << j.dump() << "\n";
                }
            }
        }
        return 0;
    }

    if (cfg.at_spec.empty()) throw std::invalid_argument("curvature needs --at or --grid");
    const auto comma = cfg.at_spec.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--at expects u,v");
    const double u = std::stod(cfg.at_spec.substr(0, comma));
    const double v = std::stod(cfg.at_spec.substr(comma + 1));
    const double K = gaussian_curvature(surface, u, v);
    const auto [k1, k2] = principal_curvatures(surface, u, v);
    const Vec3 n = unit_normal(surface, u, v);
    ordered_json j{{"surface", cfg.surface_spec}, {"u", u},   {"v", v},
                   {"K", K},                      {"k1", k1}, {"k2", k2},
                   {"normal", {n.x(), n.y(), n.z()}}};
    out << j.dump() << "\n";
    return 0;
}

int run_transport(const RunConfig& cfg) {
    const ParametricSurface surface = parse_surface_spec(cfg.surface_spec);
    const LoopSpec spec = parse_loop_spec(cfg.loop_spec);
    const ParamCurve loop = build_loop(spec, surface);

    const double deficit = deficit_angle(surface, loop, cfg.steps);
    ordered_json j{{"surface", cfg.surface_spec},
                   {"loop", cfg.loop_spec},
                   {"steps", cfg.steps},
                   {"deficit", deficit}};

    double worst = 0.0;
    if (cfg.compare_integral) {
        const auto paired = enclosed_region(spec, surface, cfg.resolution);
        if (!paired)
            throw std::invalid_argument("--compare-integral is unavailable for this loop kind");
        const double integral = paired->sign * integrate_curvature(surface, paired->region);
        j["integral"] = integral;
        j["abs_error"] = std::abs(deficit - integral);
        worst = std::abs(deficit - integral);
    }
    std::ofstream file;
    open_output(cfg, file) << j.dump() << "\n";
    return finish_with_tolerance(cfg, worst);
}

int run_verify(const RunConfig& cfg) {
    std::ofstream file;
    std::ostream& out = open_output(cfg, file);
    std::vector<VerificationReport> reports;

    if (cfg.identity == "foucault") {
        if (std::isnan(cfg.latitude)) throw std::invalid_argument("foucault needs --latitude");
        const double value = foucault_rotation(cfg.latitude);
        reports.push_back(make_report(Identity::Foucault, value, value));
    } else if (cfg.identity == "total") {
        const ParametricSurface surface = parse_surface_spec(cfg.surface_spec);
        reports.push_back(total_curvature(surface));
    } else if (cfg.identity == "stokes") {
        const double phi = std::isnan(cfg.latitude) ? kPi / 6 : cfg.latitude * kPi / 180.0;
        const double lhs = stokes_deficit_sphere(latitude_loop(phi), cfg.steps);
        reports.push_back(
            make_report(Identity::StokesLoop, lhs, kTau * (1.0 - std::sin(phi)), 0, 0, cfg.steps));
    } else if (cfg.identity == "gaussmap") {
        const ParametricSurface surface = parse_surface_spec(cfg.surface_spec);
        const ParamCurve loop = build_loop(parse_loop_spec(cfg.loop_spec), surface);
        reports.push_back(verify_gauss_map_deficit(surface, loop, cfg.steps));
    } else if (cfg.identity == "triangle") {
        const ParametricSurface surface = parse_surface_spec(cfg.surface_spec);
        std::array<Vec2, 3> vertices;
        if (cfg.vertices_spec == "octant") {
            vertices = {Vec2(0.0, 0.0), Vec2(kPi / 2, 0.0), Vec2(kPi / 4, kPi / 2 - 1e-3)};
        } else {
            std::stringstream ss(cfg.vertices_spec);
            std::string tok;
            std::vector<double> vals;
            while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
            if (vals.size() != 6)
                throw std::invalid_argument("--vertices expects 'octant' or six numbers");
            vertices = {Vec2(vals[0], vals[1]), Vec2(vals[2], vals[3]), Vec2(vals[4], vals[5])};
        }
        reports.push_back(
            geodesic_triangle_excess(surface, vertices, std::min(cfg.steps, 1024),
                                     cfg.resolution));
    } else if (cfg.identity == "deficit") {
        const ParametricSurface surface = parse_surface_spec(cfg.surface_spec);
        if (cfg.random_loops > 0) {
            std::mt19937_64 rng(cfg.seed);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const Domain& dom = surface.domain();
            for (int k = 0; k < cfg.random_loops; ++k) {
                const double wu = (0.05 + 0.10 * unit(rng)) * dom.u_extent();
                const double wv = (0.05 + 0.10 * unit(rng)) * dom.v_extent();
                const double cu =
                    dom.u_min + wu + unit(rng) * (dom.u_extent() - 2 * wu);
                const double cv =
                    dom.v_min + wv + unit(rng) * (dom.v_extent() - 2 * wv);
                const ParamCurve loop = rect_loop(cu - wu, cv - wv, cu + wu, cv + wv);
                const ParamRegion region =
                    rect_region(cu - wu, cv - wv, cu + wu, cv + wv, cfg.resolution,
                                cfg.resolution);
                reports.push_back(
                    verify_deficit_equals_integral(surface, loop, region, cfg.steps));
            }
        } else {
            const LoopSpec spec = parse_loop_spec(cfg.loop_spec);
            const ParamCurve loop = build_loop(spec, surface);
            const auto paired = enclosed_region(spec, surface, cfg.resolution);
            if (!paired)
                throw std::invalid_argument("verify deficit: no enclosed region for this loop");
            VerificationReport r = verify_deficit_equals_integral(surface, loop, paired->region,
                                                                  cfg.steps);
            r = make_report(Identity::DeficitVsIntegral, r.lhs, paired->sign * r.rhs, r.n_u,
                            r.n_v, r.steps);
            reports.push_back(r);
        }
    } else {
        throw std::invalid_argument(
            "unknown identity '" + cfg.identity +
            "' (expected deficit|stokes|gaussmap|triangle|total|foucault)");
    }

    double worst = 0.0;
    for (const auto& r : reports) {
        out << to_json(r).dump() << "\n";
        worst = std::max(worst, r.abs_error);
    }
    return finish_with_tolerance(cfg, worst);
}

int run_mesh(const RunConfig& cfg) {
    const TriMesh mesh = load_mesh_file(cfg.mesh_path);
    std::ofstream file;
    std::ostream& out = open_output(cfg, file);

    if (cfg.mesh_action == "chi") {
        ordered_json j{{"path", cfg.mesh_path}, {"chi", euler_characteristic(mesh)}};
        out << j.dump() << "\n";
        return 0;
    }
    if (cfg.mesh_action == "validate") {
        const ManifoldReport report = validate_closed(mesh);
        ordered_json j{{"path", cfg.mesh_path},
                       {"closed", report.closed},
                       {"oriented", report.oriented}};
        j["boundary_edges"] = ordered_json::array();
        for (auto [a, b] : report.boundary_edges) j["boundary_edges"].push_back({a, b});
        j["nonmanifold_edges"] = ordered_json::array();
        for (auto [a, b] : report.nonmanifold_edges) j["nonmanifold_edges"].push_back({a, b});
        out << j.dump() << "\n";
        return report.closed ? 0 : kExitTolerance;
    }
    if (cfg.mesh_action == "defect") {
        const DefectReport report = total_defect(mesh);
        if (cfg.format == "csv") {
            write_defect_csv(out, report);
        } else {
            out << to_json(report).dump() << "\n";
        }
        return finish_with_tolerance(cfg, report.residual);
    }
    throw std::invalid_argument("unknown mesh action (expected defect|chi|validate)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical curvature, transport and total-curvature checks on surfaces"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--steps", cfg.steps, "transport/integration steps");
        cmd->add_option("--resolution", cfg.resolution, "quadrature cells per axis");
        cmd->add_option("--tolerance", cfg.tolerance, "exit 1 when |error| exceeds this");
        cmd->add_option("--format", cfg.format, "json or csv");
        cmd->add_option("--output", cfg.output, "write records to a file instead of stdout");
        cmd->add_option("--seed", cfg.seed, "seed for randomized sweeps");
    };

    CLI::App* curvature = app.add_subcommand("curvature", "pointwise curvature data");
    curvature->add_option("--surface", cfg.surface_spec)->required();
    curvature->add_option("--at", cfg.at_spec, "chart coordinates u,v");
    curvature->add_option("--grid", cfg.grid_spec, "NxM cell-center grid");
    add_common(curvature);

    CLI::App* transport = app.add_subcommand("transport", "loop deficit by parallel transport");
    transport->add_option("--surface", cfg.surface_spec)->required();
    transport->add_option("--loop", cfg.loop_spec)->required();
    transport->add_flag("--compare-integral", cfg.compare_integral,
                        "also integrate curvature over the enclosed region");
    add_common(transport);

    CLI::App* verify = app.add_subcommand("verify", "identity checks, one JSON record each");
    verify->add_option("identity", cfg.identity,
                       "deficit|stokes|gaussmap|triangle|total|foucault")
        ->required();
    verify->add_option("--surface", cfg.surface_spec);
    verify->add_option("--loop", cfg.loop_spec);
    verify->add_option("--latitude", cfg.latitude, "degrees");
    verify->add_option("--vertices", cfg.vertices_spec, "'octant' or u1,v1,u2,v2,u3,v3");
    verify->add_option("--random-loops", cfg.random_loops, "number of seeded random loops");
    add_common(verify);

    CLI::App* mesh = app.add_subcommand("mesh", "discrete defect analysis");
    mesh->add_option("action", cfg.mesh_action, "defect|chi|validate")->required();
    mesh->add_option("path", cfg.mesh_path, "OFF or OBJ file")->required();
    add_common(mesh);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(curvature)) return run_curvature(cfg);
        if (app.got_subcommand(transport)) return run_transport(cfg);
        if (app.got_subcommand(verify)) return run_verify(cfg);
        if (app.got_subcommand(mesh)) return run_mesh(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gblab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
