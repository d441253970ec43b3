#include "siegel/cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <siegel/blaschke.hpp>
#include <siegel/boundary.hpp>
#include <siegel/errors.hpp>
#include <siegel/format.hpp>
#include <siegel/quadratic_map.hpp>
#include <siegel/render.hpp>
#include <siegel/rotation.hpp>
#include <siegel/thurston.hpp>

#include "siegel/cli/run_config.hpp"

namespace siegel::cli {
namespace {

using json = nlohmann::json;

std::string fmt(double x) { return format_number(x); }

std::string fmt(Complex z) {
    if (z.imag() == 0.0) return format_number(z.real());
    std::string im = format_number(std::abs(z.imag()));
    if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im + "i";
    return format_number(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

std::string fmt(const SpherePoint& p) { return p.is_infinite() ? "inf" : fmt(p.value()); }

json jnum(double x) {
    if (!std::isfinite(x)) return format_number(x);
    return std::stod(format_number(x));
}

json jnum(Complex z) { return json::array({jnum(z.real()), jnum(z.imag())}); }

json jnum(const SpherePoint& p) { return p.is_infinite() ? json("inf") : jnum(p.value()); }

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << r[i];
            if (i + 1 < r.size()) out << std::string(width[i] - r[i].size() + 2, ' ');
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void print_pairs(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::size_t w = 0;
    for (const auto& [k, v] : pairs) w = std::max(w, k.size());
    for (const auto& [k, v] : pairs) out << k << std::string(w - k.size() + 2, ' ') << v << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Sends text to --out when given, otherwise to stdout.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw DomainError("cannot open " + cfg.out + " for writing");
    os << text;
    if (!os) throw DomainError("failed writing " + cfg.out);
}

struct ExampleCase {
    const char* example;
    const char* case_name;
    Complex c;
    std::array<Complex, 2> expected;
    double tolerance;
};

double pair_distance(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
    const double direct = std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
    const double swapped = std::max(std::abs(a[0] - b[1]), std::abs(a[1] - b[0]));
    return std::min(direct, swapped);
}

int run_verify_examples(const RunConfig& cfg, std::ostream& out) {
    const std::array<ExampleCase, 4> cases{{
        {"1", "1", {2.0, 0.0}, {Complex(1.0, 0.0), Complex(0.8, 0.0)}, 1e-9},
        {"1", "2", {2.0, 0.0}, {Complex(1.432575, 0.0), Complex(0.644348, 0.0)}, 1e-5},
        {"2", "1", {-2.0, 0.0}, {Complex(1.0, 0.0), Complex(-0.8, 0.0)}, 1e-9},
        {"2", "2", {-2.0, 0.0}, {Complex(-0.5, 1.936491), Complex(-0.5, -1.936491)}, 1e-5},
    }};
    bool all_ok = true;
    std::vector<std::vector<std::string>> rows;
    json arr = json::array();
    for (const auto& ex : cases) {
        const auto branches = all_branches(ex.c);
        const BranchSolution* best = nullptr;
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& b : branches) {
            const double d = pair_distance(b.roots, ex.expected);
            if (d < best_d) {
                best_d = d;
                best = &b;
            }
        }
        if (best == nullptr) throw DomainError("no branch solution for c = " + fmt(ex.c));
        const bool ok = best_d < ex.tolerance;
        all_ok = all_ok && ok;
        rows.push_back({ex.example, ex.case_name, fmt(ex.c), std::string(to_string(best->data.equation)),
                        fmt(best->data.v), fmt(best->data.w), fmt(best->roots[0]), fmt(best->roots[1]), fmt(best_d),
                        fmt(ex.tolerance), ok ? "ok" : "FAIL"});
        arr.push_back({{"example", ex.example},
                       {"case", ex.case_name},
                       {"c", jnum(ex.c)},
                       {"branch", std::string(to_string(best->data.equation))},
                       {"v", jnum(best->data.v)},
                       {"w", jnum(best->data.w)},
                       {"roots", json::array({jnum(best->roots[0]), jnum(best->roots[1])})},
                       {"residual", jnum(best_d)},
                       {"tolerance", jnum(ex.tolerance)},
                       {"ok", ok}});
    }
    if (cfg.json) {
        out << json{{"examples", arr}, {"all_ok", all_ok}}.dump(2) << '\n';
    } else {
        print_table(out, {"example", "case", "c", "branch", "v", "w", "root1", "root2", "residual", "tolerance", "status"},
                    rows);
    }
    return all_ok ? kExitOk : kExitDomain;
}

struct TunedMap {
    SpherePoint c;
    RotationNumber theta;
    BlaschkeProduct model;
    TuneResult result;
};

TunedMap tune_for(const RunConfig& cfg) {
    const RotationNumber theta = parse_theta(cfg.theta);
    const SpherePoint c = parse_parameter(cfg.c);
    (void)make_map(c, theta);
    const BlaschkeProduct B = phi_inverse(c);
    TuneOptions opts;
    opts.final_iterations = cfg.iterations;
    const TuneResult r = tune_prefactor(B.p(), B.q(), theta, cfg.tol, opts);
    return {c, theta, B.with_angle(r.t), r};
}

int run_tune(const RunConfig& cfg, std::ostream& out) {
    const TunedMap m = tune_for(cfg);
    const double err = std::abs(m.result.rho - m.theta.value());
    if (cfg.json) {
        out << json{{"c", jnum(m.c)},
                    {"theta", jnum(m.theta.value())},
                    {"p", jnum(m.model.p())},
                    {"q", jnum(m.model.q())},
                    {"t", jnum(m.result.t)},
                    {"rho", jnum(m.result.rho)},
                    {"error", jnum(err)},
                    {"tolerance", jnum(cfg.tol)},
                    {"bisection_steps", m.result.iterations},
                    {"iterates", cfg.iterations},
                    {"bracket", json::array({jnum(m.result.bracket[0]), jnum(m.result.bracket[1])})}}
                   .dump(2)
            << '\n';
    } else {
        print_pairs(out, {{"c", fmt(m.c)},
                          {"theta", fmt(m.theta.value())},
                          {"p", fmt(m.model.p())},
                          {"q", fmt(m.model.q())},
                          {"t", fmt(m.result.t)},
                          {"rho", fmt(m.result.rho)},
                          {"|rho - theta|", fmt(err)},
                          {"tolerance", fmt(cfg.tol)},
                          {"bisection steps", std::to_string(m.result.iterations)},
                          {"iterates", std::to_string(cfg.iterations)}});
    }
    return kExitOk;
}

int run_boundary(const RunConfig& cfg, std::ostream& out) {
    const RotationNumber theta = parse_theta(cfg.theta);
    const SpherePoint c = parse_parameter(cfg.c);
    const BoundaryCurve curve = boundary_orbit(c, theta, cfg.samples);
    std::ostringstream text;
    if (cfg.json) {
        json pts = json::array();
        for (const auto& s : curve.samples()) pts.push_back({jnum(s.angle), jnum(s.point.real()), jnum(s.point.imag())});
        text << json{{"c", jnum(c)}, {"theta", jnum(theta.value())}, {"samples", pts}}.dump(2) << '\n';
    } else {
        write_boundary_csv(text, curve);
    }
    emit(cfg, out, text.str());
    return kExitOk;
}

int run_crossratio(const RunConfig& cfg, std::ostream& out) {
    const RotationNumber theta = parse_theta(cfg.theta);
    const SpherePoint c = parse_parameter(cfg.c);
    const BoundaryCurve curve = boundary_orbit(c, theta, cfg.samples);
    const CrossRatioReport r = quasicircle_delta(curve, cfg.trials, cfg.seed);
    json angles = json::array();
    for (double a : r.arg_angles) angles.push_back(jnum(a));
    out << json{{"c", jnum(c)},
                {"theta", jnum(theta.value())},
                {"samples", curve.size()},
                {"trials", cfg.trials},
                {"seed", cfg.seed},
                {"min_abs", jnum(r.min_abs)},
                {"arg_quadruple", r.arg_quadruple},
                {"arg_angles", angles},
                {"quadruples_tested", r.quadruples_tested}}
               .dump(2)
        << '\n';
    return kExitOk;
}

int run_xi_scan(const RunConfig& cfg, std::ostream& out) {
    if (cfg.grid_file.empty()) throw UsageError("xi-scan needs --grid-file");
    const RotationNumber theta = parse_theta(cfg.theta);
    std::istringstream in(read_file(cfg.grid_file));
    const std::vector<SpherePoint> grid = read_grid_csv(in);
    const auto entries = xi_scan(grid, theta, cfg.samples);
    std::ostringstream text;
    if (cfg.json) {
        json arr = json::array();
        for (const auto& e : entries) {
            arr.push_back({{"c", jnum(e.c)},
                           {"distance", jnum(e.distance)},
                           {"status", std::string(to_string(e.status))},
                           {"message", e.message}});
        }
        text << arr.dump(2) << '\n';
    } else {
        write_xi_scan_csv(text, entries);
    }
    emit(cfg, out, text.str());
    return kExitOk;
}

std::string fraction_text(const Fraction& f) {
    if (f.den == 1) return std::to_string(f.num);
    return std::to_string(f.num) + "/" + std::to_string(f.den);
}

int run_thurston_check(const RunConfig& cfg, std::ostream& out) {
    if (cfg.spec_file.empty() && cfg.signature.empty()) {
        throw UsageError("thurston-check needs --spec and/or --signature");
    }
    json doc = json::object();
    std::vector<std::pair<std::string, std::string>> pairs;
    if (!cfg.spec_file.empty()) {
        const MulticurveSpec spec = parse_multicurve_spec(read_file(cfg.spec_file));
        const ThurstonMatrix a = thurston_matrix(spec);
        const EigenvalueResult ev = leading_eigenvalue(a);
        json rows = json::array();
        for (std::size_t i = 0; i < a.size(); ++i) {
            json row = json::array();
            std::string line;
            for (std::size_t j = 0; j < a.size(); ++j) {
                row.push_back(jnum(a(i, j)));
                line += (j ? " " : "") + fmt(a(i, j));
            }
            rows.push_back(row);
            pairs.emplace_back(i == 0 ? "matrix" : "", line);
        }
        const std::string verdict = ev.obstructed ? "obstruction" : "no obstruction";
        doc["curves"] = spec.n;
        doc["matrix"] = rows;
        doc["leading_eigenvalue"] = jnum(ev.value);
        doc["verdict"] = verdict;
        pairs.insert(pairs.begin(), {"curves", std::to_string(spec.n)});
        pairs.emplace_back("leading eigenvalue", fmt(ev.value));
        pairs.emplace_back("verdict", verdict);
    }
    if (!cfg.signature.empty()) {
        const OrbifoldEuler e = orbifold_euler(parse_signature(cfg.signature));
        doc["signature"] = cfg.signature;
        doc["euler_characteristic"] = fraction_text(e.chi);
        doc["euler_value"] = jnum(e.chi.value());
        doc["hyperbolic"] = e.hyperbolic;
        pairs.emplace_back("signature", cfg.signature);
        pairs.emplace_back("euler characteristic", fraction_text(e.chi));
        pairs.emplace_back("hyperbolic", e.hyperbolic ? "yes" : "no");
    }
    if (cfg.json) {
        out << doc.dump(2) << '\n';
    } else {
        print_pairs(out, pairs);
    }
    return kExitOk;
}

int run_render(const RunConfig& cfg, std::ostream& out) {
    if (cfg.out.empty()) throw UsageError("render needs --out");
    const RotationNumber theta = parse_theta(cfg.theta);
    const SpherePoint c = parse_parameter(cfg.c);
    const auto g = make_map(c, theta);
    RasterSpec spec;
    spec.center = parse_complex(cfg.center);
    spec.width = cfg.width;
    std::tie(spec.px_width, spec.px_height) = parse_pixels(cfg.pixels);
    spec.max_iter = cfg.max_iter;
    spec.trap_radius = cfg.trap_radius;
    const LabelGrid grid = classify_grid(g, spec);
    write_image(grid, cfg.out);
    const auto total = static_cast<double>(grid.labels.size());
    const auto escaped = static_cast<double>(std::count(grid.labels.begin(), grid.labels.end(), kEscaped));
    const double unresolved = grid.unresolved_fraction();
    const double hit = 1.0 - unresolved - escaped / total;
    if (cfg.json) {
        out << json{{"out", cfg.out},
                    {"width", grid.width},
                    {"height", grid.height},
                    {"trap_radius", jnum(grid.trap_radius)},
                    {"hit_fraction", jnum(hit)},
                    {"escaped_fraction", jnum(escaped / total)},
                    {"unresolved_fraction", jnum(unresolved)}}
                   .dump(2)
            << '\n';
    } else {
        print_pairs(out, {{"image", cfg.out},
                          {"pixels", std::to_string(grid.width) + "x" + std::to_string(grid.height)},
                          {"trap radius", fmt(grid.trap_radius)},
                          {"hit fraction", fmt(hit)},
                          {"escaped fraction", fmt(escaped / total)},
                          {"unresolved fraction", fmt(unresolved)}});
    }
    return kExitOk;
}

int run_comparability(const RunConfig& cfg, std::ostream& out) {
    const TunedMap m = tune_for(cfg);
    const ComparabilityReport r = comparability_report(m.model, m.theta, cfg.n_max, cfg.circle_samples);
    if (cfg.json) {
        json rows = json::array();
        for (const auto& row : r.rows) {
            rows.push_back({{"n", row.n},
                            {"q_n", row.q_n},
                            {"q_next", row.q_next},
                            {"backward_min", jnum(row.backward_min)},
                            {"backward_max", jnum(row.backward_max)},
                            {"next_min", jnum(row.next_min)},
                            {"next_max", jnum(row.next_max)},
                            {"flagged", row.flagged}});
        }
        out << json{{"c", jnum(m.c)}, {"t", jnum(m.result.t)}, {"rows", rows}, {"K", jnum(r.K)}, {"flagged", r.flagged}}
                   .dump(2)
            << '\n';
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : r.rows) {
            rows.push_back({std::to_string(row.n), std::to_string(row.q_n), std::to_string(row.q_next),
                            fmt(row.backward_min), fmt(row.backward_max), fmt(row.next_min), fmt(row.next_max),
                            std::to_string(row.flagged)});
        }
        print_pairs(out, {{"c", fmt(m.c)}, {"t", fmt(m.result.t)}});
        print_table(out, {"n", "q_n", "q_n+1", "back_min", "back_max", "next_min", "next_max", "flagged"}, rows);
        print_pairs(out, {{"K", fmt(r.K)}, {"flagged", std::to_string(r.flagged)}});
    }
    return kExitOk;
}

/// Value following --config, if present.
std::string find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--") break;
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Numerical experiments with bounded-type Siegel disks of quadratic rational maps", "siegel-lab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "JSON run configuration supplying defaults");
    app.add_flag("--json", cfg.json, "Print JSON instead of tables");
    app.add_option("--seed", cfg.seed, "Random seed");
    app.add_option("--theta", cfg.theta, "Rotation number: 'golden' or a decimal in (0,1)");

    using Runner = std::function<int(const RunConfig&, std::ostream&)>;
    std::vector<std::pair<CLI::App*, Runner>> commands;
    auto add = [&](const char* name, const char* help, Runner run) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, std::move(run));
        return sub;
    };

    auto* verify = add("verify-examples", "Reproduce the worked Blaschke examples", run_verify_examples);
    (void)verify;

    auto* tune = add("tune", "Tune the Blaschke prefactor to rotation number theta", run_tune);
    tune->add_option("--c", cfg.c, "Critical parameter: 'inf' or re,im");
    tune->add_option("--tol", cfg.tol, "Target |rho - theta|");
    tune->add_option("--iters", cfg.iterations, "Iterates for the final rotation-number measurement");

    auto* boundary = add("boundary", "Sample the Siegel boundary as the critical orbit", run_boundary);
    boundary->add_option("--c", cfg.c, "Critical parameter: 'inf' or re,im");
    boundary->add_option("--n", cfg.samples, "Number of orbit points");
    boundary->add_option("--out", cfg.out, "Output CSV path (default stdout)");

    auto* cross = add("crossratio", "Minimum cross ratio over ordered boundary quadruples", run_crossratio);
    cross->add_option("--c", cfg.c, "Critical parameter: 'inf' or re,im");
    cross->add_option("--n", cfg.samples, "Number of orbit points");
    cross->add_option("--trials", cfg.trials, "Number of sampled quadruples");

    auto* xi = add("xi-scan", "Distance from c to its boundary over a grid of parameters", run_xi_scan);
    xi->add_option("--grid-file", cfg.grid_file, "CSV of parameters (re,im or inf)");
    xi->add_option("--n", cfg.samples, "Number of orbit points per parameter");
    xi->add_option("--out", cfg.out, "Output CSV path (default stdout)");

    auto* thurston = add("thurston-check", "Thurston matrix eigenvalue and orbifold Euler characteristic",
                         run_thurston_check);
    thurston->add_option("--spec", cfg.spec_file, "Multicurve JSON {\"n\":..,\"preimages\":[[j,i,d],..]}");
    thurston->add_option("--signature", cfg.signature, "Orbifold signature, e.g. 2,2,2,3 or inf,inf");

    auto* render = add("render", "Orbit-trap classification image (binary PPM)", run_render);
    render->add_option("--c", cfg.c, "Critical parameter: 'inf' or re,im");
    render->add_option("--center", cfg.center, "Viewport center re,im");
    render->add_option("--width", cfg.width, "Viewport width");
    render->add_option("--px", cfg.pixels, "Image size WxH");
    render->add_option("--iters", cfg.max_iter, "Maximum iterations per pixel");
    render->add_option("--trap", cfg.trap_radius, "Trap radius (0 selects the default)");
    render->add_option("--out", cfg.out, "Output PPM path");

    auto* comp = add("comparability", "Closest-return comparability ratios for the tuned map", run_comparability);
    comp->add_option("--c", cfg.c, "Critical parameter: 'inf' or re,im");
    comp->add_option("--tol", cfg.tol, "Tuning tolerance");
    comp->add_option("--iters", cfg.iterations, "Iterates for the final rotation-number measurement");
    comp->add_option("--nmax", cfg.n_max, "Largest convergent index");
    comp->add_option("--samples", cfg.circle_samples, "Circle sample points");

    try {
        const std::string path = find_config_path(args);
        if (!path.empty()) {
            std::ifstream in(path);
            if (!in) throw UsageError("cannot open config file " + path);
            std::ostringstream ss;
            ss << in.rdbuf();
            cfg = config_from_json(ss.str());
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        for (const auto& [sub, run] : commands) {
            if (sub->parsed()) return run(cfg, out);
        }
        err << app.help();
        return kExitUsage;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}

} // namespace siegel::cli
