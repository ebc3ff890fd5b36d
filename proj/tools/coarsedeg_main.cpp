// coarsedeg command-line front end.
//
// Exit codes (stable contract for CI):
//   0  success / stable degree / witness found
//   1  usage, parse, or evaluation error
//   2  unstable degree
//   3  witness refuted at the given budget
//   4  demo bundle failure
//
// JSON reports go to stdout (or --out); human-readable summaries and the
// wall-clock duration go to stderr so that report bytes depend only on the
// resolved configuration and seed.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coarsedeg/coarsedeg.hpp"

namespace cd = coarsedeg;

namespace {

std::vector<double> parse_radii(const std::string& text) {
    auto bad = [&](const std::string& why) {
        throw cd::CoarseError("could not parse radii '" + text + "': " + why +
                              " (expected start:stop:step or a comma list)");
    };
    auto to_double = [&](const std::string& piece) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(piece, &pos);
            if (pos != piece.size()) bad("trailing characters in '" + piece + "'");
            return v;
        } catch (const std::logic_error&) {
            bad("'" + piece + "' is not a number");
        }
        return 0.0;
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string piece;
        while (std::getline(ss, piece, ':')) parts.push_back(piece);
        if (parts.size() != 3) bad("need exactly start:stop:step");
        const double start = to_double(parts[0]);
        const double stop = to_double(parts[1]);
        const double step = to_double(parts[2]);
        if (step <= 0.0) bad("step must be positive");
        if (start <= 0.0) bad("start must be positive");
        if (stop < start) bad("stop must be >= start");
        for (double r = start; r <= stop + 1e-9; r += step) out.push_back(r);
    } else {
        std::stringstream ss(text);
        std::string piece;
        while (std::getline(ss, piece, ',')) out.push_back(to_double(piece));
    }
    if (out.empty()) bad("no radii given");
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i] >= out[i + 1]) bad("radii must be strictly ascending");
    if (out.front() <= 0.0) bad("radii must be positive");
    return out;
}

cd::Window window_of(int dim, std::int64_t half_width, double spacing) {
    cd::Window w = cd::make_window(dim, half_width);
    w.spacing = spacing;
    cd::require_valid(w);
    return w;
}

std::vector<cd::Window> ladder_of(int dim, std::int64_t top, double spacing) {
    std::vector<std::int64_t> rungs;
    for (std::int64_t hw : {top / 4, top / 2, top, 2 * top}) {
        hw = std::max<std::int64_t>(hw, 2);
        if (rungs.empty() || hw > rungs.back()) rungs.push_back(hw);
    }
    std::vector<cd::Window> ladder;
    for (const std::int64_t hw : rungs) ladder.push_back(window_of(dim, hw, spacing));
    return ladder;
}

void emit(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw cd::CoarseError("could not open output file '" + out_path + "'");
    file << body;
}

void require_json_format(const std::string& format, const char* command) {
    if (format != "json")
        throw cd::CoarseError(std::string(command) +
                              " supports only --format json (csv rows are defined for "
                              "degree and cfpp)");
}

// Options shared by the map-driven subcommands.
struct CommonOpts {
    std::string map_text;
    int dim = 0;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_map = true) {
    if (with_map)
        sub->add_option("--map", o.map_text,
                        "map text: a builtin (identity, reflect(i), antipodal, "
                        "translate(v1,...,vn), rotate(theta[,i,j]), fold{...}, "
                        "perturb(eps,seed){...}, compose{...;...}) or a component "
                        "tuple \"(expr1, ..., exprn)\" over x1..xn with + - * / "
                        "abs min max sqrt floor")
            ->required();
    sub->add_option("--dim", o.dim, "ambient dimension (required by dimension-less builtins)");
    sub->add_option("--seed", o.seed, "RNG seed; identical config + seed => identical report bytes")
        ->default_val(0);
    sub->add_option("--format", o.format, "report format")
        ->default_val("json")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out_path, "write the report to a file instead of stdout");
}

int run_degree(const CommonOpts& o, std::int64_t L, double spacing, std::size_t points) {
    const cd::MapSpec m = cd::parse_map_text(o.map_text, o.dim, false);
    const cd::Window w = window_of(m.dim, L, spacing);
    const cd::DegreeResult r = cd::degree(m, w, points, o.seed);

    cd::Json report = cd::degree_json(r);
    report["command"] = "degree";
    report["version"] = cd::kVersion;
    report["seed"] = o.seed;
    report["config"] = cd::Json{{"map", m.label},
                                {"dim", m.dim},
                                {"window", L},
                                {"spacing", spacing},
                                {"test_points", points}};
    report["evidence"] = cd::degree_evidence_json(r);

    if (o.format == "csv") {
        std::ostringstream csv;
        csv << "index";
        for (int j = 1; j <= m.dim; ++j) csv << ",x" << j;
        csv << ",covering,covering_half\n";
        for (std::size_t k = 0; k < r.test_points.size(); ++k) {
            csv << k;
            for (const double c : r.test_points[k]) csv << "," << cd::format_double(c);
            csv << "," << r.coverings[k] << "," << r.coverings_half[k] << "\n";
        }
        emit(csv.str(), o.out_path);
    } else {
        emit(report.dump(2) + "\n", o.out_path);
    }

    std::ostringstream line;
    line << "degree: map=" << m.label << " window=" << L << " spacing="
         << cd::format_double(spacing);
    if (r.d) line << " d=" << *r.d << " stable=true";
    else line << " unstable (covering counts disagree across points or rungs)";
    std::fprintf(stderr, "%s\n", line.str().c_str());
    return r.stable ? 0 : 2;
}

int run_cfpp(const CommonOpts& o, bool halfspace, double budget, const std::string& radii_text,
             std::size_t points_per_sphere) {
    const cd::MapSpec m = cd::parse_map_text(o.map_text, o.dim, halfspace);
    const std::vector<double> radii = parse_radii(radii_text);
    const cd::SearchVerdict v = cd::search_witness(m, budget, radii, points_per_sphere, o.seed);
    const bool verified = v.found && cd::verify_witness(m, v.witness);

    cd::Json report = cd::verdict_json(v);
    report["command"] = "cfpp";
    report["version"] = cd::kVersion;
    report["seed"] = o.seed;
    report["config"] = cd::Json{{"map", m.label},
                                {"dim", m.dim},
                                {"halfspace", halfspace},
                                {"budget", budget},
                                {"radii", radii_text},
                                {"points_per_sphere", points_per_sphere}};
    if (v.found) report["witness_verified"] = verified;

    if (o.format == "csv") {
        std::ostringstream csv;
        csv << "r,best_max_dist,within_budget\n";
        for (std::size_t i = 0; i < v.radii.size(); ++i)
            csv << cd::format_double(v.radii[i]) << ","
                << cd::format_double(v.best_max_dist[i]) << ","
                << (v.best_max_dist[i] <= budget ? 1 : 0) << "\n";
        emit(csv.str(), o.out_path);
    } else {
        emit(report.dump(2) + "\n", o.out_path);
    }

    std::fprintf(stderr, "cfpp: map=%s budget=%s %s\n", m.label.c_str(),
                 cd::format_double(budget).c_str(),
                 v.found ? (verified ? "witness found and verified" : "witness found")
                         : "refuted at this budget");
    return v.found ? 0 : 3;
}

int run_homotopy(const CommonOpts& o, bool halfspace, double ball, std::int64_t L,
                 double spacing, std::size_t t_knots, std::size_t samples,
                 const std::string& radii_text) {
    const cd::MapSpec m = cd::parse_map_text(o.map_text, o.dim, halfspace);
    const cd::Window w = window_of(m.dim, L, spacing);
    const std::vector<double> t_grid = cd::uniform_t_grid(t_knots);
    const std::vector<double> radii = parse_radii(radii_text);

    const cd::HomotopyFamily fam = cd::linear_homotopy(m);
    const cd::BornologousModulus mod =
        cd::check_uniformly_bornologous(fam, radii, t_grid, w, 200, o.seed);
    const cd::UniformPropernessReport prop =
        cd::check_uniformly_proper(fam, ball, ladder_of(m.dim, L, spacing), t_grid, o.seed);
    const cd::PseudocontinuityReport pc = cd::check_pseudocontinuity(fam, t_grid, w, o.seed);
    const cd::TriangleBound tb = cd::triangle_bound_check(m, ball, w, samples, o.seed);

    cd::Json report;
    report["command"] = "homotopy";
    report["version"] = cd::kVersion;
    report["seed"] = o.seed;
    report["config"] = cd::Json{{"map", m.label},
                                {"dim", m.dim},
                                {"halfspace", halfspace},
                                {"ball", ball},
                                {"window", L},
                                {"spacing", spacing},
                                {"t_knots", t_knots},
                                {"samples", samples},
                                {"radii", radii_text}};
    report["uniformly_bornologous"] = cd::modulus_json(mod);
    report["uniformly_proper"] = cd::uniform_properness_json(prop);
    report["pseudocontinuity"] = cd::pseudocontinuity_json(pc);
    report["triangle_bound"] = cd::triangle_json(tb);
    emit(report.dump(2) + "\n", o.out_path);

    std::fprintf(stderr,
                 "homotopy: map=%s properness=%s pseudocontinuity_jump=%s K=%s C=%s "
                 "violations=%zu\n",
                 m.label.c_str(), prop.proper_at_scale ? "proper-at-scale" : "suspect",
                 cd::format_double(pc.max_jump).c_str(), cd::format_double(tb.K).c_str(),
                 cd::format_double(tb.C).c_str(), tb.violations.size());
    return 0;
}

int run_coarse_check(const CommonOpts& o, bool halfspace, double ball, std::int64_t L,
                     double spacing, const std::string& radii_text, std::size_t pairs) {
    const cd::MapSpec m = cd::parse_map_text(o.map_text, o.dim, halfspace);
    const cd::Window w = window_of(m.dim, L, spacing);
    const std::vector<double> radii = parse_radii(radii_text);

    const cd::BornologousModulus mod =
        cd::estimate_bornologous_modulus(m, radii, w, pairs, o.seed);
    const cd::PropernessReport prop =
        cd::check_properness(m, ball, ladder_of(m.dim, L, spacing), o.seed);

    cd::Json report;
    report["command"] = "coarse-check";
    report["version"] = cd::kVersion;
    report["seed"] = o.seed;
    report["config"] = cd::Json{{"map", m.label},
                                {"dim", m.dim},
                                {"halfspace", halfspace},
                                {"ball", ball},
                                {"window", L},
                                {"spacing", spacing},
                                {"radii", radii_text},
                                {"pairs_per_radius", pairs}};
    report["bornologous"] = cd::modulus_json(mod);
    report["properness"] = cd::properness_json(prop);
    emit(report.dump(2) + "\n", o.out_path);

    std::fprintf(stderr, "coarse-check: map=%s S(%s)=%s properness=%s\n", m.label.c_str(),
                 cd::format_double(radii.back()).c_str(),
                 cd::format_double(mod.s_values.back()).c_str(),
                 prop.proper_at_scale ? "proper-at-scale" : "suspect");
    return 0;
}

int run_demo(const std::string& which, const CommonOpts& o) {
    const cd::DemoOutcome outcome = cd::run_demo(which, o.seed);
    emit(outcome.report.dump(2) + "\n", o.out_path);
    for (const std::string& line : outcome.table) std::fprintf(stderr, "%s\n", line.c_str());
    std::fprintf(stderr, "demo %s: %s\n", which.c_str(), outcome.pass ? "PASS" : "FAIL");
    return outcome.pass ? 0 : 4;
}

int run_dump_chain(const CommonOpts& o, std::int64_t L, double spacing, bool boundary) {
    if (o.dim < 1) throw cd::CoarseError("dump-chain needs --dim >= 1");
    const cd::Window w = window_of(o.dim, L, spacing);
    cd::Chain c = cd::fundamental_cycle(w);
    if (boundary) c = cd::boundary(c);

    cd::Json report = cd::chain_json(c);
    report["command"] = "dump-chain";
    report["version"] = cd::kVersion;
    report["config"] = cd::Json{
        {"dim", o.dim}, {"window", L}, {"spacing", spacing}, {"boundary", boundary}};
    emit(report.dump(2) + "\n", o.out_path);

    std::fprintf(stderr, "dump-chain: dim=%d window=%lld q=%d terms=%zu\n", o.dim,
                 static_cast<long long>(L), c.q, c.terms.size());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "coarsedeg: controlled lattice chains, coarse mapping degree, and "
        "ray-witness search on Euclidean windows"};
    app.set_version_flag("--version", cd::kVersion);
    app.require_subcommand(1);

    CommonOpts deg_opts, cfpp_opts, hom_opts, chk_opts, demo_opts, dump_opts;

    // degree
    auto* deg = app.add_subcommand(
        "degree", "Coarse mapping degree of a full-space map via signed covering counts");
    add_common(deg, deg_opts);
    std::int64_t deg_window = 16;
    double deg_spacing = 1.0;
    std::size_t deg_points = 8;
    deg->add_option("--window", deg_window, "window half-width in lattice units")
        ->default_val(16);
    deg->add_option("--spacing", deg_spacing, "lattice spacing in world units")
        ->default_val(1.0);
    deg->add_option("--points", deg_points, "number of generic test points")->default_val(8);

    // cfpp
    auto* cfpp = app.add_subcommand(
        "cfpp", "Search for a coarse fixed point witness (common rays within a budget)");
    add_common(cfpp, cfpp_opts);
    bool cfpp_half = false;
    double cfpp_budget = 0.0;
    std::string cfpp_radii = "10:100:10";
    std::size_t cfpp_points = 64;
    cfpp->add_flag("--halfspace", cfpp_half, "restrict the map to the upper half-space");
    cfpp->add_option("--budget", cfpp_budget, "ray-distance budget R (world units)")
        ->required();
    cfpp->add_option("--radii", cfpp_radii, "sphere radii, start:stop:step or comma list")
        ->default_val("10:100:10");
    cfpp->add_option("--points", cfpp_points, "sample points per sphere")->default_val(64);

    // homotopy
    auto* hom = app.add_subcommand(
        "homotopy",
        "Check the straight-line family t*h(x) - (1-t)*x: uniform bornologous modulus, "
        "uniform properness, pseudocontinuity, and the similar-triangles ray bound");
    add_common(hom, hom_opts);
    bool hom_half = false;
    double hom_ball = 1.0;
    std::int64_t hom_window = 32;
    double hom_spacing = 1.0;
    std::size_t hom_tknots = 11;
    std::size_t hom_samples = 10000;
    std::string hom_radii = "1:4:1";
    hom->add_flag("--halfspace", hom_half, "restrict the map to the upper half-space");
    hom->add_option("--ball", hom_ball, "radius T of the target ball")->default_val(1.0);
    hom->add_option("--window", hom_window, "window half-width in lattice units")
        ->default_val(32);
    hom->add_option("--spacing", hom_spacing, "lattice spacing in world units")
        ->default_val(1.0);
    hom->add_option("--tgrid", hom_tknots, "number of t-knots in [0,1]")->default_val(11);
    hom->add_option("--samples", hom_samples, "seeded samples for the triangle bound")
        ->default_val(10000);
    hom->add_option("--radii", hom_radii, "modulus radii, start:stop:step or comma list")
        ->default_val("1:4:1");

    // coarse-check
    auto* chk = app.add_subcommand(
        "coarse-check", "Estimate the bornologous modulus and properness of a single map");
    add_common(chk, chk_opts);
    bool chk_half = false;
    double chk_ball = 2.0;
    std::int64_t chk_window = 16;
    double chk_spacing = 1.0;
    std::string chk_radii = "1:8:1";
    std::size_t chk_pairs = 200;
    chk->add_flag("--halfspace", chk_half, "restrict the map to the upper half-space");
    chk->add_option("--ball", chk_ball, "radius T of the properness target ball")
        ->default_val(2.0);
    chk->add_option("--window", chk_window, "window half-width in lattice units")
        ->default_val(16);
    chk->add_option("--spacing", chk_spacing, "lattice spacing in world units")
        ->default_val(1.0);
    chk->add_option("--radii", chk_radii, "modulus radii, start:stop:step or comma list")
        ->default_val("1:8:1");
    chk->add_option("--pairs", chk_pairs, "random pairs per radius")->default_val(200);

    // demo
    auto* demo = app.add_subcommand(
        "demo", "Run a narrative bundle and print a pass/fail table with all numbers");
    std::string demo_which;
    demo->add_option("which", demo_which, "bundle to run")
        ->required()
        ->check(CLI::IsMember({"lemma1", "lemma2", "lemma3", "theorem"}));
    add_common(demo, demo_opts, /*with_map=*/false);

    // dump-chain
    auto* dump = app.add_subcommand(
        "dump-chain", "Serialize the fundamental cycle of a window (or its boundary)");
    std::int64_t dump_window = 4;
    double dump_spacing = 1.0;
    bool dump_boundary = false;
    dump->add_option("--dim", dump_opts.dim, "ambient dimension")->required();
    dump->add_option("--window", dump_window, "window half-width in lattice units")
        ->default_val(4);
    dump->add_option("--spacing", dump_spacing, "lattice spacing in world units")
        ->default_val(1.0);
    dump->add_flag("--boundary", dump_boundary, "dump the boundary of the cycle instead");
    dump->add_option("--out", dump_opts.out_path, "write the report to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const auto started = std::chrono::steady_clock::now();
    int exit_code = 1;
    try {
        if (deg->parsed()) {
            exit_code = run_degree(deg_opts, deg_window, deg_spacing, deg_points);
        } else if (cfpp->parsed()) {
            exit_code = run_cfpp(cfpp_opts, cfpp_half, cfpp_budget, cfpp_radii, cfpp_points);
        } else if (hom->parsed()) {
            require_json_format(hom_opts.format, "homotopy");
            exit_code = run_homotopy(hom_opts, hom_half, hom_ball, hom_window, hom_spacing,
                                     hom_tknots, hom_samples, hom_radii);
        } else if (chk->parsed()) {
            require_json_format(chk_opts.format, "coarse-check");
            exit_code = run_coarse_check(chk_opts, chk_half, chk_ball, chk_window,
                                         chk_spacing, chk_radii, chk_pairs);
        } else if (demo->parsed()) {
            require_json_format(demo_opts.format, "demo");
            exit_code = run_demo(demo_which, demo_opts);
        } else if (dump->parsed()) {
            dump_opts.format = "json";
            exit_code = run_dump_chain(dump_opts, dump_window, dump_spacing, dump_boundary);
        }
    } catch (const cd::ParseError& e) {
        std::fprintf(stderr, "map parse error: %s\n", e.what());
        return 1;
    } catch (const cd::EvalError& e) {
        std::fprintf(stderr, "evaluation error: %s\n", e.what());
        return 1;
    } catch (const cd::CoarseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    std::fprintf(stderr, "completed in %lld ms\n", static_cast<long long>(elapsed));
    return exit_code;
}
