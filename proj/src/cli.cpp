#include "qbounce/cli.hpp"

#include "qbounce/airy.hpp"
#include "qbounce/csv.hpp"
#include "qbounce/errors.hpp"
#include "qbounce/propagator.hpp"
#include "qbounce/render.hpp"
#include "qbounce/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace qbounce::cli {
namespace {

struct Grid1D {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;

    std::vector<double> values(const char* name) const
    {
        if (count == 0) {
            throw std::invalid_argument(std::string(name) + ": need at least one node");
        }
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw std::invalid_argument(std::string(name) + ": need finite bounds with min <= max");
        }
        return linspace(lo, hi, count);
    }
};

struct Config {
    PhysicalParams params;
    std::string model = "1sb";
    std::string method = "sca";
    std::size_t ee_terms = 10000;
    std::string out_path;
    std::string raster_path;
    double gamma = 1.0;
    std::optional<double> scale;

    double x_i = 0.0;
    double x_f = 0.0;
    double T = 0.0;
    Grid1D t_grid;
    Grid1D x_grid;

    double sigma = 2.5;
    double p0 = 0.0;

    std::size_t zeros = 0;

    std::string verify_kind;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
};

// Writes either to the caller's stream or to the file named by --out.
void emit(const Config& c, std::ostream& out, const std::function<void(std::ostream&)>& write)
{
    if (c.out_path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(c.out_path, std::ios::binary);
    write(file);
    if (!file) {
        throw std::runtime_error("cannot write " + c.out_path);
    }
}

render::RenderSpec render_spec(const Config& c, render::Palette palette)
{
    render::RenderSpec spec;
    spec.palette = palette;
    spec.gamma = c.gamma;
    spec.fixed_scale = c.scale;
    spec.validate();
    return spec;
}

nlohmann::ordered_json path_json(const ClassicalPath& path, const PhysicalParams& p)
{
    nlohmann::ordered_json j;
    j["n"] = path.n;
    j["v_i"] = path.v_i;
    j["v_f"] = path.v_f;
    j["v_m"] = path.v_m;
    j["S"] = path.action;
    j["D"] = classical::vvd(path, path.ends, p);
    j["m"] = path.morse;
    j["tau"] = path.tau;
    j["tau_half"] = path.tau_half;
    j["focal_times"] = path.focal_times;
    j["k0"] = path.k0 ? nlohmann::ordered_json(*path.k0) : nlohmann::ordered_json(nullptr);
    j["caustic"] = path.caustic;
    return j;
}

int run_paths(const Config& c, std::ostream& out)
{
    const Endpoints e{c.x_i, c.x_f, c.T};
    const auto set = classical::enumerate_paths(e, c.params, parse_model(c.model));
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& path : set.paths) {
        doc.push_back(path_json(path, c.params));
    }
    emit(c, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
    return kExitOk;
}

int run_phase_diagram(const Config& c, std::ostream& out)
{
    const auto T_list = c.t_grid.values("T grid");
    const auto xf_list = c.x_grid.values("x_f grid");
    const auto counts = classical::phase_diagram(c.x_i, T_list, xf_list, c.params, parse_model(c.model));

    csv::Table table{{"T", "x_f", "N_c"}, {}};
    std::vector<double> shade(counts.size());
    for (std::size_t i = 0; i < T_list.size(); ++i) {
        for (std::size_t j = 0; j < xf_list.size(); ++j) {
            const std::size_t idx = i * xf_list.size() + j;
            shade[idx] = counts[idx];
            table.rows.push_back({T_list[i], xf_list[j], static_cast<double>(counts[idx])});
        }
    }
    if (!c.raster_path.empty()) {
        const auto raster = render::render_real(T_list, xf_list, shade, render_spec(c, render::Palette::Sequential));
        render::write_ppm(raster, c.raster_path);
    }
    emit(c, out, [&](std::ostream& s) { csv::emit_csv(table, s); });
    return kExitOk;
}

ComplexGrid ee_grid(const Config& c, std::span<const double> T_list, std::span<const double> xf_list)
{
    const EigenBasis basis = build_eigenbasis(parse_model(c.model), c.ee_terms, c.params);
    return ee_propagator(basis, c.x_i, xf_list, T_list);
}

int run_propagator(const Config& c, std::ostream& out)
{
    const auto T_list = c.t_grid.values("T grid");
    const auto xf_list = c.x_grid.values("x_f grid");
    const Model model = parse_model(c.model);

    // Caustic flags always come from the path sum, whichever method fills
    // the values.
    const ComplexGrid sca = sca_grid(c.x_i, T_list, xf_list, c.params, model);
    ComplexGrid shown = sca;
    std::optional<ComplexGrid> ee;
    if (c.method != "sca") {
        ee = ee_grid(c, T_list, xf_list);
    }
    if (c.method == "ee") {
        shown.values = ee->values;
        shown.method = "ee";
    } else if (c.method == "diff") {
        for (std::size_t k = 0; k < shown.values.size(); ++k) {
            shown.values[k] -= ee->values[k];
        }
        shown.method = "diff";
    }

    auto table = csv::grid_table(shown, "T", "x_f");
    if (c.method == "both") {
        table.header.push_back("ee_re");
        table.header.push_back("ee_im");
        for (std::size_t k = 0; k < table.rows.size(); ++k) {
            table.rows[k].push_back(ee->values[k].real());
            table.rows[k].push_back(ee->values[k].imag());
        }
    }

    csv::Table caustics{{"T", "x_f"}, {}};
    for (std::size_t k = 0; k < sca.caustic.size(); ++k) {
        if (sca.caustic[k]) {
            caustics.rows.push_back({T_list[k / xf_list.size()], xf_list[k % xf_list.size()]});
        }
    }

    if (!c.raster_path.empty()) {
        render::write_ppm(render::render_complex(shown, render_spec(c, render::Palette::ComplexDomain)), c.raster_path);
    }
    const std::string& stem = c.out_path.empty() ? c.raster_path : c.out_path;
    if (!stem.empty()) {
        csv::emit_csv(caustics, stem + ".caustics.csv");
    }
    emit(c, out, [&](std::ostream& s) { csv::emit_csv(table, s); });
    return kExitOk;
}

int run_slice(const Config& c, std::ostream& out)
{
    if (c.method == "diff") {
        throw std::invalid_argument("slice: --method must be sca, ee or both");
    }
    const auto xf_list = c.x_grid.values("x_f grid");
    const Model model = parse_model(c.model);
    const std::vector<double> T_list{c.T};

    const ComplexGrid sca = sca_grid(c.x_i, T_list, xf_list, c.params, model);
    std::optional<ComplexGrid> ee;
    if (c.method != "sca") {
        ee = ee_grid(c, T_list, xf_list);
    }

    csv::Table table{{"x_f", "re", "im", "abs", "kvvd"}, {}};
    if (c.method == "both") {
        table.header.insert(table.header.end(), {"ee_re", "ee_im", "ee_abs"});
    }
    const auto& main = c.method == "ee" ? *ee : sca;
    for (std::size_t j = 0; j < xf_list.size(); ++j) {
        double envelope = std::numeric_limits<double>::quiet_NaN();
        try {
            envelope = kvvd_envelope({c.x_i, xf_list[j], c.T}, c.params, model);
        } catch (const DomainError&) {
        }
        const Complex k = main.values[j];
        std::vector<double> row{xf_list[j], k.real(), k.imag(), std::abs(k), envelope};
        if (c.method == "both") {
            const Complex q = ee->values[j];
            row.insert(row.end(), {q.real(), q.imag(), std::abs(q)});
        }
        table.rows.push_back(std::move(row));
    }
    emit(c, out, [&](std::ostream& s) { csv::emit_csv(table, s); });
    return kExitOk;
}

int run_wavepacket(const Config& c, std::ostream& out, std::ostream& err)
{
    const Model model = parse_model(c.model);
    if (!(c.x_grid.hi > 0.0)) {
        throw std::invalid_argument("wavepacket: --x-max must be positive");
    }
    Grid1D xs = c.x_grid;
    xs.lo = model == Model::OneSided ? 0.0 : -xs.hi;
    const auto x_list = xs.values("x grid");
    Grid1D ts = c.t_grid;
    ts.lo = 0.0;
    const auto t_list = ts.values("t grid");

    const EigenBasis basis = build_eigenbasis(model, c.ee_terms, c.params);
    const WavePacket packet{c.x_i, c.sigma, c.p0};
    const auto evolution = wavepacket_evolve(packet, basis, x_list, t_list);
    if (evolution.truncation_warning) {
        err << "warning: the basis captures only " << evolution.captured_probability
            << " of the packet probability; raise --ee-terms\n";
    }

    csv::Table table{{"t", "x", "re", "im", "prob"}, {}};
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        for (std::size_t j = 0; j < x_list.size(); ++j) {
            const Complex psi = evolution.psi.at(i, j);
            table.rows.push_back({t_list[i], x_list[j], psi.real(), psi.imag(), std::norm(psi)});
        }
    }
    if (!c.raster_path.empty()) {
        render::write_ppm(render::render_complex(evolution.psi, render_spec(c, render::Palette::ComplexDomain)),
                          c.raster_path);
    }
    emit(c, out, [&](std::ostream& s) { csv::emit_csv(table, s); });
    return kExitOk;
}

int run_airy(const Config& c, std::ostream& out)
{
    if (c.zeros == 0) {
        throw std::invalid_argument("airy: --zeros must be at least 1");
    }
    const auto table_of_zeros = airy::airy_zeros(c.zeros);
    csv::Table table{{"n", "lambda_n", "mu_n"}, {}};
    for (std::size_t n = 1; n <= table_of_zeros.size(); ++n) {
        table.rows.push_back({static_cast<double>(n), table_of_zeros.lambda(n), table_of_zeros.mu(n)});
    }
    emit(c, out, [&](std::ostream& s) { csv::emit_csv(table, s); });
    return kExitOk;
}

int run_verify(const Config& c, std::ostream& out)
{
    verify::Report report;
    if (c.verify_kind == "paths") {
        report = verify::paths(c.trials, c.seed, c.params);
    } else if (c.verify_kind == "action") {
        report = verify::action(c.trials, c.seed, c.params);
    } else if (c.verify_kind == "vvd") {
        report = verify::vvd(c.trials, c.seed, c.params);
    } else {
        report = verify::morse(c.trials, c.seed, c.params);
    }
    emit(c, out, [&](std::ostream& s) {
        s << "verify " << c.verify_kind << ": " << (report.passed() ? "ok" : "FAILED") << ' ' << report.summary()
          << '\n';
    });
    return report.passed() ? kExitOk : kExitVerify;
}

void add_model(CLI::App* cmd, Config& c)
{
    cmd->add_option("--model", c.model, "1sb (one-sided) or sb (symmetric)")
        ->check(CLI::IsMember({"1sb", "sb"}))
        ->capture_default_str();
}

void add_t_grid(CLI::App* cmd, Config& c)
{
    cmd->add_option("--t-min", c.t_grid.lo, "smallest T")->required();
    cmd->add_option("--t-max", c.t_grid.hi, "largest T")->required();
    cmd->add_option("--nt", c.t_grid.count, "number of T nodes")->required();
}

void add_xf_grid(CLI::App* cmd, Config& c)
{
    cmd->add_option("--xf-min", c.x_grid.lo, "smallest x_f")->required();
    cmd->add_option("--xf-max", c.x_grid.hi, "largest x_f")->required();
    cmd->add_option("--nx", c.x_grid.count, "number of x_f nodes")->required();
}

void add_render(CLI::App* cmd, Config& c)
{
    cmd->add_option("--raster", c.raster_path, "write a PPM raster to this path");
    cmd->add_option("--gamma", c.gamma, "raster brightness exponent")->capture_default_str();
    cmd->add_option("--scale", c.scale, "fixed raster normalization (default: largest magnitude)");
}

void add_ee_terms(CLI::App* cmd, Config& c)
{
    cmd->add_option("--ee-terms", c.ee_terms, "eigenfunction expansion terms N")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config c;
    CLI::App app{"Propagators of the quantum bouncer by path sum and eigenfunction expansion", "qbounce"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--mass", c.params.mass, "particle mass M")->capture_default_str();
    app.add_option("--g", c.params.g, "gravitational acceleration g")->capture_default_str();
    app.add_option("--hbar", c.params.hbar, "reduced Planck constant")->capture_default_str();
    app.add_option("--out", c.out_path, "write the table to this file instead of stdout");

    auto* paths = app.add_subcommand("paths", "classical paths between two endpoints, as JSON");
    add_model(paths, c);
    paths->add_option("--xi", c.x_i, "initial position")->required();
    paths->add_option("--xf", c.x_f, "final position")->required();
    paths->add_option("--T", c.T, "travel time")->required();

    auto* phase = app.add_subcommand("phase-diagram", "number of classical paths over a (T, x_f) grid");
    add_model(phase, c);
    phase->add_option("--xi", c.x_i, "initial position")->required();
    add_t_grid(phase, c);
    add_xf_grid(phase, c);
    add_render(phase, c);

    auto* propagator = app.add_subcommand("propagator", "propagator over a (T, x_f) grid");
    add_model(propagator, c);
    propagator->add_option("--method", c.method, "sca, ee, both, or diff (sca - ee)")
        ->check(CLI::IsMember({"sca", "ee", "both", "diff"}))
        ->capture_default_str();
    propagator->add_option("--xi", c.x_i, "initial position")->required();
    add_t_grid(propagator, c);
    add_xf_grid(propagator, c);
    add_ee_terms(propagator, c);
    add_render(propagator, c);

    auto* slice = app.add_subcommand("slice", "propagator along x_f at fixed T");
    add_model(slice, c);
    slice->add_option("--method", c.method, "sca, ee or both")
        ->check(CLI::IsMember({"sca", "ee", "both"}))
        ->capture_default_str();
    slice->add_option("--xi", c.x_i, "initial position")->required();
    slice->add_option("--T", c.T, "travel time")->required();
    add_xf_grid(slice, c);
    add_ee_terms(slice, c);

    auto* wavepacket = app.add_subcommand("wavepacket", "evolution of a Gaussian packet released at rest");
    add_model(wavepacket, c);
    wavepacket->add_option("--xi", c.x_i, "packet center")->required();
    wavepacket->add_option("--sigma", c.sigma, "packet width sigma_x")->required();
    wavepacket->add_option("--p0", c.p0, "initial momentum")->capture_default_str();
    wavepacket->add_option("--t-max", c.t_grid.hi, "last time")->required();
    wavepacket->add_option("--nt", c.t_grid.count, "number of time nodes")->required();
    wavepacket->add_option("--x-max", c.x_grid.hi, "largest |x|")->required();
    wavepacket->add_option("--nx", c.x_grid.count, "number of x nodes")->required();
    add_ee_terms(wavepacket, c);
    add_render(wavepacket, c);

    auto* airy_cmd = app.add_subcommand("airy", "zeros of Ai and Ai'");
    airy_cmd->add_option("--zeros", c.zeros, "number of zeros")->required();

    auto* verify_cmd = app.add_subcommand("verify", "randomized agreement with the brute-force oracles");
    verify_cmd->add_option("kind", c.verify_kind, "paths, action, vvd or morse")
        ->required()
        ->check(CLI::IsMember({"paths", "action", "vvd", "morse"}));
    verify_cmd->add_option("--trials", c.trials, "number of random samples")->capture_default_str();
    verify_cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();

    if (args.empty()) {
        err << app.help();
        return kExitUsage;
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        c.params.validate();
        if (paths->parsed()) {
            return run_paths(c, out);
        }
        if (phase->parsed()) {
            return run_phase_diagram(c, out);
        }
        if (propagator->parsed()) {
            return run_propagator(c, out);
        }
        if (slice->parsed()) {
            return run_slice(c, out);
        }
        if (wavepacket->parsed()) {
            return run_wavepacket(c, out, err);
        }
        if (airy_cmd->parsed()) {
            return run_airy(c, out);
        }
        return run_verify(c, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace qbounce::cli
