#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdmspec/errors.hpp"
#include "pdmspec/format.hpp"
#include "pdmspec/oracle.hpp"
#include "pdmspec/pct.hpp"
#include "pdmspec/reference.hpp"

using namespace pdmspec;

namespace {

struct CliConfig {
    std::string potential = "kratzer";
    double De = 1.0, ye = 1.0;
    double D = 8.0, morse_a = 1.0, r0 = 1.0;
    std::vector<int> ells{0};
    double mu = 1.0, hbar = 1.0;
    std::string profile = "uniform";
    double a = 1.0, q = 1.0, b = 1.0;
    int n_max = -1;  // resolved per command
    int grid_points = 4000;
    double x_min = std::nan(""), x_max = std::nan("");
    std::string format = "csv";
    std::string correction_sign = "plus";
    double tol_rel = 1e-4;
    int samples = 2000;
    std::string coordinate = "x";
    int n_state = 0;
    std::string sweep_param;
    std::vector<double> sweep_values;
    bool sweep_numeric = false;
};

constexpr double kBoxWidthCap = 1e4;

std::shared_ptr<const MassProfile> build_profile(const CliConfig& c) {
    if (c.profile == "uniform") return make_uniform();
    if (c.profile == "lorentzian") return make_lorentzian(c.a, c.q);
    if (c.profile == "squared_lorentzian")
        return make_squared_lorentzian(c.a, c.b);
    if (c.profile == "exponential") return make_exponential(c.q);
    throw ConfigError("unknown profile '" + c.profile +
                      "' (uniform, lorentzian, squared_lorentzian, exponential)");
}

bool is_kratzer(const CliConfig& c) {
    if (c.potential == "kratzer") return true;
    if (c.potential == "morse") return false;
    throw ConfigError("unknown potential '" + c.potential +
                      "' (kratzer, morse)");
}

KratzerParams kratzer_params(const CliConfig& c, int ell) {
    return {c.De, c.ye, ell, c.mu, c.hbar};
}

MorseParams morse_params(const CliConfig& c, int ell) {
    return {c.D, c.morse_a, c.r0, ell, c.mu, c.hbar};
}

TargetProblem build_problem(const CliConfig& c, int ell) {
    TargetProblem tp =
        is_kratzer(c) ? compose_kratzer(kratzer_params(c, ell), build_profile(c))
                      : compose_morse(morse_params(c, ell), build_profile(c));
    if (c.correction_sign == "minus")
        tp.correction_sign = -1.0;
    else if (c.correction_sign != "plus")
        throw ConfigError("correction-sign must be plus or minus");
    return tp;
}

// Effective configuration header, echoed on every output so a run is
// reproducible from its artifact alone.
std::vector<std::pair<std::string, std::string>> config_pairs(
    const CliConfig& c) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("potential", c.potential);
    if (is_kratzer(c)) {
        kv.emplace_back("De", fmt_num(c.De));
        kv.emplace_back("ye", fmt_num(c.ye));
    } else {
        kv.emplace_back("D", fmt_num(c.D));
        kv.emplace_back("morse_a", fmt_num(c.morse_a));
        kv.emplace_back("r0", fmt_num(c.r0));
    }
    std::string ells;
    for (size_t i = 0; i < c.ells.size(); ++i)
        ells += (i ? "," : "") + std::to_string(c.ells[i]);
    kv.emplace_back("ell", ells);
    kv.emplace_back("mu", fmt_num(c.mu));
    kv.emplace_back("hbar", fmt_num(c.hbar));
    kv.emplace_back("profile", c.profile);
    if (c.profile == "lorentzian") {
        kv.emplace_back("a", fmt_num(c.a));
        kv.emplace_back("q", fmt_num(c.q));
    } else if (c.profile == "squared_lorentzian") {
        kv.emplace_back("a", fmt_num(c.a));
        kv.emplace_back("b", fmt_num(c.b));
    } else if (c.profile == "exponential") {
        kv.emplace_back("q", fmt_num(c.q));
    }
    if (c.n_max >= 0) kv.emplace_back("n_max", std::to_string(c.n_max));
    if (c.correction_sign != "plus")
        kv.emplace_back("correction_sign", c.correction_sign);
    return kv;
}

void print_header(const CliConfig& c,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
    if (c.format == "json") return;  // embedded in the JSON object instead
    for (const auto& [k, v] : config_pairs(c))
        std::printf("# %s=%s\n", k.c_str(), v.c_str());
    for (const auto& [k, v] : extra)
        std::printf("# %s=%s\n", k.c_str(), v.c_str());
}

nlohmann::json config_json(const CliConfig& c) {
    nlohmann::json j;
    for (const auto& [k, v] : config_pairs(c)) j[k] = v;
    return j;
}

int resolve_n_max(const CliConfig& c, int fallback) {
    return c.n_max >= 0 ? c.n_max : fallback;
}

// ------------------------------------------------------------- spectrum

int cmd_spectrum(CliConfig c) {
    (void)build_profile(c);  // energies are profile independent, names are not
    c.n_max = resolve_n_max(c, 2);
    struct Row {
        int n, ell;
        double e;
    };
    std::vector<Row> rows;
    std::vector<std::string> notices;
    for (int ell : c.ells) {
        if (is_kratzer(c)) {
            const KratzerParams p = kratzer_params(c, ell);
            for (int n = 0; n <= c.n_max; ++n)
                rows.push_back({n, ell, kratzer_energy(p, n)});
        } else {
            const MorseParams p = morse_params(c, ell);
            const int count = morse_state_count(p);
            for (int n = 0; n <= c.n_max; ++n) {
                if (n >= count) {
                    notices.push_back(
                        "morse ell=" + std::to_string(ell) + ": levels n>=" +
                        std::to_string(count) +
                        " omitted (beyond the bound-state cap)");
                    break;
                }
                rows.push_back({n, ell, morse_energy(p, n)});
            }
        }
    }

    if (c.format == "json") {
        nlohmann::json j;
        j["config"] = config_json(c);
        j["notices"] = notices;
        j["states"] = nlohmann::json::array();
        for (const auto& r : rows)
            j["states"].push_back(
                {{"n", r.n}, {"ell", r.ell}, {"E_analytic", r.e}});
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }
    std::vector<std::pair<std::string, std::string>> extra;
    for (const auto& n : notices) extra.emplace_back("notice", n);
    print_header(c, extra);
    if (c.format == "table") {
        TextTable t({"n", "ell", "E_analytic"});
        for (const auto& r : rows)
            t.add_row({std::to_string(r.n), std::to_string(r.ell),
                       fmt_num(r.e)});
        std::printf("%s", t.str().c_str());
    } else {
        std::printf("%s", csv_row({"n", "ell", "E_analytic"}).c_str());
        for (const auto& r : rows)
            std::printf("%s",
                        csv_row({std::to_string(r.n), std::to_string(r.ell),
                                 fmt_num(r.e)})
                            .c_str());
    }
    return 0;
}

// --------------------------------------------------------- wavefunction

int cmd_wavefunction(CliConfig c) {
    const int ell = c.ells.front();
    const bool x_mode = c.coordinate == "x";
    if (!x_mode && c.coordinate != "y")
        throw ConfigError("coordinate must be x or y");

    if (!is_kratzer(c)) {
        const int count = morse_state_count(morse_params(c, ell));
        if (c.n_state >= count)
            throw NoBoundStateError("morse: state n=" +
                                    std::to_string(c.n_state) +
                                    " beyond the bound-state cap");
    }

    // The y-window is the x-window of the identity (uniform) composition.
    CliConfig cy = c;
    cy.profile = "uniform";
    const TargetProblem tp = build_problem(x_mode ? c : cy, ell);
    const BoundState psi =
        transform_wavefunction(tp, reference_state(tp, c.n_state));

    double lo = c.x_min, hi = c.x_max;
    bool truncated = false;
    if (std::isnan(lo) || std::isnan(hi)) {
        const BoxResult box = select_box(tp, c.n_state, kBoxWidthCap);
        if (std::isnan(lo)) lo = box.x_min;
        if (std::isnan(hi)) hi = box.x_max;
        truncated = box.truncated;
    }
    if (!(hi > lo)) throw ConfigError("empty sampling window");
    if (c.samples < 2) throw ConfigError("need at least 2 samples");

    std::vector<std::pair<double, double>> table(c.samples);
    for (int i = 0; i < c.samples; ++i) {
        const double x = lo + (hi - lo) * i / (c.samples - 1);
        table[i] = {x, psi.wavefunction(x)};
    }

    const std::string coord = x_mode ? "x" : "y";
    if (c.format == "json") {
        nlohmann::json j;
        j["config"] = config_json(c);
        j["n"] = c.n_state;
        j["ell"] = ell;
        j["energy"] = psi.energy;
        j["coordinate"] = coord;
        j["window"] = {lo, hi};
        j["truncated"] = truncated;
        j["samples"] = nlohmann::json::array();
        for (const auto& [x, v] : table) j["samples"].push_back({x, v});
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }
    std::vector<std::pair<std::string, std::string>> extra = {
        {"n", std::to_string(c.n_state)},
        {"energy", fmt_num(psi.energy)},
        {"window", fmt_num(lo) + ".." + fmt_num(hi)}};
    if (truncated)
        extra.emplace_back("warning", "window truncated at the width cap");
    print_header(c, extra);
    if (c.format == "table") {
        TextTable t({coord, "amplitude"});
        for (const auto& [x, v] : table)
            t.add_row({fmt_num(x), fmt_num(v)});
        std::printf("%s", t.str().c_str());
    } else {
        std::printf("%s", csv_row({coord, "amplitude"}).c_str());
        for (const auto& [x, v] : table)
            std::printf("%s", csv_row({fmt_num(x), fmt_num(v)}).c_str());
    }
    return 0;
}

// --------------------------------------------------------------- verify

int cmd_verify(CliConfig c) {
    c.n_max = resolve_n_max(c, 0);
    if (c.grid_points < 12)
        throw ConfigError("verify needs grid-points >= 12");

    VerificationReport merged;
    std::vector<std::pair<std::string, std::string>> extra;
    bool pass = true;
    for (int ell : c.ells) {
        TargetProblem tp = build_problem(c, ell);
        if (!is_kratzer(c)) {
            const int count = morse_state_count(morse_params(c, ell));
            if (c.n_max >= count)
                throw NoBoundStateError(
                    "morse: n_max exceeds the bound-state cap");
        }

        double lo = c.x_min, hi = c.x_max;
        if (std::isnan(lo) || std::isnan(hi)) {
            const BoxResult box = select_box(tp, c.n_max, kBoxWidthCap);
            if (std::isnan(lo)) lo = box.x_min;
            if (std::isnan(hi)) hi = box.x_max;
            if (box.truncated)
                extra.emplace_back("warning",
                                   "box truncated at the width cap; "
                                   "tolerances may be unreachable");
        }
        extra.emplace_back("box_ell" + std::to_string(ell),
                           fmt_num(lo) + ".." + fmt_num(hi));

        ProblemSpec spec;
        spec.assemble = [tp](const Grid& g) { return discretize_pdm(tp, g); };
        for (int n = 0; n <= c.n_max; ++n)
            spec.states.push_back({n, ell, reference_energy(tp, n)});
        const auto report = convergence_study(
            spec, {make_grid(lo, hi, c.grid_points / 4),
                   make_grid(lo, hi, c.grid_points / 2),
                   make_grid(lo, hi, c.grid_points)});
        merged.grid_points = report.grid_points;
        for (const auto& r : report.records) {
            if (std::fabs(r.abs_err) >
                c.tol_rel * std::max(std::fabs(r.E_analytic), 1e-6))
                pass = false;
            merged.records.push_back(r);
        }
    }
    extra.emplace_back("tol_rel", fmt_num(c.tol_rel));
    extra.emplace_back("status", pass ? "pass" : "fail");

    if (c.format == "json") {
        nlohmann::json j = nlohmann::json::parse(report_to_json(merged));
        j["config"] = config_json(c);
        for (const auto& [k, v] : extra) j[k] = v;
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        print_header(c, extra);
        std::printf("%s", (c.format == "table" ? report_to_table(merged)
                                               : report_to_csv(merged))
                              .c_str());
    }
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------- audit

int cmd_audit(CliConfig c) {
    const int ell = c.ells.front();
    const TargetProblem tp = build_problem(c, ell);
    const auto records = audit(tp);

    std::vector<IndexVariantRecord> variants;
    if (!is_kratzer(c)) {
        const MorseParams p = morse_params(c, ell);
        const int count = morse_state_count(p);
        const int vmax = std::min(resolve_n_max(c, 1), count - 1);
        if (vmax >= 0) {
            CliConfig cy = c;
            cy.profile = "uniform";
            const TargetProblem ty = build_problem(cy, ell);
            const BoxResult box = select_box(ty, vmax, kBoxWidthCap);
            variants = morse_index_variant_residuals(
                p, vmax, make_grid(box.x_min, box.x_max, c.grid_points));
        }
    }

    if (c.format == "json") {
        nlohmann::json j;
        j["config"] = config_json(c);
        j["records"] = nlohmann::json::array();
        for (const auto& r : records)
            j["records"].push_back({{"equation", r.equation_id},
                                    {"verdict", r.verdict},
                                    {"max_abs_deviation", r.max_abs_deviation},
                                    {"argmax_x", r.argmax_x},
                                    {"n_samples", r.sample_points.size()}});
        j["laguerre_index_variants"] = nlohmann::json::array();
        for (const auto& v : variants)
            j["laguerre_index_variants"].push_back(
                {{"n", v.n},
                 {"residual_adopted", v.residual_adopted},
                 {"residual_printed", v.residual_printed}});
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }
    print_header(c, {});
    std::printf("%s", (c.format == "table" ? audit_to_table(records)
                                           : audit_to_csv(records))
                          .c_str());
    if (!variants.empty()) {
        std::printf("# Laguerre index variants (adopted 2*eps1 vs printed 1+2*eps1)\n");
        if (c.format == "table") {
            TextTable t({"n", "residual_adopted", "residual_printed"});
            for (const auto& v : variants)
                t.add_row({std::to_string(v.n), fmt_num(v.residual_adopted),
                           fmt_num(v.residual_printed)});
            std::printf("%s", t.str().c_str());
        } else {
            std::printf("%s", csv_row({"n", "residual_adopted",
                                       "residual_printed"})
                                  .c_str());
            for (const auto& v : variants)
                std::printf("%s", csv_row({std::to_string(v.n),
                                           fmt_num(v.residual_adopted),
                                           fmt_num(v.residual_printed)})
                                      .c_str());
        }
    }
    return 0;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(CliConfig c) {
    c.n_max = resolve_n_max(c, 0);
    static const std::map<std::string, double CliConfig::*> sweepable = {
        {"De", &CliConfig::De},     {"ye", &CliConfig::ye},
        {"D", &CliConfig::D},       {"morse_a", &CliConfig::morse_a},
        {"r0", &CliConfig::r0},     {"a", &CliConfig::a},
        {"q", &CliConfig::q},       {"b", &CliConfig::b},
        {"mu", &CliConfig::mu},     {"hbar", &CliConfig::hbar}};
    const auto it = sweepable.find(c.sweep_param);
    if (it == sweepable.end())
        throw ConfigError("parameter '" + c.sweep_param +
                          "' is not sweepable");

    std::vector<std::string> header = {"param", "value", "n", "ell",
                                       "E_analytic"};
    if (c.sweep_numeric) header.push_back("E_numeric");

    std::vector<std::vector<std::string>> rows;
    for (double value : c.sweep_values) {
        CliConfig cv = c;
        cv.*(it->second) = value;
        for (int ell : cv.ells) {
            const TargetProblem tp = build_problem(cv, ell);
            int top = cv.n_max;
            if (!is_kratzer(cv))
                top = std::min(top,
                               morse_state_count(morse_params(cv, ell)) - 1);
            std::vector<double> numeric;
            if (c.sweep_numeric && top >= 0) {
                double lo = cv.x_min, hi = cv.x_max;
                if (std::isnan(lo) || std::isnan(hi)) {
                    const BoxResult box = select_box(tp, top, kBoxWidthCap);
                    if (std::isnan(lo)) lo = box.x_min;
                    if (std::isnan(hi)) hi = box.x_max;
                }
                const auto pairs = lowest_eigenpairs(
                    discretize_pdm(tp, make_grid(lo, hi, cv.grid_points)),
                    top + 1);
                for (const auto& p : pairs) numeric.push_back(p.value);
            }
            for (int n = 0; n <= top; ++n) {
                std::vector<std::string> row = {
                    c.sweep_param, fmt_num(value), std::to_string(n),
                    std::to_string(ell), fmt_num(reference_energy(tp, n))};
                if (c.sweep_numeric) row.push_back(fmt_num(numeric[n]));
                rows.push_back(std::move(row));
            }
        }
    }

    if (c.format == "json") {
        nlohmann::json j;
        j["config"] = config_json(c);
        j["rows"] = nlohmann::json::array();
        for (const auto& r : rows) j["rows"].push_back(r);
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }
    print_header(c, {{"sweep", c.sweep_param}});
    if (c.format == "table") {
        TextTable t(header);
        for (const auto& r : rows) t.add_row(r);
        std::printf("%s", t.str().c_str());
    } else {
        std::printf("%s", csv_row(header).c_str());
        for (const auto& r : rows) std::printf("%s", csv_row(r).c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact spectra for position-dependent-mass wells via point "
                 "canonical transformation, with a finite-difference oracle"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI/TOML config file (flags override)");

    CliConfig c;
    app.add_option("--potential", c.potential, "kratzer or morse")
        ->capture_default_str();
    app.add_option("--De", c.De, "Kratzer dissociation energy")
        ->capture_default_str();
    app.add_option("--ye", c.ye, "Kratzer equilibrium separation")
        ->capture_default_str();
    app.add_option("--D", c.D, "Morse well depth")->capture_default_str();
    app.add_option("--morse-a", c.morse_a, "Morse width parameter")
        ->capture_default_str();
    app.add_option("--r0", c.r0, "Morse equilibrium distance")
        ->capture_default_str();
    app.add_option("--ell", c.ells, "angular momentum quantum number(s)")
        ->capture_default_str();
    app.add_option("--mu", c.mu, "reduced mass")->capture_default_str();
    app.add_option("--hbar", c.hbar, "Planck constant")->capture_default_str();
    app.add_option("--profile", c.profile,
                   "uniform, lorentzian, squared_lorentzian, exponential")
        ->capture_default_str();
    app.add_option("--a", c.a, "profile scale a")->capture_default_str();
    app.add_option("--q", c.q, "profile parameter q")->capture_default_str();
    app.add_option("--b", c.b, "profile parameter b")->capture_default_str();
    app.add_option("--n-max", c.n_max,
                   "highest level (default: 2 for spectrum, 0 for verify)");
    app.add_option("--grid-points", c.grid_points, "finest grid resolution")
        ->capture_default_str();
    app.add_option("--x-min", c.x_min, "left box edge (default: automatic)");
    app.add_option("--x-max", c.x_max, "right box edge (default: automatic)");
    app.add_option("--format", c.format, "csv, json, or table")
        ->capture_default_str();
    app.add_option("--correction-sign", c.correction_sign, "")->group("");

    CLI::App* sp = app.add_subcommand("spectrum", "analytic energy levels");
    CLI::App* wf = app.add_subcommand("wavefunction", "sampled eigenfunction");
    wf->add_option("--n", c.n_state, "level index")->capture_default_str();
    wf->add_option("--coordinate", c.coordinate,
                   "x (transformed) or y (reference)")
        ->capture_default_str();
    wf->add_option("--samples", c.samples, "sample count")
        ->capture_default_str();
    CLI::App* vf = app.add_subcommand(
        "verify", "oracle eigenvalues vs analytic energies");
    vf->add_option("--tol-rel", c.tol_rel, "relative tolerance gate")
        ->capture_default_str();
    CLI::App* au = app.add_subcommand(
        "audit", "printed closed forms vs the generic construction");
    CLI::App* sw = app.add_subcommand("sweep", "parameter sweep");
    sw->add_option("--param", c.sweep_param, "parameter to sweep")
        ->required();
    sw->add_option("--values", c.sweep_values, "values to sweep over");
    sw->add_flag("--numeric", c.sweep_numeric,
                 "add oracle eigenvalues per row");
    for (CLI::App* sub : {sp, wf, vf, au, sw}) sub->fallthrough();

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(sp)) return cmd_spectrum(c);
        if (app.got_subcommand(wf)) return cmd_wavefunction(c);
        if (app.got_subcommand(vf)) return cmd_verify(c);
        if (app.got_subcommand(au)) return cmd_audit(c);
        return cmd_sweep(c);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
