// Command line front end: `icefem run <config>` advances a scenario and
// writes its run directory, `icefem korn <config>` estimates the discrete
// Korn constants over a mesh sequence, `icefem report <run-dir>` summarizes a
// finished run including the a-priori stability bound when it applies.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "icefem/config.hpp"
#include "icefem/diagnostics.hpp"
#include "icefem/io.hpp"
#include "icefem/mesh.hpp"
#include "icefem/rheology.hpp"
#include "icefem/scenario.hpp"

namespace {

using namespace icefem;

// Command-line overrides applied on top of the config file.
struct Overrides {
    std::string stabilize; // "on" | "off" | ""
    double mesh_km = 0.0;
    std::string solver;

    void apply(Config& cfg) const {
        if (!stabilize.empty()) cfg.set("stabilize", stabilize);
        if (mesh_km > 0.0) cfg.set("mesh_km", format_double(mesh_km));
        if (!solver.empty()) cfg.set("solver", solver);
    }
};

int cmd_run(const std::string& path, const Overrides& ov) {
    Config cfg = Config::from_file(path);
    ov.apply(cfg);
    const ScenarioConfig sc = scenario_from_config(cfg);
    const ScenarioResult r = run_scenario(sc, &std::cout);
    std::cout << "done: steps=" << r.steps << " t=" << r.t_final
              << " max_speed=" << r.max_speed << " energy=" << r.energy
              << (r.diverged ? " DIVERGED" : "") << "\n"
              << "outputs in " << sc.run_dir << "/\n";
    return r.diverged ? 1 : 0;
}

int cmd_korn(const std::string& path, const Overrides& ov) {
    Config cfg = Config::from_file(path);
    ov.apply(cfg);
    const double Lx = cfg.get_double("Lx_km", 1.0) * 1e3;
    const double Ly = cfg.get_double("Ly_km", 1.0) * 1e3;
    std::vector<double> sizes;
    std::stringstream list(cfg.get_string("mesh_km_list", "0.2,0.1,0.05"));
    std::string item;
    while (std::getline(list, item, ',')) sizes.push_back(std::stod(item) * 1e3);

    std::cout << "mesh_km,edges,lambda_plain,korn_plain,lambda_stab,korn_stab,poincare\n";
    for (const double h : sizes) {
        const Mesh mesh = build_uniform_mesh(Lx, Ly, h);
        const KornEstimate plain = estimate_korn_constant(mesh, false);
        const KornEstimate stab = estimate_korn_constant(mesh, true);
        const double cp = poincare_constant(mesh);
        std::cout << format_double(h / 1e3) << "," << mesh.n_edges() << ","
                  << format_double(plain.lambda_min) << "," << format_double(plain.korn_constant)
                  << "," << format_double(stab.lambda_min) << ","
                  << format_double(stab.korn_constant) << "," << format_double(cp) << "\n";
    }
    return 0;
}

int cmd_report(const std::string& run_dir) {
    const Config summary = Config::from_file(run_dir + "/summary.txt");
    std::cout << "run " << run_dir << "\n";
    for (const auto& [key, value] : summary.values())
        std::cout << "  " << key << " = " << value << "\n";

    const CsvTable trace = read_csv(run_dir + "/trace.csv");
    if (!trace.rows.empty()) {
        std::cout << "trace: " << trace.rows.size() << " rows, last:\n";
        const auto& last = trace.rows.back();
        for (std::size_t i = 0; i < trace.columns.size(); ++i)
            std::cout << "  " << trace.columns[i] << " = " << format_double(last[i]) << "\n";
    }

    const bool linear = summary.get_bool("linear_drag", false);
    const bool advection = summary.get_bool("advection", false);
    PhysParams p;
    const BoundReport b = theorem_bound_report(
        p, summary.get_double("h0", 1.0), summary.get_double("T_total_s", 0.0),
        summary.get_double("zeta_min", 0.0), 0.0, 0.0,
        summary.get_double("linear_drag_speed", 0.1), linear, advection);
    if (!b.valid) {
        std::cout << "stability bound: not applicable (" << b.reason << ")\n";
        return 0;
    }

    // The bound constants need the discrete Korn and Poincare constants of
    // the recorded mesh.
    const Mesh mesh = build_uniform_mesh(summary.get_double("Lx_km") * 1e3,
                                         summary.get_double("Ly_km") * 1e3,
                                         summary.get_double("mesh_km") * 1e3);
    const bool stabilized = summary.get_string("stabilize", "on") == "on";
    const KornEstimate korn = estimate_korn_constant(mesh, stabilized);
    const double cp = poincare_constant(mesh);
    const BoundReport full = theorem_bound_report(
        p, summary.get_double("h0", 1.0), summary.get_double("T_total_s", 0.0),
        summary.get_double("zeta_min", 0.0), cp, korn.korn_constant,
        summary.get_double("linear_drag_speed", 0.1), linear, advection);
    std::cout << "stability bound: a=" << format_double(full.a)
              << " b=" << format_double(full.b) << " c=" << format_double(full.c)
              << " (gamma=" << format_double(full.gamma)
              << ", gamma2=" << format_double(full.gamma2) << ", c_p=" << format_double(full.c_p)
              << ", c_k=" << format_double(full.c_k) << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sea-ice dynamics on triangular meshes (Crouzeix-Raviart)"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_path, run_dir;

    auto add_overrides = [&ov](CLI::App* sub) {
        sub->add_option("--stabilize", ov.stabilize, "override stabilization (on|off)")
            ->check(CLI::IsMember({"on", "off"}));
        sub->add_option("--mesh-km", ov.mesh_km, "override mesh width in km");
        sub->add_option("--solver", ov.solver, "override solver (vp|evp|mevp)")
            ->check(CLI::IsMember({"vp", "evp", "mevp"}));
    };

    CLI::App* run = app.add_subcommand("run", "run a scenario from a config file");
    run->add_option("config", config_path, "key=value config file")->required();
    add_overrides(run);

    CLI::App* korn = app.add_subcommand("korn", "estimate discrete Korn constants");
    korn->add_option("config", config_path, "key=value config file")->required();
    add_overrides(korn);

    CLI::App* report = app.add_subcommand("report", "summarize a finished run directory");
    report->add_option("run-dir", run_dir, "run directory with summary.txt")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, ov);
        if (korn->parsed()) return cmd_korn(config_path, ov);
        if (report->parsed()) return cmd_report(run_dir);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
