#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "icefem/config.hpp"
#include "icefem/io.hpp"
#include "icefem/scenario.hpp"

using namespace icefem;

TEST_CASE("scenario config defaults and overrides") {
    const ScenarioConfig ch = scenario_from_config(Config::from_string("scenario = channel\n"));
    CHECK(ch.Lx == 500e3);
    CHECK(ch.solver == "mevp");
    CHECK(ch.solver_cfg.stabilize);
    CHECK_FALSE(ch.advection);

    const ScenarioConfig box = scenario_from_config(Config::from_string("scenario = box\n"));
    CHECK(box.Lx == 1000e3);
    CHECK(box.advection);
    CHECK(box.solver_cfg.n_sub == 500);

    const ScenarioConfig ov = scenario_from_config(Config::from_string(
        "scenario = channel\nmesh_km = 25\nsolver = evp\nstabilize = off\ndt_s = 300\n"));
    CHECK(ov.mesh_m == 25e3);
    CHECK(ov.solver == "evp");
    CHECK_FALSE(ov.solver_cfg.stabilize);
    CHECK(ov.solver_cfg.k == 300.0);

    CHECK_THROWS(scenario_from_config(Config::from_string("scenario = bogus\n")));
    CHECK_THROWS(parse_solver("simple"));
}

TEST_CASE("forcing presets match the analytic fields") {
    ScenarioConfig cfg;
    cfg.name = "box";
    cfg.Lx = cfg.Ly = 1000e3;
    const ForcingConfig f = scenario_forcing(cfg);
    CHECK(f.use_wind);
    CHECK(f.use_coriolis);
    // ocean circulation at the domain corners
    CHECK(f.ocean(Vec2{0.0, 0.0}).x == doctest::Approx(-0.1));
    CHECK(f.ocean(Vec2{0.0, 0.0}).y == doctest::Approx(0.1));
    CHECK(f.ocean(Vec2{cfg.Lx, cfg.Ly}).x == doctest::Approx(0.1));
    CHECK(f.ocean(Vec2{cfg.Lx, cfg.Ly}).y == doctest::Approx(-0.1));
    // wind at t = 0, domain center: the sin product is 0 -> uniform (5, 5)
    CHECK(f.wind(Vec2{cfg.Lx / 2, cfg.Ly / 2}, 0.0).x == doctest::Approx(5.0));
    // quarter point at t = 0: 5 + (0 - 3) * sin^2(pi/2)
    CHECK(f.wind(Vec2{cfg.Lx / 4, cfg.Ly / 4}, 0.0).x == doctest::Approx(2.0));
}

TEST_CASE("channel smoke run writes the expected artifacts") {
    ScenarioConfig cfg = scenario_from_config(Config::from_string(
        "scenario = channel\n"
        "mesh_km = 125\n"
        "dt_s = 600\n"
        "n_sub = 50\n"
        "T_hours = 1\n"
        "run_dir = test_run_channel\n"
        "snap_every = 3\n"));
    const ScenarioResult r = run_scenario(cfg);
    CHECK_FALSE(r.diverged);
    CHECK(r.steps == 6);
    CHECK(r.max_speed > 0.0);
    CHECK(r.max_speed < 1.0);
    CHECK(r.energy >= 0.0);

    CHECK(std::filesystem::exists("test_run_channel/trace.csv"));
    CHECK(std::filesystem::exists("test_run_channel/summary.txt"));
    CHECK(std::filesystem::exists("test_run_channel/snap_3.vtk"));
    CHECK(std::filesystem::exists("test_run_channel/snap_6.vtk"));

    const CsvTable trace = read_csv("test_run_channel/trace.csv");
    CHECK(trace.rows.size() == 6);
    const Config summary = Config::from_file("test_run_channel/summary.txt");
    CHECK(summary.get_string("scenario") == "channel");
    CHECK(summary.get_int("steps") == 6);
    CHECK_FALSE(summary.get_bool("diverged"));
    std::filesystem::remove_all("test_run_channel");
}

TEST_CASE("advancing tracers conserves thickness mass") {
    ScenarioConfig cfg = scenario_from_config(Config::from_string(
        "scenario = box\n"
        "mesh_km = 250\n"
        "dt_s = 600\n"
        "n_sub = 50\n"
        "T_hours = 2\n"
        "run_dir = test_run_box\n"));
    const ScenarioResult r = run_scenario(cfg);
    CHECK_FALSE(r.diverged);
    CHECK(std::abs(r.h_mass_final - r.h_mass_initial) <= 1e-12 * r.h_mass_initial);
    std::filesystem::remove_all("test_run_box");
}
