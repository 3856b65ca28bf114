#include "wavese/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "wavese/io.hpp"
#include "wavese/wavelet.hpp"

namespace wavese {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

template <typename T>
void read_into(const json& obj, const char* key, T& target) {
    if (obj.contains(key)) obj.at(key).get_to(target);
}

PotentialModel parse_potential(const json& obj) {
    check_keys(obj, {"kind", "v0", "omega", "width", "center"}, "potential");
    std::string kind = "zero";
    read_into(obj, "kind", kind);
    PotentialModel m;
    if (kind == "zero") {
        m = PotentialModel::zero();
    } else if (kind == "constant") {
        double v0 = 0.0;
        read_into(obj, "v0", v0);
        m = PotentialModel::constant(v0);
    } else if (kind == "harmonic") {
        double omega = 1.0;
        read_into(obj, "omega", omega);
        m = PotentialModel::harmonic(omega);
    } else if (kind == "gaussian_barrier") {
        double v0 = 1.0, width = 1.0, center = 0.0;
        read_into(obj, "v0", v0);
        read_into(obj, "width", width);
        read_into(obj, "center", center);
        m = PotentialModel::gaussian_barrier(v0, width, center);
    } else {
        throw ConfigError("potential.kind: unknown kind '" + kind + "'");
    }
    return m;
}

std::string kind_name(PotentialModel::Kind kind) {
    switch (kind) {
        case PotentialModel::Kind::zero: return "zero";
        case PotentialModel::Kind::constant: return "constant";
        case PotentialModel::Kind::harmonic: return "harmonic";
        case PotentialModel::Kind::gaussian_barrier: return "gaussian_barrier";
    }
    return "zero";
}

ScenarioConfig parse_scenario_impl(const json& root) {
    check_keys(root,
               {"physical", "wavelet", "spatial_grid", "scale_grid", "potential", "evolution",
                "initial_state", "pipeline", "output", "admissibility", "compare_times"},
               "top level");
    ScenarioConfig cfg;

    if (root.contains("physical")) {
        const json& j = root.at("physical");
        check_keys(j, {"hbar", "mass"}, "physical");
        read_into(j, "hbar", cfg.physical.hbar);
        read_into(j, "mass", cfg.physical.mass);
    }
    if (root.contains("wavelet")) {
        const json& j = root.at("wavelet");
        check_keys(j, {"delta_x", "p", "x_bar"}, "wavelet");
        read_into(j, "delta_x", cfg.wavelet.delta_x);
        read_into(j, "p", cfg.wavelet.p);
        read_into(j, "x_bar", cfg.wavelet.x_bar);
    }
    if (root.contains("spatial_grid")) {
        const json& j = root.at("spatial_grid");
        check_keys(j, {"x_min", "x_max", "n_points"}, "spatial_grid");
        read_into(j, "x_min", cfg.spatial.x_min);
        read_into(j, "x_max", cfg.spatial.x_max);
        read_into(j, "n_points", cfg.spatial.n_points);
    }
    if (root.contains("scale_grid")) {
        const json& j = root.at("scale_grid");
        check_keys(j, {"a_min", "a_max", "n_scales"}, "scale_grid");
        read_into(j, "a_min", cfg.a_min);
        read_into(j, "a_max", cfg.a_max);
        read_into(j, "n_scales", cfg.n_scales);
    }
    if (root.contains("potential")) cfg.potential = parse_potential(root.at("potential"));
    if (root.contains("evolution")) {
        const json& j = root.at("evolution");
        check_keys(j, {"dt", "n_steps", "method"}, "evolution");
        read_into(j, "dt", cfg.evolution.dt);
        read_into(j, "n_steps", cfg.evolution.n_steps);
        if (j.contains("method")) {
            const std::string m = j.at("method").get<std::string>();
            if (m == "split_step_spectral")
                cfg.evolution.method = PropagatorMethod::split_step_spectral;
            else if (m == "crank_nicolson")
                cfg.evolution.method = PropagatorMethod::crank_nicolson;
            else
                throw ConfigError("evolution.method: unknown method '" + m + "'");
        }
    }
    if (root.contains("initial_state")) {
        const json& j = root.at("initial_state");
        check_keys(j, {"type", "delta_x", "p", "x_bar", "a", "b"}, "initial_state");
        std::string type = "packet";
        read_into(j, "type", type);
        if (type == "packet") {
            cfg.initial_state.type = InitialStateSpec::Type::packet;
            cfg.initial_state.packet = cfg.wavelet;
            read_into(j, "delta_x", cfg.initial_state.packet.delta_x);
            read_into(j, "p", cfg.initial_state.packet.p);
            read_into(j, "x_bar", cfg.initial_state.packet.x_bar);
        } else if (type == "atom") {
            cfg.initial_state.type = InitialStateSpec::Type::atom;
            read_into(j, "a", cfg.initial_state.a);
            read_into(j, "b", cfg.initial_state.b);
        } else {
            throw ConfigError("initial_state.type: must be 'packet' or 'atom'");
        }
    } else {
        cfg.initial_state.packet = cfg.wavelet;
    }
    read_into(root, "pipeline", cfg.pipeline);
    if (root.contains("output")) {
        const json& j = root.at("output");
        check_keys(j, {"directory", "formats"}, "output");
        read_into(j, "directory", cfg.output.directory);
        if (j.contains("formats")) {
            cfg.output.csv = cfg.output.wvs1 = false;
            for (const auto& f : j.at("formats")) {
                const std::string name = f.get<std::string>();
                if (name == "csv")
                    cfg.output.csv = true;
                else if (name == "wvs1")
                    cfg.output.wvs1 = true;
                else
                    throw ConfigError("output.formats: unknown format '" + name + "'");
            }
        }
    }
    if (root.contains("admissibility")) {
        const json& j = root.at("admissibility");
        check_keys(j, {"k_min_values", "k_max"}, "admissibility");
        read_into(j, "k_min_values", cfg.admissibility.k_min_values);
        read_into(j, "k_max", cfg.admissibility.k_max);
    }
    read_into(root, "compare_times", cfg.compare_times);
    cfg.validate();
    return cfg;
}

WaveFunction build_initial_state(const ScenarioConfig& cfg) {
    if (cfg.initial_state.type == InitialStateSpec::Type::packet)
        return evaluate_wavelet(cfg.initial_state.packet, cfg.physical, cfg.spatial);
    return apply_affine(cfg.wavelet, cfg.initial_state.a, cfg.initial_state.b, cfg.physical,
                        cfg.spatial);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

void export_wavelet_field(const WaveletField& field, const ScenarioConfig& cfg,
                          const std::filesystem::path& dir, const std::string& stem) {
    if (cfg.output.csv) write_field_csv(field, (dir / (stem + ".csv")).string());
    if (cfg.output.wvs1) write_field_wvs1(field, (dir / (stem + ".wvs1")).string());
}

double default_k_max(const ScenarioConfig& cfg) {
    return cfg.wavelet.p / cfg.physical.hbar + 6.0 / cfg.wavelet.delta_x;
}

int run_transform_roundtrip(const ScenarioConfig& cfg, const std::filesystem::path& dir) {
    const WaveFunction probe = build_initial_state(cfg);
    const ScalePositionGrid grid = cfg.scale_grid();
    const FrameCalibration cal = calibrate_frame(cfg.wavelet, grid, cfg.physical, probe);
    const WaveletField field = forward_cwt(probe, cfg.wavelet, grid, cfg.physical);
    const WaveFunction recon = inverse_cwt(field, cfg.wavelet, cal, cfg.physical, probe.grid);

    WaveFunction diff = probe;
    for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= recon.values[i];
    const double rel_err = l2_norm(diff) / l2_norm(probe);

    auto out = open_output(dir / "roundtrip_error.csv");
    out << "relative_l2_error,c_eff\n" << fmt17(rel_err) << "," << fmt17(cal.c_eff) << "\n";
    export_wavelet_field(field, cfg, dir, "coefficients");
    if (rel_err > 1e-2)
        throw PreconditionError("transform_roundtrip: relative error " + fmt17(rel_err) +
                                " exceeds 1e-2");
    return 0;
}

int run_admissibility_report(const ScenarioConfig& cfg, const std::filesystem::path& dir) {
    const double k_max =
        cfg.admissibility.k_max > 0.0 ? cfg.admissibility.k_max : default_k_max(cfg);
    auto out = open_output(dir / "admissibility.csv");
    out << "k_min,k_max,c_v_cutoff,divergent\n";
    for (double k_min : cfg.admissibility.k_min_values) {
        const AdmissibilityReport rep =
            admissibility_constant(cfg.wavelet, cfg.physical, k_min, k_max);
        out << fmt17(rep.k_min) << "," << fmt17(rep.k_max) << "," << fmt17(rep.c_v_cutoff) << ","
            << (rep.divergent ? 1 : 0) << "\n";
    }
    return 0;
}

int run_potential_field(const ScenarioConfig& cfg, const std::filesystem::path& dir) {
    const WaveFunction probe = build_initial_state(cfg);
    const ScalePositionGrid grid = cfg.scale_grid();
    const FrameCalibration cal = calibrate_frame(cfg.wavelet, grid, cfg.physical, probe);
    const PotentialField field = potential_cwt(cfg.potential, cfg.wavelet, grid, cal, cfg.physical);
    if (cfg.output.csv) write_field_csv(field, (dir / "potential_field.csv").string());
    if (cfg.output.wvs1) write_field_wvs1(field, (dir / "potential_field.wvs1").string());
    auto out = open_output(dir / "diagnostics.csv");
    out << "c_eff,max_imag\n" << fmt17(cal.c_eff) << "," << fmt17(field.max_imag()) << "\n";
    return 0;
}

int run_evolve_compare(const ScenarioConfig& cfg, const std::filesystem::path& dir) {
    const WaveFunction psi0 = build_initial_state(cfg);
    const ScalePositionGrid grid = cfg.scale_grid();
    const FrameCalibration cal = calibrate_frame(cfg.wavelet, grid, cfg.physical, psi0);

    std::vector<double> times = cfg.compare_times;
    if (times.empty()) {
        const double T = cfg.evolution.dt * static_cast<double>(cfg.evolution.n_steps);
        times = {0.0, T / 4.0, T / 2.0, T};
    }
    auto out = open_output(dir / "residuals.csv");
    out << "t,residual\n";
    for (double t : times) {
        const double r = wavelet_evolution_residual(psi0, cfg.potential, cfg.wavelet, grid, cal,
                                                    cfg.physical, cfg.evolution, t);
        out << fmt17(t) << "," << fmt17(r) << "\n";
    }
    return 0;
}

} // namespace

void ScenarioConfig::validate() const {
    physical.validate();
    wavelet.validate();
    spatial.validate();
    scale_grid().validate();
    potential.validate();
    evolution.validate();
    if (initial_state.type == InitialStateSpec::Type::packet)
        initial_state.packet.validate();
    else if (!(initial_state.a > 0.0))
        throw ConfigError("initial_state.a must be > 0");
    static const std::set<std::string> pipelines{"transform_roundtrip", "admissibility_report",
                                                 "potential_field", "evolve_compare"};
    if (!pipelines.contains(pipeline))
        throw ConfigError("pipeline: unknown pipeline '" + pipeline + "'");
    for (double k : admissibility.k_min_values)
        if (!(k > 0.0)) throw ConfigError("admissibility.k_min_values must be > 0");
    for (double t : compare_times)
        if (t < 0.0) throw ConfigError("compare_times must be >= 0");
}

ScenarioConfig parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        return parse_scenario_impl(root);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config value error: ") + e.what());
    }
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario(text);
}

std::string resolved_config_json(const ScenarioConfig& cfg) {
    json root;
    root["physical"] = {{"hbar", cfg.physical.hbar}, {"mass", cfg.physical.mass}};
    root["wavelet"] = {{"delta_x", cfg.wavelet.delta_x},
                       {"p", cfg.wavelet.p},
                       {"x_bar", cfg.wavelet.x_bar}};
    root["spatial_grid"] = {{"x_min", cfg.spatial.x_min},
                            {"x_max", cfg.spatial.x_max},
                            {"n_points", cfg.spatial.n_points}};
    root["scale_grid"] = {{"a_min", cfg.a_min}, {"a_max", cfg.a_max}, {"n_scales", cfg.n_scales}};
    json pot{{"kind", kind_name(cfg.potential.kind)}};
    switch (cfg.potential.kind) {
        case PotentialModel::Kind::zero: break;
        case PotentialModel::Kind::constant: pot["v0"] = cfg.potential.v0; break;
        case PotentialModel::Kind::harmonic: pot["omega"] = cfg.potential.omega; break;
        case PotentialModel::Kind::gaussian_barrier:
            pot["v0"] = cfg.potential.v0;
            pot["width"] = cfg.potential.width;
            pot["center"] = cfg.potential.center;
            break;
    }
    root["potential"] = pot;
    root["evolution"] = {{"dt", cfg.evolution.dt},
                         {"n_steps", cfg.evolution.n_steps},
                         {"method", cfg.evolution.method == PropagatorMethod::split_step_spectral
                                        ? "split_step_spectral"
                                        : "crank_nicolson"}};
    if (cfg.initial_state.type == InitialStateSpec::Type::packet)
        root["initial_state"] = {{"type", "packet"},
                                 {"delta_x", cfg.initial_state.packet.delta_x},
                                 {"p", cfg.initial_state.packet.p},
                                 {"x_bar", cfg.initial_state.packet.x_bar}};
    else
        root["initial_state"] = {
            {"type", "atom"}, {"a", cfg.initial_state.a}, {"b", cfg.initial_state.b}};
    root["pipeline"] = cfg.pipeline;
    json formats = json::array();
    if (cfg.output.csv) formats.push_back("csv");
    if (cfg.output.wvs1) formats.push_back("wvs1");
    root["output"] = {{"directory", cfg.output.directory}, {"formats", formats}};
    root["admissibility"] = {{"k_min_values", cfg.admissibility.k_min_values},
                             {"k_max", cfg.admissibility.k_max > 0.0 ? cfg.admissibility.k_max
                                                                     : default_k_max(cfg)}};
    root["compare_times"] = cfg.compare_times;
    return root.dump(2) + "\n";
}

int run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const std::filesystem::path dir(cfg.output.directory);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    {
        auto out = open_output(dir / "resolved_config.json");
        out << resolved_config_json(cfg);
    }
    if (cfg.pipeline == "transform_roundtrip") return run_transform_roundtrip(cfg, dir);
    if (cfg.pipeline == "admissibility_report") return run_admissibility_report(cfg, dir);
    if (cfg.pipeline == "potential_field") return run_potential_field(cfg, dir);
    if (cfg.pipeline == "evolve_compare") return run_evolve_compare(cfg, dir);
    throw ConfigError("pipeline: unknown pipeline '" + cfg.pipeline + "'");
}

} // namespace wavese
