#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "wavese/scenario.hpp"
#include "wavese/threading.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

int dispatch(const std::string& config_path, const std::string& output_dir,
             std::size_t threads, bool execute) {
    wavese::set_max_threads(threads);
    wavese::ScenarioConfig cfg = wavese::parse_scenario_file(config_path);
    if (!output_dir.empty()) cfg.output.directory = output_dir;
    if (!execute) {
        std::printf("ok: %s\n", config_path.c_str());
        return 0;
    }
    return wavese::run_scenario(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavese: wavelet-domain Schrodinger evolution scenarios"};
    app.require_subcommand(1);

    std::size_t threads = 0;
    std::string output_dir;
    app.add_option("--threads", threads, "cap worker threads (0 = hardware)");

    std::string run_config, validate_config;
    CLI::App* run = app.add_subcommand("run", "execute a scenario config");
    run->add_option("config", run_config, "scenario config file (JSON)")->required();
    run->add_option("--output-dir", output_dir, "override output directory");
    CLI::App* validate = app.add_subcommand("validate", "parse and validate a config");
    validate->add_option("config", validate_config, "scenario config file (JSON)")->required();
    CLI::App* version = app.add_subcommand("version", "print version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (version->parsed()) {
            std::printf("wavese %s\n", kVersion);
            return 0;
        }
        if (run->parsed()) return dispatch(run_config, output_dir, threads, true);
        return dispatch(validate_config, "", threads, false);
    } catch (const wavese::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const wavese::PreconditionError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const wavese::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    }
}
