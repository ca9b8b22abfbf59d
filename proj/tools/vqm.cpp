#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vqm/job.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Quasimodule rewriting engine"};
    std::string configPath, task, out;
    std::uint64_t seed = 0;
    bool strictOverflow = false;
    app.add_option("--config", configPath, "JSON job configuration")->check(CLI::ExistingFile);
    app.add_option("--task", task, "verify | normalize | spanning | cofiniteness")
        ->check(CLI::IsMember({"verify", "normalize", "spanning", "cofiniteness"}));
    auto* seedOpt = app.add_option("--seed", seed, "random seed");
    app.add_option("--out", out, "artifact directory");
    app.add_flag("--strict-overflow", strictOverflow, "treat truncation overflow as a failure");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    vqm::JobConfig cfg;
    try {
        if (!configPath.empty()) {
            std::ifstream in(configPath);
            vqm::json j;
            try {
                j = vqm::json::parse(in);
            } catch (const vqm::json::parse_error& e) {
                throw vqm::ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            cfg = vqm::parse_config(j);
        }
        if (!task.empty())
            cfg.task = task;
        if (*seedOpt)
            cfg.seed = seed;
        if (!out.empty())
            cfg.out = out;
        if (strictOverflow)
            cfg.strict_overflow = true;
        vqm::validate(cfg);
    } catch (const vqm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        vqm::JobResult r = vqm::run(cfg);
        std::cout << r.summary;
        std::cout << "artifacts: " << cfg.out << "/" << cfg.task << ".json\n";
        return r.exit_code;
    } catch (const vqm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
