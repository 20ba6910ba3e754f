#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "gibbslab/parallel.hpp"

using namespace gibbslab;

int main(int argc, char** argv) {
    CLI::App app{"gibbslab: exact and Monte Carlo checks for lattice spin systems"};
    app.require_subcommand(1);

    std::string configPath;
    std::string outputPath;
    std::string format = "csv";
    long threads = 0;
    long seed = -1;
    app.add_option("-c,--config", configPath, "key=value config file")->check(CLI::ExistingFile);
    app.add_option("-o,--output", outputPath, "write the report here instead of stdout");
    app.add_option("-f,--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-t,--threads", threads, "worker threads (default: GIBBSLAB_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    app.add_option("-s,--seed", seed, "overrides the seed in the config")->check(CLI::NonNegativeNumber);

    for (const auto& name : cli::commandNames()) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitUsage;
    }
    if (configPath.empty()) {
        std::cerr << "gibbslab: --config is required\n";
        return cli::kExitUsage;
    }

    try {
        cli::Config cfg = cli::Config::load(configPath);
        if (threads > 0) {
            setThreadCount(static_cast<std::size_t>(threads));
        } else if (const char* env = std::getenv("GIBBSLAB_THREADS")) {
            const long n = std::strtol(env, nullptr, 10);
            if (n < 1) throw std::invalid_argument("GIBBSLAB_THREADS must be a positive integer");
            setThreadCount(static_cast<std::size_t>(n));
        } else if (cfg.has("", "threads")) {
            const long n = cfg.integer("", "threads");
            if (n < 1) throw cfg.error("", "threads", "must be a positive integer");
            setThreadCount(static_cast<std::size_t>(n));
        }
        if (seed >= 0) cfg.set("", "seed", std::to_string(seed));
        const std::string command = app.get_subcommands().front()->get_name();
        const cli::CommandResult result = cli::runCommand(command, cfg);

        std::ofstream file;
        if (!outputPath.empty()) {
            file.open(outputPath);
            if (!file) throw std::runtime_error("cannot write '" + outputPath + "'");
        }
        std::ostream& out = outputPath.empty() ? std::cout : file;
        if (result.hasRaw) {
            out << result.raw;
        } else if (format == "json") {
            writeJson(out, result.table);
        } else {
            writeCsv(out, result.table);
        }
        for (const auto& line : result.summary) std::cerr << line << '\n';
        return result.exitCode;
    } catch (const std::exception& e) {
        std::cerr << "gibbslab: " << e.what() << '\n';
        return cli::kExitUsage;
    }
}
