#pragma once

#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "priceforge/cli.hpp"
#include "support.hpp"

namespace pftest {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

inline CliRun run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"priceforge"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliRun r;
    r.code = priceforge::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// One invocation per command; "{out}" is replaced by the run's output directory.
inline std::vector<std::vector<std::string>> command_matrix(const std::string& data_dir) {
    const std::string da = data_dir + "/da.csv";
    const std::string id = data_dir + "/id.csv";
    return {
        {"ingest", "--da", da, "--id", id, "--out", "{out}"},
        {"profile", "day", "--da", da, "--id", id, "--mode", "nominal", "--out", "{out}"},
        {"profile", "week", "--da", da, "--id", id, "--mode", "extreme", "--out", "{out}"},
        {"stats", "--da", da, "--id", id, "--out", "{out}"},
        {"match", "--da", da, "--id", id, "--horizon", "day", "--out", "{out}"},
        {"cluster", "--da", da, "--id", id, "--criterion", "b", "--algo", "kmedoids", "--k", "auto", "--out", "{out}"},
        {"schedule", "--da", da, "--id", id, "--setup", "iii", "--scenario", "nominal", "--dump-lp", "--out", "{out}"},
        {"benchmark", "--da", da, "--id", id, "--setup", "i", "--scenarios", "nominal,kmeans:b:3", "--out", "{out}"},
        {"synth", "--fixture", "synth2023", "--out", "{out}"},
    };
}

inline std::vector<std::string> substitute(std::vector<std::string> args, const std::string& out) {
    for (auto& a : args) {
        if (a == "{out}") a = out;
    }
    return args;
}

inline std::string scrub(std::string text, const std::string& path) {
    for (std::size_t pos; (pos = text.find(path)) != std::string::npos;) text.replace(pos, path.size(), "{out}");
    return text;
}

inline std::map<std::string, std::string> tree_bytes(const std::filesystem::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) {
            files[std::filesystem::relative(entry.path(), root).string()] = slurp(entry.path());
        }
    }
    return files;
}

}  // namespace pftest
