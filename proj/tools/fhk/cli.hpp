#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace fhk::cli {

enum ExitCode : int {
    Success = 0,
    ConfigFailure = 1,
    ToleranceFailure = 2,
    IllPosed = 3,
};

/// Bad or missing configuration; maps to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// INI document with sections [kernel], [grid], [run]. Every lookup records
/// the value it resolved (defaults included) so the manifest echoes the
/// complete configuration.
class Config {
public:
    Config() = default;
    explicit Config(boost::property_tree::ptree tree) : tree_(std::move(tree)) {}
    static Config load(const std::filesystem::path& path);

    double real(const std::string& key, double fallback);
    long integer(const std::string& key, long fallback);
    std::string text(const std::string& key, const std::string& fallback);
    /// Comma-separated reals; an empty value gives an empty list.
    std::vector<double> reals(const std::string& key, const std::string& fallback);

    void set(const std::string& key, const std::string& value) { tree_.put(key, value); }
    const boost::property_tree::ptree& tree() const noexcept { return tree_; }

private:
    boost::property_tree::ptree tree_;
};

struct Options {
    std::string command;
    std::filesystem::path out = ".";
    std::uint64_t seed = 0;
    int workers = 1;
    std::optional<double> tolerance;
};

/// Runs one command, writes results.csv, report.json and manifest.ini into
/// opts.out, and returns the exit code.
int run(Config& config, const Options& opts);

/// argv entry point used by the fhk binary.
int main(int argc, char** argv);

}  // namespace fhk::cli
