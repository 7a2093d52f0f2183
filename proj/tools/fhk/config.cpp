#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include "cli.hpp"

namespace fhk::cli {

namespace pt = boost::property_tree;

Config Config::load(const std::filesystem::path& path) {
    pt::ptree tree;
    try {
        pt::read_ini(path.string(), tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    return Config(std::move(tree));
}

namespace {

template <class T>
T parse_value(const std::string& key, const std::string& raw) {
    std::istringstream in(boost::algorithm::trim_copy(raw));
    T v{};
    in >> v;
    if (in.fail() || !in.eof()) throw ConfigError("invalid value for " + key + ": '" + raw + "'");
    return v;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double Config::real(const std::string& key, double fallback) {
    if (auto raw = tree_.get_optional<std::string>(key)) return parse_value<double>(key, *raw);
    tree_.put(key, format_real(fallback));
    return fallback;
}

long Config::integer(const std::string& key, long fallback) {
    if (auto raw = tree_.get_optional<std::string>(key)) return parse_value<long>(key, *raw);
    tree_.put(key, std::to_string(fallback));
    return fallback;
}

std::string Config::text(const std::string& key, const std::string& fallback) {
    if (auto raw = tree_.get_optional<std::string>(key)) return boost::algorithm::trim_copy(*raw);
    tree_.put(key, fallback);
    return fallback;
}

std::vector<double> Config::reals(const std::string& key, const std::string& fallback) {
    const std::string raw = text(key, fallback);
    std::vector<double> out;
    if (boost::algorithm::trim_copy(raw).empty()) return out;
    std::vector<std::string> parts;
    boost::algorithm::split(parts, raw, boost::is_any_of(","));
    for (const auto& p : parts) out.push_back(parse_value<double>(key, p));
    return out;
}

}  // namespace fhk::cli
