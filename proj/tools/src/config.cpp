#include "horonerve/tools/config.hpp"

#include "horonerve/error.hpp"

#include <boost/algorithm/string.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace horonerve::tools {

namespace {

std::vector<std::string> tokens(const std::string& value) {
    std::vector<std::string> out;
    boost::split(out, value, boost::is_any_of(" \t,"), boost::token_compress_on);
    out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
    return out;
}

int parse_int(const std::string& source, const std::string& key, const std::string& value, int lo, int hi) {
    int v = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(source + ": " + key + " expects an integer, got '" + value + "'");
    if (v < lo || v > hi)
        throw ConfigError(source + ": " + key + " = " + value + " is outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return v;
}

GroupFamily parse_family(const std::string& source, const std::string& value) {
    if (value == "free") return GroupFamily::Free;
    if (value == "free-abelian") return GroupFamily::FreeAbelian;
    if (value == "free-product") return GroupFamily::FreeProduct;
    throw ConfigError(source + ": unknown family '" + value + "' (free, free-abelian, free-product)");
}

} // namespace

std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text, const std::string& source) {
    std::vector<std::pair<std::string, std::string>> out;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        boost::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(number);
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        std::string key = boost::trim_copy(line.substr(0, eq));
        std::string value = boost::trim_copy(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

InstanceConfig parse_instance(const std::string& text, const std::string& source) {
    InstanceConfig c;
    bool have_family = false;
    constexpr int kBig = 1 << 20;
    for (const auto& [key, value] : parse_key_values(text, source)) {
        if (key == "name") {
            c.name = value;
        } else if (key == "family") {
            c.family = parse_family(source, value);
            have_family = true;
        } else if (key == "ranks") {
            c.ranks.clear();
            for (const auto& t : tokens(value)) c.ranks.push_back(parse_int(source, key, t, 1, 64));
        } else if (key == "names") {
            c.names = tokens(value);
        } else if (key == "peripheral") {
            c.peripheral.clear();
            for (const auto& t : tokens(value)) c.peripheral.push_back(parse_int(source, key, t, 0, 1) == 1);
        } else if (key == "rg") {
            c.rg = parse_int(source, key, value, 0, kBig);
        } else if (key == "lmax") {
            c.lmax = parse_int(source, key, value, 0, 60);
        } else if (key == "mmax") {
            c.mmax = parse_int(source, key, value, 0, kBig);
        } else if (key == "schedule") {
            c.schedule = Schedule::parse(value);
        } else if (key == "dimcap") {
            c.dimcap = parse_int(source, key, value, 1, 16);
        } else if (key == "seed") {
            try {
                c.seed = std::stoull(value);
            } catch (const std::exception&) {
                throw ConfigError(source + ": seed expects an unsigned integer, got '" + value + "'");
            }
        } else if (key == "excision_n") {
            c.excision_n = parse_int(source, key, value, 1, kBig);
        } else if (key == "rips_rg") {
            c.rips_rg = parse_int(source, key, value, 0, kBig);
        } else if (key == "rips_lmax") {
            c.rips_lmax = parse_int(source, key, value, 1, 60);
        } else if (key == "rips_dmax") {
            c.rips_dmax = parse_int(source, key, value, 1, 16);
        } else {
            throw ConfigError(source + ": unknown key '" + key + "'");
        }
    }
    if (!have_family) throw ConfigError(source + ": missing key 'family'");
    if (c.ranks.empty()) throw ConfigError(source + ": missing key 'ranks'");
    if (c.family != GroupFamily::FreeProduct && c.ranks.size() != 1)
        throw ConfigError(source + ": family " + to_string(c.family) + " takes a single rank");
    // Validates names and the peripheral flag count.
    c.peripherals();
    return c;
}

InstanceConfig load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open instance file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_instance(text.str(), path);
}

GroupSpec InstanceConfig::group() const {
    try {
        switch (family) {
        case GroupFamily::Free:
            return GroupSpec::free(ranks.at(0), names);
        case GroupFamily::FreeAbelian:
            return GroupSpec::free_abelian(ranks.at(0), names);
        case GroupFamily::FreeProduct: {
            std::vector<FactorSpec> factors;
            for (const int r : ranks) factors.push_back({GroupFamily::FreeAbelian, r});
            return GroupSpec::free_product(factors, names);
        }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(name + ": " + e.what());
    }
    throw ConfigError("unreachable group family");
}

PeripheralSpec InstanceConfig::peripherals() const {
    const auto spec = group();
    if (peripheral.empty()) return {};
    if (peripheral.size() != spec.atoms().size())
        throw ConfigError(name + ": peripheral lists " + std::to_string(peripheral.size()) + " flags for " +
                          std::to_string(spec.atoms().size()) + " factors");
    PeripheralSpec p;
    for (std::size_t a = 0; a < peripheral.size(); ++a)
        if (peripheral[a]) p.atoms.push_back(static_cast<int>(a));
    return p;
}

} // namespace horonerve::tools
