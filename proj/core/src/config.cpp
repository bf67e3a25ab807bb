/// @file config.cpp
/// @brief key=value configuration parsing

#include "hns/config.hpp"
#include "hns/error.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace hns {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
    if (k.empty() || k.front() == '.' || k.back() == '.') return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
    return true;
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    const char* b = v.data();
    const char* e = b + v.size();
    auto [p, ec] = std::from_chars(b, e, x);
    if (ec != std::errc() || p != e) {
        if (v == "inf" || v == "+inf" || v == "infinity") return std::numeric_limits<double>::infinity();
        throw ValidationError("key " + key + ": expected a number, got '" + v + "'");
    }
    return x;
}

std::vector<std::string> split(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

Config Config::parse(std::istream& is, const std::string& source) {
    Config c;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw ValidationError(where + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) throw ValidationError(where + ": invalid key '" + key + "'");
        if (c.entries_.count(key)) throw ValidationError(where + ": duplicate key " + key);
        c.entries_[key] = value;
    }
    return c;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot read config file " + path);
    return parse(is, path);
}

void Config::set(const std::string& key, const std::string& value) {
    if (!valid_key(key)) throw ValidationError("invalid key '" + key + "'");
    entries_[key] = value;
}

void Config::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ValidationError("override '" + assignment + "' is not key=value");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

const std::string& Config::get_string(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ValidationError("missing required key: " + key);
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const { return to_double(key, get_string(key)); }

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = get_string(key);
    int x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ValidationError("key " + key + ": expected an integer, got '" + v + "'");
    return x;
}

std::uint64_t Config::get_u64(const std::string& key) const {
    const std::string& v = get_string(key);
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ValidationError("key " + key + ": expected a non-negative integer, got '" + v + "'");
    return x;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = get_string(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ValidationError("key " + key + ": expected a boolean, got '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& item : split(get_string(key))) out.push_back(to_double(key, item));
    if (out.empty()) throw ValidationError("key " + key + ": empty list");
    return out;
}

std::vector<std::string> Config::get_strings(const std::string& key, const std::vector<std::string>& fallback) const {
    if (!has(key)) return fallback;
    auto out = split(get_string(key));
    if (out.empty()) throw ValidationError("key " + key + ": empty list");
    return out;
}

void Config::require_known(const std::set<std::string>& allowed) const {
    std::string unknown;
    for (const auto& [k, v] : entries_)
        if (!allowed.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
    if (!unknown.empty()) throw ValidationError("unknown keys: " + unknown);
}

void Config::require_present(const std::vector<std::string>& keys) const {
    std::string missing;
    for (const auto& k : keys)
        if (!has(k)) missing += (missing.empty() ? "" : ", ") + k;
    if (!missing.empty()) throw ValidationError("missing required keys: " + missing);
}

std::string Config::canonical() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
    return out;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string make_run_id(const std::string& command, const Config& cfg, const std::string& version) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(command + "\n" + cfg.canonical() + "version=" + version)));
    return buf;
}

} // namespace hns
