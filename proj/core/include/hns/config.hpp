/// @file config.hpp
/// @brief Flat key=value configuration with dotted namespaces

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hns {

class Config {
public:
    /// Lines of `key = value`; '#' starts a comment. Duplicate or malformed
    /// lines raise ValidationError naming the source and line.
    static Config parse(std::istream& is, const std::string& source = "<config>");
    static Config parse_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    /// "key=value" from the command line
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const;
    const std::string& get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Comma-separated list of reals
    std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
    std::vector<std::string> get_strings(const std::string& key, const std::vector<std::string>& fallback) const;

    /// ValidationError listing every key outside `allowed`
    void require_known(const std::set<std::string>& allowed) const;
    /// ValidationError listing every missing key
    void require_present(const std::vector<std::string>& keys) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    /// Sorted `key=value` lines
    std::string canonical() const;

private:
    std::map<std::string, std::string> entries_;
};

std::uint64_t fnv1a64(const std::string& data);

/// 16 hex digits over the command, canonical config and code version
std::string make_run_id(const std::string& command, const Config& cfg, const std::string& version);

} // namespace hns
