#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hlf/image.hpp"

namespace hlf {

// Flat key=value configuration: one entry per line, '#' comments,
// case-sensitive keys. Unknown keys are rejected with their line
// number once the known-key set is declared.
class Config {
public:
    Config() = default;

    // Parse a file. Throws on syntax errors.
    static Config load(const std::string& path);

    // Apply a "key=value" override (CLI flags take precedence over the file).
    void set(const std::string& key, const std::string& value);
    void set_line(const std::string& line);  // "key=value"

    // Reject any key not in `known`, naming the key and its line number.
    void validate(const std::set<std::string>& known) const;

    bool has(const std::string& key) const;
    int get_int(const std::string& key, int def) const;
    double get_double(const std::string& key, double def) const;
    std::string get_string(const std::string& key, const std::string& def) const;
    bool get_flag(const std::string& key, bool def) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& def) const;

private:
    struct Entry {
        std::string value;
        int line = 0;  // 0 = set programmatically
    };
    std::map<std::string, Entry> entries_;
};

}  // namespace hlf
