#include "hlf/config.hpp"

#include <fstream>
#include <sstream>

namespace hlf {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::IoFailure, "config: cannot open " + path);
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::BadFormat,
                        "config: missing '=' at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw Error(ErrorCode::BadFormat,
                        "config: empty key at line " + std::to_string(lineno));
        cfg.entries_[key] = Entry{trim(line.substr(eq + 1)), lineno};
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    entries_[key] = Entry{value, 0};
}

void Config::set_line(const std::string& line) {
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw Error(ErrorCode::BadFormat, "config override: expected key=value, got '" + line + "'");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

void Config::validate(const std::set<std::string>& known) const {
    for (const auto& [key, entry] : entries_)
        if (!known.count(key))
            throw Error(ErrorCode::BadArgument,
                        "config: unknown key '" + key + "'" +
                            (entry.line > 0 ? " at line " + std::to_string(entry.line) : ""));
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

int Config::get_int(const std::string& key, int def) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    try {
        size_t pos = 0;
        const int v = std::stoi(it->second.value, &pos);
        if (pos != it->second.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadFormat, "config: key '" + key + "' is not an integer");
    }
}

double Config::get_double(const std::string& key, double def) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    try {
        size_t pos = 0;
        const double v = std::stod(it->second.value, &pos);
        if (pos != it->second.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadFormat, "config: key '" + key + "' is not a number");
    }
}

std::string Config::get_string(const std::string& key, const std::string& def) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? def : it->second.value;
}

bool Config::get_flag(const std::string& key, bool def) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    const std::string& v = it->second.value;
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw Error(ErrorCode::BadFormat, "config: key '" + key + "' is not a flag");
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& def) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    std::vector<double> out;
    std::stringstream ss(it->second.value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw Error(ErrorCode::BadFormat, "config: key '" + key + "' has a non-numeric entry");
        }
    }
    return out;
}

}  // namespace hlf
