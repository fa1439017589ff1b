#include "gbq/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gbq::cfg {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

Config Config::parse_text(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config: bad section at line " +
                                         std::to_string(lineno));
            continue; // sections are documentation only
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value at line " +
                                     std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key at line " +
                                     std::to_string(lineno));
        if (c.kv_.count(key))
            throw std::runtime_error("config: duplicate key '" + key + "'");
        c.kv_[key] = val;
    }
    return c;
}

void Config::set(const std::string& key, const std::string& value) {
    kv_[key] = value;
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_str(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end())
        throw std::runtime_error("config: missing required key '" + key + "'");
    return it->second;
}

std::string Config::get_str(const std::string& key,
                            const std::string& dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
}

double Config::get_f64(const std::string& key) const {
    const std::string v = get_str(key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing text");
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not a number: " + v);
    }
}

double Config::get_f64(const std::string& key, double dflt) const {
    return has(key) ? get_f64(key) : dflt;
}

long Config::get_int(const std::string& key) const {
    const std::string v = get_str(key);
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing text");
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key +
                                 "' is not an integer: " + v);
    }
}

long Config::get_int(const std::string& key, long dflt) const {
    return has(key) ? get_int(key) : dflt;
}

bool Config::get_bool(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    const std::string v = get_str(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("config: key '" + key + "' is not a boolean: " + v);
}

std::vector<double> Config::get_list(const std::string& key) const {
    const std::string v = get_str(key);
    std::vector<double> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty())
        throw std::runtime_error("config: key '" + key + "' is an empty list");
    return out;
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& dflt) const {
    return has(key) ? get_list(key) : dflt;
}

std::string Config::echo() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    }
    return out;
}

} // namespace gbq::cfg
