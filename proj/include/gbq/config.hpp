#ifndef GBQ_CONFIG_HPP
#define GBQ_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

namespace gbq::cfg {

// Plain-text "key = value" configuration with optional [section] headers.
// Sections are organizational only; keys are global (and must be unique),
// so every key doubles as a CLI flag of the same name.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_str(const std::string& key) const;
    std::string get_str(const std::string& key, const std::string& dflt) const;
    double get_f64(const std::string& key) const;
    double get_f64(const std::string& key, double dflt) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long dflt) const;
    bool get_bool(const std::string& key, bool dflt) const;
    std::vector<double> get_list(const std::string& key) const;
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& dflt) const;

    // Canonical re-parseable echo: sorted "key = value" lines.
    std::string echo() const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

} // namespace gbq::cfg

#endif
