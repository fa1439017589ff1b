#ifndef GBQ_RUNIO_HPP
#define GBQ_RUNIO_HPP

#include <string>
#include <vector>

namespace gbq::io {

// First unused out_root/run-NNN; creation is what claims the slot, so
// existing runs are never overwritten.
std::string make_run_dir(const std::string& out_root);

void write_text(const std::string& path, const std::string& content);
std::string format_g17(double x);

// Header row plus decimal rows at 17 significant digits.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns);
    void add_row(const std::vector<double>& row);
    void write(const std::string& path) const;
    const std::string& text() const { return body_; }

  private:
    std::size_t ncols_;
    std::string body_;
};

// Minimal polyline plot of (x, y) series, one per label; enough to eyeball
// the CSV outputs without external tooling.
void write_svg_lines(const std::string& path,
                     const std::vector<std::string>& labels,
                     const std::vector<std::vector<double>>& xs,
                     const std::vector<std::vector<double>>& ys, bool logx,
                     bool logy);

} // namespace gbq::io

#endif
