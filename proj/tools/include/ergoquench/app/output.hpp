#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace ergoquench::app {

/// Empty cell, text, or a number written with 17 significant digits.
using Cell = std::variant<std::monostate, std::string, double, long long>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }

  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_number(double v);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Minimal polyline rendering, axes with min/max tick labels and a legend.
std::string render_svg(const LinePlot& plot);
void write_svg(const LinePlot& plot, const std::filesystem::path& path);

}  // namespace ergoquench::app
