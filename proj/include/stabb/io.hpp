#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stabb {

// A parsed point file. Cells keep the original field text so exact-rational
// consumers can ingest decimals without a double round trip.
struct CsvPoints {
  Eigen::MatrixXd values;
  std::vector<std::vector<std::string>> cells;

  int count() const { return static_cast<int>(values.rows()); }
  int nvars() const { return static_cast<int>(values.cols()); }
};

// One point per row, comma-separated decimal fields, no header; blank lines
// are skipped. Throws std::invalid_argument naming the offending row.
CsvPoints parse_points_csv(std::istream& in);
CsvPoints load_points_csv(const std::string& path);

// "0.15,0.15" -> vector; throws on empty or non-numeric fields.
Eigen::VectorXd parse_tolerance(const std::string& text);

// Reads {"tolerance": [...]} from the path obtained by swapping the input's
// extension for .json; nullopt when no such file exists.
std::optional<Eigen::VectorXd> load_tolerance_sidecar(const std::string& csv_path);

}  // namespace stabb
