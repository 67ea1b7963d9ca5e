#include "stabb/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stabb {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_field(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number in " + where + ": \"" + text + "\"");
  }
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

CsvPoints parse_points_csv(std::istream& in) {
  CsvPoints result;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (!result.cells.empty() && fields.size() != result.cells.front().size())
      throw std::invalid_argument("row " + std::to_string(lineno) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(result.cells.front().size()));
    for (std::size_t j = 0; j < fields.size(); ++j)
      parse_field(fields[j], "row " + std::to_string(lineno));
    result.cells.push_back(std::move(fields));
  }
  if (result.cells.empty()) throw std::invalid_argument("point file holds no points");
  result.values.resize(static_cast<Eigen::Index>(result.cells.size()),
                       static_cast<Eigen::Index>(result.cells.front().size()));
  for (std::size_t i = 0; i < result.cells.size(); ++i)
    for (std::size_t j = 0; j < result.cells[i].size(); ++j)
      result.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_field(result.cells[i][j], "row " + std::to_string(i + 1));
  return result;
}

CsvPoints load_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open point file: " + path);
  return parse_points_csv(in);
}

Eigen::VectorXd parse_tolerance(const std::string& text) {
  std::vector<std::string> fields = split_fields(text);
  if (fields.empty()) throw std::invalid_argument("empty tolerance");
  Eigen::VectorXd tol(static_cast<Eigen::Index>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j)
    tol[static_cast<Eigen::Index>(j)] = parse_field(fields[j], "tolerance");
  return tol;
}

std::optional<Eigen::VectorXd> load_tolerance_sidecar(const std::string& csv_path) {
  std::filesystem::path sidecar(csv_path);
  sidecar.replace_extension(".json");
  std::ifstream in(sidecar);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed sidecar " + sidecar.string() + ": " + e.what());
  }
  if (!j.contains("tolerance") || !j["tolerance"].is_array())
    throw std::invalid_argument("sidecar " + sidecar.string() +
                                " must hold a \"tolerance\" array");
  Eigen::VectorXd tol(static_cast<Eigen::Index>(j["tolerance"].size()));
  for (std::size_t i = 0; i < j["tolerance"].size(); ++i)
    tol[static_cast<Eigen::Index>(i)] = j["tolerance"][i].get<double>();
  return tol;
}

}  // namespace stabb
