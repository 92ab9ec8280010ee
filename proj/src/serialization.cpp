#include "polyflow/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polyflow/errors.hpp"

namespace polyflow {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string polygon_to_json(const Polygon& p) {
  std::string out = "[";
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Point z = p.vertices()[j];
    if (j) out += ", ";
    out += "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
  }
  out += "]";
  return out;
}

Polygon polygon_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("polygon JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InvalidArgument("polygon JSON: expected an array of [x, y] pairs");
  std::vector<Point> v;
  for (const auto& pair : doc) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw InvalidArgument("polygon JSON: every entry must be [x, y]");
    v.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return Polygon(std::move(v));
}

std::string polygon_to_csv(const Polygon& p) {
  std::string out = "j,x,y\n";
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Point z = p.vertices()[j];
    out += std::to_string(j) + "," + format_double(z.real()) + "," + format_double(z.imag()) + "\n";
  }
  return out;
}

Polygon polygon_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("j,x,y", 0) != 0)
    throw InvalidArgument("polygon CSV: missing `j,x,y` header");
  std::vector<Point> v;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string idx, xs, ys;
    if (!std::getline(row, idx, ',') || !std::getline(row, xs, ',') || !std::getline(row, ys))
      throw InvalidArgument("polygon CSV: malformed row `" + line + "`");
    if (std::stoul(idx) != v.size()) throw InvalidArgument("polygon CSV: rows out of order");
    v.emplace_back(std::stod(xs), std::stod(ys));
  }
  return Polygon(std::move(v));
}

Polygon load_polygon(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open polygon file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const bool is_csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return is_csv ? polygon_from_csv(ss.str()) : polygon_from_json(ss.str());
}

}  // namespace polyflow
