#include "nehari/csv.hpp"

#include <charconv>
#include <cmath>

namespace nehari {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_row(std::span<const std::string> cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string profile_csv(double R, std::span<const double> nodes, double u0, double v0,
                        std::span<const double> u, std::span<const double> v) {
  std::string out = "r,u,v\n";
  auto row = [&out](double r, double uu, double vv) {
    out += format_double(r);
    out += ',';
    out += format_double(uu);
    out += ',';
    out += format_double(vv);
    out += '\n';
  };
  row(0.0, u0, v0);
  for (std::size_t i = 0; i < nodes.size(); ++i) row(nodes[i], u[i], v[i]);
  row(R, 0.0, 0.0);
  return out;
}

} // namespace nehari
