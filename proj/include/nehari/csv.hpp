#ifndef NEHARI_CSV_HPP
#define NEHARI_CSV_HPP

#include <span>
#include <string>
#include <vector>

namespace nehari {

/// Locale-independent decimal rendering with 17 significant digits; every
/// numeric value in emitted CSV goes through this.
std::string format_double(double x);

/// One CSV line from already-formatted cells.
std::string csv_row(std::span<const std::string> cells);

/// Profile dump: header `r,u,v`, one row per node including the boundary
/// rows (symmetric value at r = 0, zeros at r = R).
std::string profile_csv(double R, std::span<const double> nodes, double u0, double v0,
                        std::span<const double> u, std::span<const double> v);

} // namespace nehari

#endif
