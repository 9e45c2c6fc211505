#ifndef MIMOQ_CSV_HPP
#define MIMOQ_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mimoq {

// Numeric formatting used for every CSV cell ("%.12g", '.' decimal
// separator). One code path keeps output byte-stable across runs.
std::string csv_number(double value);

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);

}  // namespace mimoq

#endif
