#ifndef OPTIRL_CSV_HPP
#define OPTIRL_CSV_HPP

#include <string>
#include <vector>

namespace optirl::csv {

// Serialize a double with 17 significant digits so the value round-trips
// bit-exactly through text.
std::string format_double(double x);

std::vector<std::string> split_line(const std::string& line);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
};

Table read_file(const std::string& path);
void write_file(const std::string& path, const Table& table);

double parse_double(const std::string& s, const std::string& context);
long parse_long(const std::string& s, const std::string& context);

}  // namespace optirl::csv

#endif  // OPTIRL_CSV_HPP
