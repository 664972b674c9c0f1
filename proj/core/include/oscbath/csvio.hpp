// csvio.hpp — Deterministic numeric formatting and simple CSV reading
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oscbath {

// Shortest round-trip decimal representation of a binary double.
void put_double(std::ostream& os, double v);
std::string double_to_string(double v);

// Fixed 17-significant-digit form (coefficient tables).
void put_double_17(std::ostream& os, double v);

struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    const std::vector<double>& column(const std::string& name) const;
};

CsvData read_csv(std::istream& is);
CsvData read_csv_file(const std::string& path);

}  // namespace oscbath
