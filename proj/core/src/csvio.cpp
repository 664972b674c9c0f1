#include "oscbath/csvio.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace oscbath {

void put_double(std::ostream& os, double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, res.ptr - buf);
}

std::string double_to_string(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void put_double_17(std::ostream& os, double v) {
    char buf[64];
    auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    os.write(buf, res.ptr - buf);
}

const std::vector<double>& CsvData::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return columns[i];
    }
    throw std::out_of_range("csv: no column named " + name);
}

CsvData read_csv(std::istream& is) {
    CsvData data;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) data.header.push_back(cell);
    }
    data.columns.assign(data.header.size(), {});
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::size_t start = 0, col = 0;
        while (col < data.header.size()) {
            std::size_t end = line.find(',', start);
            if (end == std::string::npos) end = line.size();
            double v = 0.0;
            auto res = std::from_chars(line.data() + start, line.data() + end, v);
            if (res.ec != std::errc{}) throw std::runtime_error("csv: bad number: " + line.substr(start, end - start));
            data.columns[col].push_back(v);
            start = end + 1;
            ++col;
        }
    }
    return data;
}

CsvData read_csv_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_csv(is);
}

}  // namespace oscbath
