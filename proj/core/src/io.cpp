#include "solitonlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "solitonlab/errors.hpp"

namespace solitonlab {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string csv_line(const std::vector<std::optional<double>>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        if (fields[i]) out += fmt_double(*fields[i]);
    }
    out += '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgError("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw ArgError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ArgError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace solitonlab
