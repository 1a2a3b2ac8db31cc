#pragma once
#include <optional>
#include <string>
#include <vector>

namespace solitonlab {

// Locale-free decimal formatting, 17 significant digits (round-trips doubles and is
// byte-stable across runs). NaN renders as "nan", infinities as "inf"/"-inf".
std::string fmt_double(double v);

// One CSV line; absent fields render empty. Terminated with '\n' (LF only).
std::string csv_line(const std::vector<std::optional<double>>& fields);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace solitonlab
