#pragma once

#include <string>

namespace masr {

// Whole-file helpers; FormatError when the file cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace masr
