#include "masr/io.hpp"

#include <fstream>
#include <sstream>

#include "masr/errors.hpp"

namespace masr {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << contents;
  if (!out) throw FormatError("failed writing " + path);
}

}  // namespace masr
