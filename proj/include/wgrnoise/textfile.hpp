#pragma once

#include <istream>
#include <string>
#include <vector>

namespace wgr {

// Line-oriented structured text shared by material, mode-table and scan
// configuration files.  A line is a sequence of whitespace-separated tokens;
// '#' starts a comment; blank lines are skipped.  The grammar is documented
// in docs/file_formats.md.
struct TextLine {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<TextLine> read_text_lines(std::istream& in);

double to_number(const std::string& token, const std::string& source, int line);
long to_integer(const std::string& token, const std::string& source, int line);

}  // namespace wgr
