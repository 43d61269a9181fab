#include "wgrnoise/textfile.hpp"

#include <cstdlib>
#include <sstream>

#include "wgrnoise/errors.hpp"

namespace wgr {

std::vector<TextLine> read_text_lines(std::istream& in) {
  std::vector<TextLine> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    TextLine line;
    line.number = number;
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

double to_number(const std::string& token, const std::string& source, int line) {
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0')
    throw ParseError(source, line, "expected a number, got '" + token + "'");
  return v;
}

long to_integer(const std::string& token, const std::string& source, int line) {
  char* end = nullptr;
  long v = std::strtol(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0')
    throw ParseError(source, line, "expected an integer, got '" + token + "'");
  return v;
}

}  // namespace wgr
