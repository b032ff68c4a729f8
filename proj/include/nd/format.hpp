#ifndef ND_FORMAT_HPP
#define ND_FORMAT_HPP

#include <stdexcept>
#include <string>

#include "nd/neroncore.hpp"

namespace nd {

// Line and column are 1-based; expected names the token or key wanted there.
struct FormatError : std::runtime_error {
  FormatError(std::size_t line, std::size_t column, const std::string& msg, std::string expected = {});
  std::size_t line, column;
  std::string expected;
};

// Problem files:
//   char 0
//   bound 8
//   base x1 x2
//   base_ideal: <poly>; ...      (optional)
//   vars Y1 Y2
//   ideal: <poly>; ...
//   map: Y1 -> <poly>, Y2 -> <poly>
// '#' starts a comment. Keys may appear in any order.
Problem parse_problem(const std::string& text);
std::string print_problem(const Problem& pb);

// A certificate is a problem file followed by a `certificate` line and the
// witness sections. print(parse(print(c))) == print(c).
DesingCertificate parse_certificate(const std::string& text);
std::string print_certificate(const DesingCertificate& c);

}  // namespace nd

#endif
