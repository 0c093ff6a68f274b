#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace logvor {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVector = std::vector<Rat>;
using RatMatrix = std::vector<RatVector>;

enum class ErrorKind {
  Parse,
  InvalidModel,
  Domain,
  Unbounded,
  Unsupported,
  DegenerateSplit,
  NotRealizable,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Parses "p", "-p", "p/q". Tolerates surrounding whitespace and the
// unicode minus sign U+2212 that shows up in copy-pasted math.
inline Rat parse_rat(const std::string& raw) {
  std::string s;
  s.reserve(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    unsigned char ch = static_cast<unsigned char>(raw[i]);
    if (ch == 0xE2 && i + 2 < raw.size() &&
        static_cast<unsigned char>(raw[i + 1]) == 0x88 &&
        static_cast<unsigned char>(raw[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
    } else if (!std::isspace(ch)) {
      s.push_back(raw[i]);
    }
  }
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational literal");
  auto check_int = [&](const std::string& t) {
    if (t.empty()) throw Error(ErrorKind::Parse, "bad rational literal '" + raw + "'");
    size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) throw Error(ErrorKind::Parse, "bad rational literal '" + raw + "'");
    for (size_t i = start; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw Error(ErrorKind::Parse, "bad rational literal '" + raw + "'");
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    check_int(s);
    return Rat(Int(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  Int d(den);
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + raw + "'");
  return Rat(Int(num), d);
}

// Canonical form: integers as "p", otherwise "p/q" with q > 0.
inline std::string format_rat(const Rat& r) {
  Int n = numerator(r), d = denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

inline int sign(const Rat& r) { return r.sign(); }

inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace logvor
