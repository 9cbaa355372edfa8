#include "clark/complex_format.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "clark/errors.hpp"

namespace clark {

namespace {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalize -0
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace

std::string format_complex(std::complex<double> v) {
  double re = v.real(), im = v.imag();
  if (im == 0.0) return format_double(re);
  std::string imag_part;
  if (im == 1.0) {
    imag_part = "i";
  } else if (im == -1.0) {
    imag_part = "-i";
  } else {
    imag_part = format_double(im) + "i";
  }
  if (re == 0.0) return imag_part;
  if (im > 0.0 || imag_part[0] != '-') return format_double(re) + "+" + imag_part;
  return format_double(re) + imag_part;
}

std::complex<double> parse_complex(const std::string& text) {
  if (text.empty()) fail("bad_complex", "empty complex literal");

  // Split at the last '+'/'-' that is neither leading nor an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    char c = text[i];
    if ((c == '+' || c == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }

  auto parse_double = [&](std::string s, double* out) -> bool {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    *out = std::strtod(begin, &end);
    return end == begin + s.size();
  };

  auto parse_part = [&](std::string s, bool* is_imag, double* out) {
    *is_imag = !s.empty() && (s.back() == 'i' || s.back() == 'I');
    if (*is_imag) {
      s.pop_back();
      if (s.empty() || s == "+") {
        *out = 1.0;
        return;
      }
      if (s == "-") {
        *out = -1.0;
        return;
      }
    }
    if (!parse_double(s, out))
      fail("bad_complex", "malformed complex literal: \"" + text + "\"");
  };

  bool imag_a = false, imag_b = false;
  double a = 0.0, b = 0.0;
  if (split == std::string::npos) {
    parse_part(text, &imag_a, &a);
    return imag_a ? std::complex<double>(0.0, a) : std::complex<double>(a, 0.0);
  }
  parse_part(text.substr(0, split), &imag_a, &a);
  parse_part(text.substr(split), &imag_b, &b);
  if (imag_a == imag_b)
    fail("bad_complex", "malformed complex literal: \"" + text + "\"");
  return imag_a ? std::complex<double>(b, a) : std::complex<double>(a, b);
}

}  // namespace clark
