#include <cctype>
#include <string>

#include "unionbounds/scalar.hpp"

namespace unionbounds {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Decimal digits to an integer; leading zeros are stripped so the string is
// never read as octal.
BigInt decimal_integer(const std::string& digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first));
}

[[noreturn]] void bad(const std::string& text) {
  throw ValidationError("not an exact rational: '" + text + "'");
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) bad(text);

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.erase(0, 1);
  }

  Rational value;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    const BigInt d = decimal_integer(den);
    if (d == 0) throw ValidationError("zero denominator in '" + text + "'");
    value = Rational(decimal_integer(num)) / Rational(d);
  } else {
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
      std::string exp = s.substr(e + 1);
      s.erase(e);
      bool exp_negative = false;
      if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
        exp_negative = exp[0] == '-';
        exp.erase(0, 1);
      }
      if (!all_digits(exp) || exp.size() > 6) bad(text);
      exponent = std::stol(exp) * (exp_negative ? -1 : 1);
    }
    std::string digits = s;
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      const std::string whole = s.substr(0, dot);
      const std::string frac = s.substr(dot + 1);
      if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
          (!frac.empty() && !all_digits(frac)))
        bad(text);
      digits = whole + frac;
      exponent -= static_cast<long>(frac.size());
    } else if (!all_digits(s)) {
      bad(text);
    }
    if (digits.empty()) bad(text);
    value = Rational(decimal_integer(digits));
    const Rational scale = ipow(Rational(10), static_cast<unsigned long>(std::abs(exponent)));
    value = exponent >= 0 ? value * scale : value / scale;
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) { return value.str(); }

}  // namespace unionbounds
