#pragma once

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace pmult {

// Exact rational bound exponents (denominators are 1 or 2 in practice).
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
  Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
  Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rat& o) const { return num * o.den <= o.num * den; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

  bool is_integer() const { return den == 1; }
  long long floor() const {
    long long q = num / den;
    if (num < 0 && num % den != 0) --q;
    return q;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) {
  os << r.num;
  if (r.den != 1) os << "/" << r.den;
  return os;
}

}  // namespace pmult
