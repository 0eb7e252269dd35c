#include "thmoon/bqf.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

namespace thmoon {

namespace {

long mod4(long x) { return ((x % 4) + 4) % 4; }

bool is_discriminant(long x) { return mod4(x) == 0 || mod4(x) == 1; }

}  // namespace

QuadForm apply_scaled(const QuadForm& q, long a, long b, long c, long d,
                      long n) {
  if (n <= 0 || a * d - b * c != n)
    throw WrongDiscriminantShape("matrix determinant mismatch");
  long A = q.A * a * a + q.B * a * c + q.C * c * c;
  long B = 2 * q.A * a * b + q.B * (a * d + b * c) + 2 * q.C * c * d;
  long C = q.A * b * b + q.B * b * d + q.C * d * d;
  if (A % n || B % n || C % n)
    throw WrongDiscriminantShape("form action leaves the integral lattice");
  return {A / n, B / n, C / n};
}

std::vector<QuadForm> reduced_forms(long d) {
  if (d <= 0) throw BadDiscriminant("need d > 0");
  if (mod4(-d) != 0 && mod4(-d) != 1) throw BadDiscriminant("-d = 2,3 mod 4");
  std::vector<QuadForm> out;
  for (long a = 1; 3 * a * a <= d; ++a) {
    for (long b = d % 2; b <= a; b += 2) {
      long num = b * b + d;
      if (num % (4 * a)) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      out.push_back({a, b, c});
      // (a,-b,c) is a distinct reduced form unless it is identified with
      // (a,b,c) by the boundary conventions b = 0, b = a, or a = c.
      if (b > 0 && b < a && a < c) out.push_back({a, -b, c});
    }
  }
  return out;
}

Rat hurwitz_class_number(long d) {
  if (d < 0) throw BadDiscriminant("Hurwitz numbers need d >= 0");
  if (d == 0) return Rat(-1, 12);
  if (mod4(-d) != 0 && mod4(-d) != 1) return 0;
  Rat h = 0;
  for (const QuadForm& q : reduced_forms(d)) {
    // Only multiples of x^2+xy+y^2 and x^2+y^2 have extra stabilizer.
    if (q.A == q.B && q.B == q.C)
      h += Rat(1, 3);
    else if (q.B == 0 && q.A == q.C)
      h += Rat(1, 2);
    else
      h += 1;
  }
  return h;
}

int chi_genus(const QuadForm& q, long d0) {
  if (d0 >= 0 || !is_discriminant(d0))
    throw WrongDiscriminantShape("D0 must be a negative discriminant");
  long delta = q.disc();
  if (delta % d0 || delta / d0 <= 0 || !is_discriminant(delta / d0))
    throw WrongDiscriminantShape("form discriminant is not D0 times a "
                                 "positive discriminant");
  for (long u = 1; u <= -d0; ++u) {
    if (d0 % u) continue;
    // Splitting D0 = (-u) * (D0 / -u); both factors must themselves be
    // discriminants.  Positive factor first, negative first also tried.
    for (long d0p : {u, d0 / u}) {
      long d0pp = d0 / d0p;
      if (!is_discriminant(d0p) || !is_discriminant(d0pp)) continue;
      if (std::gcd(d0p, q.A) != 1 || std::gcd(d0pp, q.C) != 1) continue;
      return kronecker_symbol(d0p, q.A) * kronecker_symbol(d0pp, q.C);
    }
  }
  return 0;
}

int chi_tilde_m3(const QuadForm& q) {
  long delta = q.disc();
  if (q.A % 3 || delta % 3 || delta >= 0)
    throw WrongDiscriminantShape("chi~_{-3} lives on Q^(3)_{-3D}");
  long a = q.A / 3;
  long dd = (-delta / 3) % 12;
  if (a % 3) return kronecker_symbol(-3, a);
  if (q.C % 3 == 0) return 0;
  int val = kronecker_symbol(-3, q.C);
  bool plus = dd == 0 || dd == 1 || dd == 3 || dd == 4 || dd == 6 || dd == 9;
  return plus ? val : -val;
}

int chi_3c(const QuadForm& q) {
  if (q.A % 3) throw WrongDiscriminantShape("chi_3C needs 3 | A");
  QuadForm r3 = {q.A / 3, q.B, 3 * q.C};
  return chi_genus(q, -3) - chi_genus(r3, -3);
}

GroupSpec GroupSpec::parse(const std::string& symbol) {
  GroupSpec g;
  g.raw_symbol = symbol;
  static const std::regex grammar(
      R"(^(\d+)(?:\|(\d+))?(\+)?((?:\d+)(?:,\d+)*)?$)");
  std::smatch m;
  if (!std::regex_match(symbol, m, grammar) || (m[4].matched && !m[3].matched)) {
    g.parseable = false;
    return g;
  }
  g.N = std::stol(m[1]);
  g.h = m[2].matched ? std::stol(m[2]) : 1;
  if (g.N <= 0 || g.h <= 0 || g.N % g.h || 24 % g.h)
    throw BadGroupSymbol("bad h in " + symbol);
  ExactDivisorGroup ex(g.N / g.h);
  if (!m[3].matched) {
    g.S = {1};
    return g;
  }
  if (!m[4].matched) {
    g.S = ex.elements;
    return g;
  }
  g.S = {1};
  std::string list = m[4];
  for (std::size_t pos = 0; pos < list.size();) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string::npos) comma = list.size();
    long e = std::stol(list.substr(pos, comma - pos));
    if (!ex.contains(e)) throw BadGroupSymbol("not an exact divisor: " + symbol);
    g.S.push_back(e);
    pos = comma + 1;
  }
  std::sort(g.S.begin(), g.S.end());
  g.S.erase(std::unique(g.S.begin(), g.S.end()), g.S.end());
  for (long x : g.S)
    for (long y : g.S)
      if (std::find(g.S.begin(), g.S.end(), ExactDivisorGroup::star(x, y)) ==
          g.S.end())
        throw BadGroupSymbol("S not closed under * in " + symbol);
  return g;
}

}  // namespace thmoon
